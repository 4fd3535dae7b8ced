#include <gtest/gtest.h>

#include <random>

#include "gheight/degen/degen.hpp"
#include "oracles.hpp"

using namespace gheight;

namespace {

using oracle::bfs_components;
using oracle::eigen_betti;

SimplicialComplex complex_of(int n, std::vector<std::vector<int>> simplices) {
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
    return SimplicialComplex(labels, simplices);
}

DegenerationConfig curves(std::vector<int> pg, std::vector<std::pair<int, int>> nodes) {
    DegenerationConfig cfg;
    for (size_t i = 0; i < pg.size(); ++i) cfg.add_component("C" + std::to_string(i + 1), pg[i]);
    for (auto [a, b] : nodes) cfg.add_stratum_indices({a, b});
    return cfg;
}

} // namespace

TEST(DualComplex, Examples) {
    auto two = dual_complex(curves({0, 0}, {{0, 1}, {0, 1}, {0, 1}}));
    EXPECT_TRUE(two.subdivided);
    EXPECT_EQ(two.complex.vertex_count(), 5);
    EXPECT_EQ(two.complex.faces(1).size(), 6u);
    EXPECT_EQ(betti(two.complex, 1), 2);

    DegenerationConfig one;
    one.add_component("X");
    auto pt = dual_complex(one);
    EXPECT_EQ(pt.complex.dimension(), 0);
    EXPECT_EQ(betti(pt.complex, 0), 1);
    EXPECT_EQ(betti(pt.complex, 1), 0);

    auto arr = dual_complex(generic_arrangement_config(5, 3));
    EXPECT_FALSE(arr.subdivided);
    EXPECT_EQ(arr.complex.f_vector(), (std::vector<size_t>{5, 10, 10}));
    EXPECT_EQ(betti(arr.complex, 2), 4);
}

TEST(DualComplex, NormalizationAndErrors) {
    DegenerationConfig cfg;
    for (auto l : {"A", "B", "C"}) cfg.add_component(l);
    cfg.add_stratum(std::vector<std::string>{"A", "B", "C"});
    auto d = dual_complex(cfg);
    EXPECT_EQ(d.warnings.size(), 3u);
    EXPECT_EQ(d.complex.facets().size(), 1u);
    EXPECT_EQ(betti(d.complex, 0), 1);
    EXPECT_EQ(betti(d.complex, 2), 0);

    DegenerationConfig amb;
    for (auto l : {"A", "B", "C"}) amb.add_component(l);
    amb.add_stratum(std::vector<std::string>{"A", "B"});
    amb.add_stratum(std::vector<std::string>{"A", "B"});
    amb.add_stratum(std::vector<std::string>{"A", "B", "C"});
    EXPECT_THROW(dual_complex(amb), InputError);

    DegenerationConfig bad;
    bad.add_component("A");
    EXPECT_THROW(bad.add_component("A"), InputError);
    EXPECT_THROW(bad.add_stratum(std::vector<std::string>{"A", "Z"}), InputError);
    EXPECT_THROW(bad.add_stratum(std::vector<std::string>{"A", "A"}), InputError);
    EXPECT_THROW(dual_complex(DegenerationConfig{}), InputError);
}

TEST(Betti, KnownSpaces) {
    // cycles
    for (int l = 3; l <= 8; ++l) {
        std::vector<std::vector<int>> e;
        for (int i = 0; i < l; ++i) e.push_back({i, (i + 1) % l});
        auto C = complex_of(l, e);
        EXPECT_EQ(betti(C, 0), 1);
        EXPECT_EQ(betti(C, 1), 1);
    }
    // boundary of the tetrahedron
    auto S2 = complex_of(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
    EXPECT_EQ(betti(S2, 0), 1);
    EXPECT_EQ(betti(S2, 1), 0);
    EXPECT_EQ(betti(S2, 2), 1);
    // 7-vertex torus
    std::vector<std::vector<int>> t;
    for (int i = 0; i < 7; ++i) {
        t.push_back({i, (i + 1) % 7, (i + 3) % 7});
        t.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    auto T = complex_of(7, t);
    EXPECT_EQ(T.f_vector(), (std::vector<size_t>{7, 21, 14}));
    EXPECT_EQ(betti(T, 0), 1);
    EXPECT_EQ(betti(T, 1), 2);
    EXPECT_EQ(betti(T, 2), 1);
    EXPECT_THROW(betti(T, -1), InputError);
    EXPECT_EQ(betti(T, 3), 0);
}

TEST(Betti, RandomComplexesAgainstOracles) {
    std::mt19937_64 rng(51);
    for (int it = 0; it < 50; ++it) {
        int n = 4 + it % 5;
        auto S = oracle::random_complex(rng, n);
        long alt = 0;
        for (int k = 0; k <= S.dimension(); ++k) {
            long b = betti(S, k);
            EXPECT_EQ(b, eigen_betti(S, k)) << "it=" << it << " k=" << k;
            alt += (k % 2 ? -1 : 1) * b;
        }
        EXPECT_EQ(alt, euler_characteristic(S));
        EXPECT_EQ(betti(S, 0), bfs_components(S));
        EXPECT_EQ(S.connected_components(), bfs_components(S));
        // facets pairwise non-contained
        for (const auto& a : S.facets())
            for (const auto& b : S.facets())
                if (&a != &b) EXPECT_FALSE(std::includes(a.begin(), a.end(), b.begin(), b.end()));
    }
}

TEST(VanishingCycles, Examples) {
    auto r = vanishing_cycle_count(curves({0, 0}, {{0, 1}, {0, 1}, {0, 1}}), 1);
    EXPECT_EQ(r.count, 2);
    EXPECT_TRUE(r.middle);
    EXPECT_TRUE(r.hypothesis_satisfied);

    auto ring = vanishing_cycle_count(curves({0, 0, 0, 0}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}), 1);
    EXPECT_EQ(ring.count, 1);
    EXPECT_FALSE(ring.hypothesis_satisfied);

    auto arr = vanishing_cycle_count(generic_arrangement_config(5, 3), 2);
    EXPECT_EQ(arr.count, 4);
    EXPECT_TRUE(arr.middle);
    EXPECT_TRUE(arr.hypothesis_satisfied);
    auto off = vanishing_cycle_count(generic_arrangement_config(5, 3), 0);
    EXPECT_FALSE(off.middle);
    EXPECT_FALSE(off.hypothesis_satisfied);

    VanishingCycleSpec v{3, {1, 3}};
    EXPECT_NO_THROW(v.validate());
    EXPECT_THROW((VanishingCycleSpec{2, {1, 2, 3}}.validate()), InputError);
    EXPECT_THROW((VanishingCycleSpec{3, {2, 2}}.validate()), InputError);
    EXPECT_THROW((VanishingCycleSpec{3, {}}.validate()), InputError);
}

TEST(VanishingCycles, GraphGenusFormula) {
    std::mt19937_64 rng(52);
    for (int it = 0; it < 20; ++it) {
        int ell = 1 + static_cast<int>(rng() % 5);
        std::vector<int> pg;
        for (int i = 0; i < ell; ++i) pg.push_back(static_cast<int>(rng() % 3));
        // spanning tree plus extra (possibly parallel) edges
        std::vector<std::pair<int, int>> nodes;
        for (int i = 1; i < ell; ++i) nodes.push_back({static_cast<int>(rng() % static_cast<unsigned>(i)), i});
        int extra = ell == 1 ? 0 : static_cast<int>(rng() % 4);
        for (int j = 0; j < extra; ++j) {
            int a = static_cast<int>(rng() % static_cast<unsigned>(ell)), b = static_cast<int>(rng() % static_cast<unsigned>(ell));
            if (a == b) b = (a + 1) % ell;
            nodes.push_back({std::min(a, b), std::max(a, b)});
        }
        auto cfg = curves(pg, nodes);
        auto c = curve_data(cfg);
        int sum = 0;
        for (int p : pg) sum += p;
        auto r = vanishing_cycle_count(cfg, 1);
        EXPECT_EQ(r.count, c.g - sum);
        const auto& S = r.dual.complex;
        EXPECT_EQ(r.count, static_cast<long>(S.faces(1).size()) - S.vertex_count() + bfs_components(S));
        EXPECT_EQ(betti(S, 0), 1);
        auto rep = stable_curve_check(c.g, c.pg, c.delta, c.ell);
        EXPECT_EQ(rep.condition, r.count >= 2);
    }
}

TEST(StableCurve, Examples) {
    auto a = stable_curve_check(2, {0, 0}, 3, 2);
    EXPECT_TRUE(a.condition);
    EXPECT_EQ(a.delta_minus_ell, 1);
    EXPECT_THROW(stable_curve_check(3, {1, 0}, 2, 2), InputError);
    auto c = stable_curve_check(2, {2}, 0, 1);
    EXPECT_FALSE(c.condition);
    EXPECT_FALSE(c.node_condition);
    EXPECT_THROW(stable_curve_check(2, {0}, 3, 2), InputError);
    DegenerationConfig triple;
    for (auto l : {"A", "B", "C"}) triple.add_component(l, 0);
    triple.add_stratum(std::vector<std::string>{"A", "B", "C"});
    EXPECT_THROW(curve_data(triple), InputError);
}

TEST(Arrangement, CountsAndSkeleton) {
    EXPECT_EQ(generic_arrangement_count(5, 3).count, 4);
    EXPECT_EQ(generic_arrangement_count(4, 2).count, 3);
    EXPECT_THROW(generic_arrangement_count(3, 2), InputError);
    EXPECT_THROW(generic_arrangement_count(4, 0), InputError);
    for (int d = 4; d <= 8; ++d)
        for (int n = 2; n <= d - 2; ++n) {
            auto r = generic_arrangement_count(d, n);
            EXPECT_EQ(r.count, binomial(static_cast<unsigned long>(d - 1), static_cast<unsigned long>(n)));
            EXPECT_EQ(r.betti, r.count) << d << " " << n;
            EXPECT_TRUE(r.agree);
        }
    EXPECT_EQ(generic_arrangement_count(4, 1).betti, 3);
}
