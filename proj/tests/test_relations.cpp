#include <gtest/gtest.h>

#include <random>

#include "gheight/relations/relations.hpp"
#include "oracles.hpp"

using namespace gheight;

namespace {

const RationalField Q;
using QM = Matrix<RationalField>;
using QP = MultiPoly<RationalField>;

QM mat(std::vector<std::vector<long>> rows) {
    QM A(Q, rows.size(), rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) A(i, j) = rows[i][j];
    return A;
}

QP poly(int m, std::vector<std::pair<Exponent, long>> terms) {
    QP p(Q, m);
    for (auto& [e, c] : terms) p.add_term(e, Rational(c));
    return p;
}

using oracle::krylov_rows;
using oracle::random_endo;

} // namespace

TEST(Hodge, Examples) {
    EXPECT_EQ(hodge_invariant_bound({1, 1}), 1);
    EXPECT_EQ(hodge_invariant_bound({2, 3, 2}), 2);
    for (int g = 1; g <= 5; ++g) EXPECT_EQ(hodge_invariant_bound({g, g}, 2 * g), g);
    EXPECT_THROW(hodge_invariant_bound({}), InputError);
    EXPECT_THROW(hodge_invariant_bound({1, 1}, 3), InputError);
}

TEST(EndoBound, Examples) {
    EXPECT_EQ(endo_field_degree_bound(1).bound, 2);
    EXPECT_EQ(endo_field_degree_bound(2).bound, 8);
    EXPECT_TRUE(endo_field_degree_bound(2).placeholder);
    auto u = endo_field_degree_bound(4, Integer(17));
    EXPECT_EQ(u.bound, 17);
    EXPECT_FALSE(u.placeholder);
    EXPECT_THROW(endo_field_degree_bound(0), InputError);
}

TEST(Minor, Examples) {
    auto r = minor_relation(mat({{1, 0, 0}, {0, 2, 0}, {0, 0, 3}}), 1);
    ASSERT_EQ(r.size(), 3u);
    EXPECT_EQ(r[0].poly, poly(3, {{{1, 1, 0}, 1}}));
    EXPECT_EQ(r[1].poly, poly(3, {{{1, 0, 1}, 2}}));
    EXPECT_EQ(r[2].poly, poly(3, {{{0, 1, 1}, 1}}));
    EXPECT_EQ(r[1].columns, (std::vector<int>{1, 3}));

    EXPECT_THROW(minor_relation(mat({{1, 0}, {0, 1}}), 1), InputError);
    auto n = minor_relation(mat({{0, 1}, {0, 0}}), 1);
    ASSERT_EQ(n.size(), 1u);
    EXPECT_EQ(n[0].poly, poly(2, {{{2, 0}, 1}}));
    EXPECT_THROW(minor_relation(mat({{0, 1}, {0, 0}}), 0), InputError);
    EXPECT_THROW(minor_relation(mat({{0, 1}, {0, 0}}), 2), InputError);
    EXPECT_THROW(minor_relation(mat({{0, 1, 2}, {0, 0, 1}}), 1), InputError);
}

TEST(Minor, SoundAndNontrivial) {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> c(-7, 7);
    for (int it = 0; it < 100; ++it) {
        int m = 2 + it % 4;
        auto E = random_endo(rng, m);
        int k = 1 + static_cast<int>(rng() % static_cast<unsigned>(m - 1));
        auto minors = minor_relation(E.tau, k);
        ASSERT_FALSE(minors.empty());
        for (const auto& mi : minors) {
            EXPECT_TRUE(mi.poly.is_homogeneous());
            EXPECT_EQ(mi.poly.total_degree(), k + 1);
        }
        // inside a k-dimensional invariant span
        std::vector<Rational> y(static_cast<size_t>(m), Rational(0));
        for (int j = m - k; j < m; ++j) {
            Rational w = c(rng);
            for (int i = 0; i < m; ++i) y[static_cast<size_t>(i)] += w * E.Sinv_T(static_cast<size_t>(i), static_cast<size_t>(j));
        }
        for (const auto& mi : minors) EXPECT_EQ(mi.poly.evaluate(y), 0) << "it=" << it;
        // generic functional, drawn wide so it misses the proper closed set
        std::uniform_int_distribution<int> wide(-100000, 100000), den(1, 997);
        std::vector<Rational> g;
        for (int i = 0; i < m; ++i) g.push_back(ratio(wide(rng), den(rng)));
        bool some_nonzero = false;
        for (const auto& mi : minors) some_nonzero |= sgn(mi.poly.evaluate(g)) != 0;
        // oracle: numeric Krylov rows have full rank iff some minor is nonzero
        EXPECT_EQ(some_nonzero, krylov_rows(E.tau, g, k).rank() == static_cast<size_t>(k) + 1);
        EXPECT_TRUE(some_nonzero) << "it=" << it;
    }
}

TEST(Minor, MatchesNumericDeterminants) {
    std::mt19937_64 rng(32);
    std::uniform_int_distribution<int> c(-5, 5);
    for (int it = 0; it < 30; ++it) {
        int m = 3 + it % 2;
        auto E = random_endo(rng, m);
        int k = 1 + it % (m - 1);
        auto minors = minor_relation(E.tau, k);
        std::vector<Rational> y;
        for (int i = 0; i < m; ++i) y.push_back(c(rng));
        auto R = krylov_rows(E.tau, y, k);
        std::map<std::vector<int>, Rational> got;
        for (const auto& mi : minors) got[mi.columns] = mi.poly.evaluate(y);
        for (const auto& cols : detail::column_subsets(m, k + 1)) {
            QM sub(Q, static_cast<size_t>(k) + 1, static_cast<size_t>(k) + 1);
            for (int r = 0; r <= k; ++r)
                for (int j = 0; j <= k; ++j) sub(static_cast<size_t>(r), static_cast<size_t>(j)) = R(static_cast<size_t>(r), static_cast<size_t>(cols[static_cast<size_t>(j)]));
            std::vector<int> one;
            for (int x : cols) one.push_back(x + 1);
            Rational expect = sub.det();
            Rational value = got.count(one) ? got[one] : Rational(0);
            EXPECT_EQ(value, expect);
        }
    }
}

TEST(LinearFactors, WorkedExamples) {
    auto a = linear_factor_relations(mat({{1, 0}, {0, 2}}));
    EXPECT_EQ(a.product, poly(2, {{{1, 1}, 1}}));
    ASSERT_EQ(a.forms.size(), 2u);

    auto b = linear_factor_relations(mat({{0, -1}, {1, 0}}));
    EXPECT_EQ(b.product, poly(2, {{{2, 0}, 1}, {{0, 2}, 1}}));
    ASSERT_EQ(b.forms.size(), 2u);
    EXPECT_EQ(b.forms[0].field.degree(), 2);
    // y1 +- i y2
    auto i = b.forms[0].field.generator();
    EXPECT_EQ(b.forms[0].coeffs[0], b.forms[0].field.one());
    EXPECT_TRUE(b.forms[0].coeffs[1] == i || b.forms[0].coeffs[1] == -i);
    EXPECT_EQ(b.forms[1].coeffs[1], -b.forms[0].coeffs[1]);

    auto c = linear_factor_relations(mat({{1, 1}, {0, 1}}));
    EXPECT_EQ(c.product, poly(2, {{{0, 1}, 1}}));
    ASSERT_EQ(c.forms.size(), 1u);

    EXPECT_THROW(linear_factor_relations(mat({{1, 0}, {0, 1}})), InputError);
    EXPECT_THROW(linear_factor_relations(mat({{2, 0, 0}, {0, 2, 0}, {0, 0, 3}})), InputError);
    // x^9 - 2: eigenvalue field of degree 9
    QM big(Q, 9, 9);
    for (size_t r = 1; r < 9; ++r) big(r, r - 1) = 1;
    big(0, 8) = 2;
    EXPECT_THROW(linear_factor_relations(big), InputError);
}

TEST(LinearFactors, ProductVanishesAtEigenvectors) {
    std::mt19937_64 rng(33);
    for (int it = 0; it < 40; ++it) {
        int m = 2 + it % 4;
        auto E = random_endo(rng, m);
        auto res = linear_factor_relations(E.tau);
        EXPECT_EQ(res.product.total_degree(), [&] {
            int d = 0;
            for (const auto& f : factor_over_q(UPoly(E.tau.charpoly()))) d += f.factor.degree();
            return d;
        }());
        // eigenvectors of tau over each eigenvalue field
        for (const auto& f : factor_over_q(UPoly(E.tau.charpoly()))) {
            NumberField L = f.factor.degree() == 1 ? NumberField() : NumberField(f.factor);
            auto lambda = f.factor.degree() == 1 ? L.from_rational(-f.factor.coeff(0)) : L.generator();
            Matrix<NumberField> A(L, static_cast<size_t>(m), static_cast<size_t>(m));
            for (size_t r = 0; r < static_cast<size_t>(m); ++r)
                for (size_t s = 0; s < static_cast<size_t>(m); ++s) {
                    A(r, s) = L.from_rational(E.tau(r, s));
                    if (r == s) A(r, s) -= lambda;
                }
            auto null = A.nullspace();
            ASSERT_EQ(null.size(), 1u);
            auto P = res.product.map_coefficients(L, [&](const Rational& q) { return L.from_rational(q); });
            EXPECT_TRUE(P.evaluate(null[0]).is_zero()) << "it=" << it;
        }
        // each form is a left eigenvector
        QM tt = E.tau.transpose();
        for (const auto& form : res.forms) {
            const NumberField& L = form.field;
            NumberFieldElement lambda = L.degree() == 1 ? L.from_rational(-form.eigen_minpoly.coeff(0)) : L.generator();
            for (size_t r = 0; r < static_cast<size_t>(m); ++r) {
                NumberFieldElement s = L.zero();
                for (size_t j = 0; j < static_cast<size_t>(m); ++j) s += L.from_rational(tt(r, j)) * form.coeffs[j];
                // the explicit quadratic conjugate pairs with the conjugate eigenvalue
                if (L.degree() == 2 && &form != &res.forms.front() && !(s == lambda * form.coeffs[r])) {
                    NumberFieldElement lc = -lambda - L.from_rational(L.minpoly().coeff(1));
                    EXPECT_EQ(s, lc * form.coeffs[r]);
                } else {
                    EXPECT_EQ(s, lambda * form.coeffs[r]);
                }
            }
        }
    }
}

TEST(GaloisProduct, Examples) {
    NumberField Qi(UPoly({1, 0, 1}));
    MultiPoly<NumberField> P(Qi, 2);
    P.add_term({1, 0}, Qi.one());
    P.add_term({0, 1}, -Qi.generator());
    EXPECT_EQ(galois_conjugate_product(P), poly(2, {{{2, 0}, 1}, {{0, 2}, 1}}));

    NumberField Q2(UPoly({-2, 0, 1}));
    MultiPoly<NumberField> R(Q2, 2);
    R.add_term({1, 0}, Q2.one());
    R.add_term({0, 1}, -Q2.generator());
    EXPECT_EQ(galois_conjugate_product(R), poly(2, {{{2, 0}, 1}, {{0, 2}, -2}}));

    auto same = poly(3, {{{1, 1, 0}, 3}, {{0, 0, 2}, -1}});
    EXPECT_EQ(galois_conjugate_product(same), same);
}

TEST(GaloisProduct, QuadraticConjugatesAndNorms) {
    std::mt19937_64 rng(34);
    std::uniform_int_distribution<int> c(-4, 4);
    NumberField Q5(UPoly({-1, 1, 1}));          // golden ratio field
    NumberField C3(UPoly({-2, 0, 0, 1}));       // cube root of 2
    for (int it = 0; it < 20; ++it) {
        MultiPoly<NumberField> P(Q5, 2);
        for (const auto& e : exponents_up_to(2, 2)) P.add_term(e, Q5.element({Rational(c(rng)), Rational(c(rng))}));
        if (P.is_zero()) continue;
        // explicit P * P^sigma
        auto Ps = P.map_coefficients(Q5, [](const NumberFieldElement& x) { return detail::quadratic_conjugate(x); });
        auto prod = P * Ps;
        auto N = galois_conjugate_product(P);
        for (const auto& [e, v] : prod.terms()) {
            EXPECT_EQ(v.coords().size() > 1 ? v.coords()[1] : Rational(0), 0);
            EXPECT_EQ(v.coords()[0], N.coeff(e));
        }
        EXPECT_EQ(N.total_degree(), P.total_degree() * 2);
    }
    for (int it = 0; it < 20; ++it) {
        MultiPoly<NumberField> P(C3, 2);
        for (const auto& e : exponents_of_degree(2, 1))
            P.add_term(e, C3.element({Rational(c(rng)), Rational(c(rng)), Rational(c(rng))}));
        if (P.is_zero()) continue;
        auto N = galois_conjugate_product(P);
        EXPECT_EQ(N.total_degree(), 3);
        for (int t = 0; t < 5; ++t) {
            std::vector<Rational> y{Rational(c(rng)), Rational(c(rng))};
            std::vector<NumberFieldElement> yk{C3.from_rational(y[0]), C3.from_rational(y[1])};
            EXPECT_EQ(N.evaluate(y), P.evaluate(yk).norm());
        }
    }
}
