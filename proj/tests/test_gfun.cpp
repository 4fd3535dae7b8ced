#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "gheight/gfun/gfun.hpp"

using namespace gheight;

namespace {

const RationalField Q;
using QU = UniSeries<RationalField>;
using QP = MultiPoly<RationalField>;

QU series(int N, const std::function<Rational(int)>& f) {
    QU s(Q, N);
    for (int n = 0; n <= N; ++n) s.set(n, f(n));
    return s;
}

QU geometric(int N) { return series(N, [](int) -> Rational { return Rational(1); }); }
QU geometric2(int N) { return series(N, [](int n) -> Rational { return Rational(n + 1); }); }
QU central_binomial(int N) { return series(N, [](int n) -> Rational { return Rational(binomial(2 * n, n)); }); }

Integer factorial(int n) {
    Integer r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// coefficient vector of P over the monomials appearing in any of the polys
bool in_span(const std::vector<QP>& basis, const QP& P) {
    std::map<Exponent, size_t> cols;
    for (const auto& b : basis)
        for (const auto& [e, c] : b.terms()) cols.emplace(e, 0);
    for (const auto& [e, c] : P.terms()) cols.emplace(e, 0);
    size_t k = 0;
    for (auto& [e, i] : cols) i = k++;
    auto rank_of = [&](const std::vector<QP>& ps) {
        Matrix<RationalField> M(Q, ps.size(), cols.size());
        for (size_t r = 0; r < ps.size(); ++r)
            for (const auto& [e, c] : ps[r].terms()) M(r, cols[e]) = c;
        return M.rank();
    };
    auto ext = basis;
    ext.push_back(P);
    return rank_of(ext) == rank_of(basis);
}

QP rel(int m, std::vector<std::pair<Exponent, long>> terms) {
    QP p(Q, m + 2);
    for (auto& [e, c] : terms) p.add_term(e, Rational(c));
    return p;
}

} // namespace

TEST(Size, Examples) {
    GVector<RationalField> geo({geometric(30)});
    for (int n : {1, 5, 30}) EXPECT_TRUE(size_partial(geo, n).value.contains(Interval(Rational(0), 64)));
    EXPECT_EQ(size_partial(geo, 7).value.upper(), 0.0);

    // log(1+x)/x = sum (-1)^n x^n / (n+1)
    GVector<RationalField> lg({series(1000, [](int n) -> Rational { return ratio(n % 2 ? -1 : 1, n + 1); })});
    for (int n : {1, 2, 10, 57, 1000}) {
        Integer L = 1;
        for (int j = 2; j <= n + 1; ++j) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), Integer(j).get_mpz_t());
        long ex = 0;
        double mant = mpz_get_d_2exp(&ex, L.get_mpz_t());
        double oracle = (std::log(mant) + static_cast<double>(ex) * std::log(2.0)) / n;
        auto s = size_partial(lg, n);
        EXPECT_NEAR(s.value.midpoint(), oracle, 1e-9) << n;
        EXPECT_EQ(s.archimedean_part.upper(), 0.0);
    }
    EXPECT_NEAR(size_partial(lg, 1000).value.midpoint(), 1.0, 0.1);

    GVector<RationalField> ex({series(20, [](int n) -> Rational { return Rational(1) / Rational(factorial(n)); })});
    auto s20 = size_partial(ex, 20);
    double oracle = std::lgamma(21.0) / 20;
    EXPECT_NEAR(s20.value.midpoint(), oracle, 1e-9);
    EXPECT_NEAR(s20.value.midpoint(), 2.12, 0.05);
    EXPECT_THROW(size_partial(ex, 0), InputError);
    EXPECT_THROW(size_partial(ex, 21), InputError);
}

TEST(Size, SmallIntegerCoefficientsGiveZero) {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> c(-1, 1);
    for (int it = 0; it < 50; ++it) {
        QU a = series(40, [&](int) -> Rational { return Rational(c(rng)); });
        QU b = series(40, [&](int) -> Rational { return Rational(c(rng)); });
        GVector<RationalField> G({a, b});
        for (int n : {1, 13, 40}) EXPECT_EQ(size_partial(G, n).value.upper(), 0.0);
    }
}

TEST(Size, FirstTermIsWeilHeight) {
    // sigma_1 of 1 + a x is sum_v log+ |a|_v = h(a)
    NumberField K(UPoly({-2, 0, 1}));
    NumberField L(UPoly({-1, -1, 0, 1}));   // x^3 - x - 1, one real and one complex place
    std::mt19937_64 rng(22);
    std::uniform_int_distribution<int> c(-9, 9), d(1, 6);
    for (const NumberField* F : {&K, &L}) {
        for (int it = 0; it < 15; ++it) {
            std::vector<Rational> co;
            for (int i = 0; i < F->degree(); ++i) co.push_back(ratio(c(rng), d(rng)));
            auto a = F->element(co);
            if (a.is_zero()) continue;
            UniSeries<NumberField> s(*F, 1);
            s.set(0, F->one());
            s.set(1, a);
            auto sz = size_partial(GVector<NumberField>({s}), 1);
            auto h = weil_height(a);
            EXPECT_NEAR(sz.value.midpoint(), h.value.midpoint(), 1e-12) << a.to_string();
        }
    }
    // rational coefficients give the same answer over Q as a number field
    std::uniform_int_distribution<int> big(-1000, 1000);
    for (int it = 0; it < 20; ++it) {
        Rational q = ratio(big(rng), std::abs(big(rng)) + 1);
        QU s(Q, 1);
        s.set(0, 1);
        s.set(1, q);
        auto sz = size_partial(GVector<RationalField>({s}), 1);
        EXPECT_NEAR(sz.value.midpoint(), weil_height(q).value.midpoint(), 1e-12);
    }
}

TEST(Size, Heuristic) {
    GVector<RationalField> geo({geometric(64)});
    EXPECT_EQ(size_heuristic(size_sequence(geo, {8, 16, 32, 64})).verdict, "bounded-looking");
    GVector<RationalField> ex({series(64, [](int n) -> Rational { return Rational(1) / Rational(factorial(n)); })});
    EXPECT_EQ(size_heuristic(size_sequence(ex, {8, 16, 32, 64})).verdict, "divergent-looking");
    EXPECT_THROW(size_heuristic(size_sequence(ex, {8})), InputError);
}

TEST(Radius, Examples) {
    auto r = v_radius(geometric(20), Place::prime(5), 10);
    EXPECT_FALSE(r.inconclusive);
    EXPECT_EQ(r.exponent, 0);

    for (long p : {2, 3, 7}) {
        QU s = series(20, [&](int n) -> Rational { return Rational(pow(Integer(p), static_cast<unsigned long>(n))); });
        auto rp = v_radius(s, Place::prime(p), 8);
        EXPECT_EQ(rp.exponent, 1);
        EXPECT_NEAR(rp.value.midpoint(), static_cast<double>(p), 1e-12);
    }

    int N = 40, W = 16;
    QU ex = series(N, [](int n) -> Rational { return Rational(1) / Rational(factorial(n)); });
    auto r2 = v_radius(ex, Place::prime(2), W);
    Rational oracle = 0;
    for (int n = N - W + 1; n <= N; ++n) {
        int s2 = __builtin_popcount(static_cast<unsigned>(n));
        Rational e = ratio(-(n - s2), n);
        if (n == N - W + 1 || e < oracle) oracle = e;
    }
    EXPECT_EQ(r2.exponent, oracle);
    EXPECT_LT(std::abs(r2.value.midpoint() - 0.5), 0.1);

    auto ra = v_radius(series(20, [](int n) -> Rational { return Rational(pow(Integer(2), static_cast<unsigned long>(n))); }), Place::infinity(), 5);
    EXPECT_NEAR(ra.value.midpoint(), 0.5, 1e-12);
    EXPECT_TRUE(v_radius(series(20, [](int n) -> Rational { return Rational(n < 3 ? 1 : 0); }), Place::infinity(), 5).inconclusive);
    EXPECT_TRUE(v_radius(series(20, [](int n) -> Rational { return Rational(n == 20 ? 1 : 0); }), Place::infinity(), 5).inconclusive);
    EXPECT_THROW(v_radius(geometric(5), Place::infinity(), 6), InputError);
}

TEST(Relevance, Examples) {
    GVector<RationalField> G({geometric(24)});
    EXPECT_EQ(is_relevant(ratio(1, 3), Place::infinity(), G, 8).relevant, Verdict::Yes);
    auto at3 = is_relevant(ratio(1, 3), Place::prime(3), G, 8);
    EXPECT_EQ(at3.relevant, Verdict::No);
    EXPECT_FALSE(at3.estimate);
    for (const auto& v : {Place::infinity(), Place::prime(2), Place::prime(3)})
        EXPECT_EQ(is_relevant(Rational(0), v, G, 8).relevant, Verdict::Yes);
    // radius 1/2 at infinity
    GVector<RationalField> H({series(24, [](int n) -> Rational { return Rational(pow(Integer(2), static_cast<unsigned long>(n))); })});
    EXPECT_EQ(is_relevant(ratio(1, 3), Place::infinity(), H, 8).relevant, Verdict::Yes);
    EXPECT_EQ(is_relevant(ratio(2, 3), Place::infinity(), H, 8).relevant, Verdict::No);
    // polynomial: radius estimate inconclusive, never silently false
    GVector<RationalField> P({series(24, [](int n) -> Rational { return Rational(n < 2 ? 1 : 0); })});
    EXPECT_EQ(is_relevant(ratio(1, 3), Place::infinity(), P, 8).relevant, Verdict::Unknown);
}

TEST(Relevance, MonotoneUnderSquaring) {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> c(-30, 30);
    std::vector<GVector<RationalField>> Gs = {
        GVector<RationalField>({geometric(24)}),
        GVector<RationalField>({series(24, [](int n) -> Rational { return Rational(pow(Integer(3), static_cast<unsigned long>(n))); }),
                                geometric2(24)}),
        GVector<RationalField>({series(24, [](int n) -> Rational { return ratio(1, n + 1); })}),
    };
    std::vector<Place> places = {Place::infinity(), Place::prime(2), Place::prime(3), Place::prime(5)};
    for (int it = 0; it < 60; ++it) {
        Rational xi = ratio(c(rng), std::abs(c(rng)) + 1);
        for (const auto& G : Gs)
            for (const auto& v : places) {
                auto a = is_relevant(xi, v, G, 8);
                if (a.relevant != Verdict::Yes) continue;
                EXPECT_EQ(is_relevant(Rational(xi * xi), v, G, 8).relevant, Verdict::Yes) << xi << " " << v.label();
            }
    }
}

TEST(Relations, Examples) {
    GVector<RationalField> G({geometric(16), geometric2(16)});
    auto B = functional_relations(G, 2, 0, 16);
    EXPECT_EQ(B.unknowns, 6);
    // y1^2 - y0 y2 in variables (x, y0, y1, y2)
    EXPECT_TRUE(in_span(B.basis, rel(2, {{{0, 0, 2, 0}, 1}, {{0, 1, 0, 1}, -1}})));
    EXPECT_EQ(B.basis.size(), 1u);
    for (const auto& P : B.basis) EXPECT_TRUE(relation_series(P, G, 16).is_zero());

    GVector<RationalField> H({geometric(10)});
    auto C = functional_relations(H, 1, 1, 10);
    EXPECT_TRUE(in_span(C.basis, rel(1, {{{0, 0, 1}, 1}, {{1, 0, 1}, -1}, {{0, 1, 0}, -1}})));
    EXPECT_EQ(C.basis.size(), 1u);

    EXPECT_THROW(functional_relations(G, 2, 0, 6), OrderError);
    try {
        functional_relations(G, 2, 0, 6);
    } catch (const OrderError& e) {
        EXPECT_EQ(e.required_order(), 7);
    }
    EXPECT_THROW(functional_relations(G, 2, 0, 17), InputError);
}

TEST(Relations, CentralBinomialIsAlgebraic) {
    // sum C(2n,n) x^n = (1-4x)^{-1/2}, so (1-4x) y1^2 - y0^2 is a genuine relation
    GVector<RationalField> G({central_binomial(24)});
    auto B = functional_relations(G, 2, 2, 24);
    EXPECT_EQ(B.unknowns, 9);
    ASSERT_FALSE(B.basis.empty());
    EXPECT_TRUE(in_span(B.basis, rel(1, {{{0, 0, 2}, 1}, {{1, 0, 2}, -4}, {{0, 2, 0}, -1}})));
    EXPECT_EQ(B.basis.size(), 2u);   // the relation and its x-multiple
    for (const auto& P : B.basis) EXPECT_TRUE(relation_series(P, G, 24).is_zero());
    // no relation of degree 1: the series is not rational
    EXPECT_TRUE(functional_relations(G, 1, 2, 24).basis.empty());
}

TEST(Relations, RationalFunctionsRecovered) {
    std::mt19937_64 rng(24);
    std::uniform_int_distribution<int> c(-5, 5);
    for (int it = 0; it < 20; ++it) {
        // G = (a + b x) / (1 + d x)
        Rational a = c(rng), b = c(rng), d = c(rng);
        if (sgn(d) == 0) d = 1;
        if (sgn(b - a * d) == 0) b += 1;
        int N = 12;
        QU g(Q, N);
        Rational prev = a;
        g.set(0, a);
        for (int n = 1; n <= N; ++n) {
            Rational next = -d * prev + (n == 1 ? b : Rational(0));
            g.set(n, next);
            prev = next;
        }
        GVector<RationalField> G({g});
        auto B = functional_relations(G, 1, 1, N);
        ASSERT_EQ(B.basis.size(), 1u);
        QP expect(Q, 3);
        expect.add_term({0, 0, 1}, 1);
        expect.add_term({1, 0, 1}, d);
        expect.add_term({0, 1, 0}, -a);
        expect.add_term({1, 1, 0}, -b);
        EXPECT_TRUE(in_span(B.basis, expect));
    }
}

TEST(RelationCheck, Examples) {
    GVector<RationalField> G({geometric(16), geometric2(16)});
    auto P = rel(2, {{{0, 0, 2, 0}, 1}, {{0, 1, 0, 1}, -1}});
    auto R = rel(2, {{{0, 0, 1, 0}, 1}, {{0, 1, 0, 0}, -1}});
    auto half = ratio(1, 2);
    EXPECT_TRUE(relation_holds_at(P, half, Place::infinity(), G).holds);
    auto bad = relation_holds_at(R, half, Place::infinity(), G);
    EXPECT_FALSE(bad.holds);
    EXPECT_EQ(bad.method, "interval");
    auto z = relation_holds_at(R, Rational(0), Place::infinity(), G);
    EXPECT_TRUE(z.holds);
    EXPECT_TRUE(z.exact);

    // 3-adically at xi = 3: G1(3) = -1/2, G2(3) = 1/4
    auto p3 = relation_holds_at(P, Rational(3), Place::prime(3), G);
    EXPECT_TRUE(p3.holds);
    EXPECT_EQ(p3.method, "valuation");
    auto r3 = relation_holds_at(R, Rational(3), Place::prime(3), G);
    EXPECT_FALSE(r3.holds);
    // |3|_2 = 1: not relevant, the verdict falls back to the formal identity
    auto v = relation_holds_at(P, Rational(3), Place::prime(2), G);
    EXPECT_TRUE(v.vacuous);
    EXPECT_TRUE(v.holds);
}

TEST(RelationCheck, ScalingInvariant) {
    GVector<RationalField> G({geometric(16), geometric2(16)});
    std::vector<QP> polys = {rel(2, {{{0, 0, 2, 0}, 1}, {{0, 1, 0, 1}, -1}}), rel(2, {{{0, 0, 1, 0}, 1}, {{0, 1, 0, 0}, -1}}),
                             rel(2, {{{0, 0, 1, 0}, 1}, {{1, 0, 1, 0}, -1}, {{0, 1, 0, 0}, -1}})};
    std::mt19937_64 rng(25);
    std::uniform_int_distribution<int> c(-50, 50);
    std::vector<std::pair<Rational, Place>> points = {{ratio(1, 2), Place::infinity()}, {ratio(1, 3), Place::infinity()},
                                                      {Rational(3), Place::prime(3)}, {Rational(2), Place::prime(2)},
                                                      {Rational(0), Place::infinity()}};
    for (const auto& P : polys)
        for (const auto& [xi, v] : points) {
            bool base = relation_holds_at(P, xi, v, G).holds;
            for (int it = 0; it < 5; ++it) {
                Rational s = ratio(c(rng), std::abs(c(rng)) + 1);
                if (sgn(s) == 0) continue;
                EXPECT_EQ(relation_holds_at(s * P, xi, v, G).holds, base) << P.to_string() << " at " << xi << " " << v.label();
            }
        }
}

TEST(RelationCheck, NumberField) {
    // G = 1/(1 - x) over Q(sqrt2) at xi = sqrt2/4: value 1/(1 - sqrt2/4)
    NumberField K(UPoly({-2, 0, 1}));
    auto r2 = K.generator();
    auto xi = r2 * K.from_rational(ratio(1, 4));
    UniSeries<NumberField> g(K, 30);
    for (int n = 0; n <= 30; ++n) g.set(n, K.one());
    GVector<NumberField> G({g});
    MultiPoly<NumberField> P(K, 3);   // (1 - x) y1 - y0
    P.add_term({0, 0, 1}, K.one());
    P.add_term({1, 0, 1}, -K.one());
    P.add_term({0, 1, 0}, -K.one());
    for (const auto& v : archimedean_places(K)) EXPECT_TRUE(relation_holds_at(P, xi, v, G).holds) << v.label();
    MultiPoly<NumberField> R(K, 3);   // y1 - 2 y0
    R.add_term({0, 0, 1}, K.one());
    R.add_term({0, 1, 0}, K.from_rational(-2));
    for (const auto& v : archimedean_places(K)) EXPECT_FALSE(relation_holds_at(R, xi, v, G).holds) << v.label();
}
