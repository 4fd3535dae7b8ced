#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>

#include "gheight/arith/places.hpp"

using namespace gheight;

namespace {

// Mahler measure oracle via companion-matrix eigenvalues (Eigen, doubles).
double mahler_log_height(const std::vector<Integer>& f) {
    int d = static_cast<int>(f.size()) - 1;
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(d, d);
    double lead = f.back().get_d();
    for (int i = 1; i < d; ++i) C(i, i - 1) = 1;
    for (int i = 0; i < d; ++i) C(i, d - 1) = -f[static_cast<size_t>(i)].get_d() / lead;
    Eigen::EigenSolver<Eigen::MatrixXd> es(C);
    double m = std::log(std::abs(lead));
    for (int i = 0; i < d; ++i) m += std::max(0.0, std::log(std::abs(es.eigenvalues()[i])));
    return m / d;
}

// Characteristic polynomial of the multiplication matrix, by Faddeev-LeVerrier.
std::vector<Rational> charpoly(const std::vector<std::vector<Rational>>& A) {
    size_t n = A.size();
    std::vector<std::vector<Rational>> M(n, std::vector<Rational>(n, 0));
    std::vector<Rational> c(n + 1, 0);
    c[n] = 1;
    for (size_t k = 1; k <= n; ++k) {
        std::vector<std::vector<Rational>> AM(n, std::vector<Rational>(n, 0));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                Rational s = 0;
                for (size_t l = 0; l < n; ++l) s += A[i][l] * M[l][j];
                AM[i][j] = s;
            }
        M = AM;
        for (size_t i = 0; i < n; ++i) M[i][i] += c[n - k + 1];
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                Rational s = 0;
                for (size_t l = 0; l < n; ++l) s += A[i][l] * M[l][j];
                AM[i][j] = s;
            }
        Rational tr = 0;
        for (size_t i = 0; i < n; ++i) tr += AM[i][i];
        c[n - k] = -tr / Rational(static_cast<long>(k));
    }
    return c;
}

std::vector<Integer> clear_denominators(const std::vector<Rational>& c) {
    Integer D = 1;
    for (const auto& x : c) D = lcm(D, Integer(x.get_den()));
    std::vector<Integer> out;
    for (const auto& x : c) out.push_back(Rational(x * D).get_num());
    Integer g = 0;
    for (const auto& x : out) g = gcd(g, x);
    for (auto& x : out) x /= g;
    return out;
}

Rational random_rational(std::mt19937_64& rng, long hmax) {
    std::uniform_int_distribution<long> num(-hmax, hmax), den(1, hmax);
    long n = 0;
    while (n == 0) n = num(rng);
    Rational q(n, den(rng));
    q.canonicalize();
    return q;
}

} // namespace

TEST(PadicValuation, Examples) {
    EXPECT_EQ(padic_valuation(Rational(1, 3), 3).value(), -1);
    EXPECT_EQ(padic_valuation(Rational(12), 2).value(), 2);
    EXPECT_TRUE(padic_valuation(Rational(0), 5).is_infinite());
    EXPECT_THROW(padic_valuation(Rational(3), 4), InputError);
}

TEST(PadicValuation, Properties) {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 500; ++it) {
        Rational a = random_rational(rng, 2000), b = random_rational(rng, 2000);
        for (long p : {2, 3, 5, 7}) {
            EXPECT_EQ(padic_valuation(a * b, p).value(), padic_valuation(a, p).value() + padic_valuation(b, p).value());
            EXPECT_GE(padic_valuation(a + b, p), std::min(padic_valuation(a, p), padic_valuation(b, p)));
        }
    }
}

TEST(AbsValue, RationalExamples) {
    auto v3 = abs_value(Rational(2, 3), Place::prime(3), 64);
    ASSERT_TRUE(v3.exact);
    EXPECT_EQ(*v3.exact, 3);
    auto vinf = abs_value(Rational(2, 3), Place::infinity(), 64);
    ASSERT_TRUE(vinf.exact);
    EXPECT_EQ(*vinf.exact, Rational(2, 3));
    EXPECT_THROW(Place::prime(6), InputError);
}

TEST(AbsValue, SqrtTwoArchimedean) {
    NumberField K(UPoly({-2, 0, 1}));
    auto places = archimedean_places(K);
    ASSERT_EQ(places.size(), 2u);
    Interval target = exp(log(Interval(Rational(2), 128)) * Interval(Rational(1, 4), 128));
    for (const auto& v : places) {
        auto a = abs_value(K.generator(), v, 128);
        EXPECT_TRUE(a.enclosure.contains_zero() == false);
        EXPECT_LT(std::abs(a.enclosure.midpoint() - std::pow(2.0, 0.25)), 1e-15);
        EXPECT_FALSE((a.enclosure - target).certainly_greater(Interval(Rational(0), 128)));
        EXPECT_FALSE((a.enclosure - target).certainly_less(Interval(Rational(0), 128)));
    }
}

TEST(AbsValue, RamifiedPrime) {
    NumberField K(UPoly({-2, 0, 1}));
    auto above = places_above(K, 2);
    ASSERT_EQ(above.size(), 1u);
    EXPECT_EQ(above[0].ramification(), 2);
    EXPECT_TRUE(above[0].dedekind_regular());
    auto a = abs_value(K.generator(), above[0], 64);
    EXPECT_EQ(a.exponent, Rational(-1, 2));
}

TEST(AbsValue, SplitPrimeSumsToNorm) {
    NumberField K(UPoly({-2, 0, 1}));
    auto x = K.element({1, 1});   // 1 + sqrt2, norm -1
    auto y = K.element({3, 1});   // norm 7, 7 splits
    auto above = places_above(K, 7);
    ASSERT_EQ(above.size(), 2u);
    Rational sx = 0, sy = 0;
    for (const auto& v : above) {
        sx += abs_value(x, v, 64).exponent;
        sy += abs_value(y, v, 64).exponent;
    }
    EXPECT_EQ(sx, 0);
    EXPECT_EQ(sy, Rational(-1, 2));
    // 3 + sqrt2 lies in exactly one of the two primes above 7.
    EXPECT_NE(abs_value(y, above[0], 64).exponent, abs_value(y, above[1], 64).exponent);
}

TEST(LogPlus, Examples) {
    EXPECT_EQ(log_plus(0.5), 0.0);
    EXPECT_EQ(log_plus(1.0), 0.0);
    EXPECT_NEAR(log_plus(std::exp(2.0)), 2.0, 1e-12);
    Interval e2 = exp(Interval(Rational(2), 128));
    EXPECT_TRUE(log_plus(e2).contains(Interval(Rational(2), 128)));
    EXPECT_TRUE(log_plus(Interval(Rational(1, 2), 64)).contains_zero());
}

TEST(WeilHeight, Examples) {
    auto h = weil_height(Rational(2, 3));
    ASSERT_TRUE(h.log_of);
    EXPECT_EQ(*h.log_of, 3);
    EXPECT_EQ(*weil_height(Rational(1)).log_of, 1);
    NumberField K(UPoly({-2, 0, 1}));
    auto hs = weil_height(K.generator());
    EXPECT_NEAR(hs.value.midpoint(), 0.5 * std::log(2.0), 1e-12);
    EXPECT_NEAR(hs.value.midpoint(), mahler_log_height({-2, 0, 1}), 1e-12);
}

TEST(WeilHeight, MahlerOracleRandomElements) {
    std::mt19937_64 rng(11);
    std::vector<UPoly> fields = {UPoly({-2, 0, 1}), UPoly({1, 0, 1}), UPoly({-2, 0, 0, 1}), UPoly({1, 1, 1}),
                                 UPoly({-1, -1, 0, 1}), UPoly({Rational(1, 2), 0, 1}), UPoly({1, 1, 1, 1, 1})};
    for (const auto& m : fields) {
        NumberField K(m);
        for (int it = 0; it < 8; ++it) {
            std::vector<Rational> c;
            for (int i = 0; i < K.degree(); ++i) c.push_back(random_rational(rng, 9));
            auto x = K.element(c);
            auto cp = charpoly(x.multiplication_matrix());
            auto f = clear_denominators(cp);
            // only a valid oracle when x generates K
            if (!is_irreducible_over_q(from_integers(f))) continue;
            double oracle = mahler_log_height(f);
            auto h = weil_height(x);
            EXPECT_NEAR(h.value.midpoint(), oracle, 1e-9) << x.to_string() << " in " << K.header();
        }
    }
}

TEST(WeilHeight, Invariances) {
    std::mt19937_64 rng(3);
    for (int it = 0; it < 100; ++it) {
        Rational q = random_rational(rng, 500);
        EXPECT_EQ(*weil_height(q).log_of, *weil_height(Rational(1) / q).log_of);
        Integer l = *weil_height(q).log_of;
        EXPECT_EQ(*weil_height(rational_pow(q, 3)).log_of, pow(l, 3));
    }
    NumberField K(UPoly({-2, 0, 0, 1}));
    auto x = K.element({1, 2, -1});
    EXPECT_NEAR(weil_height(x).value.midpoint(), weil_height(x.inverse()).value.midpoint(), 1e-12);
    EXPECT_NEAR(weil_height(x.pow(3)).value.midpoint(), 3 * weil_height(x).value.midpoint(), 1e-12);
}

TEST(ProductFormula, RandomRationals) {
    std::mt19937_64 rng(2024);
    for (int it = 0; it < 1000; ++it) {
        Rational q = random_rational(rng, 1000000);
        auto pf = product_formula(NumberField().from_rational(q));
        EXPECT_TRUE(pf.holds()) << q.get_str();
    }
}

TEST(ProductFormula, NumberFields) {
    std::mt19937_64 rng(5);
    for (const auto& m : {UPoly({-2, 0, 1}), UPoly({1, 0, 1}), UPoly({-2, 0, 0, 1}), UPoly({5, 0, 0, 0, 1}),
                          UPoly({Rational(1, 3), 1, 1})}) {
        NumberField K(m);
        for (int it = 0; it < 10; ++it) {
            std::vector<Rational> c;
            for (int i = 0; i < K.degree(); ++i) c.push_back(random_rational(rng, 30));
            auto pf = product_formula(K.element(c));
            EXPECT_TRUE(pf.holds()) << K.header();
        }
    }
}

TEST(Factor, OverQ) {
    auto f = factor_over_q(UPoly({-1, 0, 0, 0, 0, 0, 1}));
    ASSERT_EQ(f.size(), 4u);
    EXPECT_EQ(f[0].factor.degree(), 1);
    EXPECT_EQ(f[3].factor.degree(), 2);
    auto g = factor_over_q(UPoly({-1, 0, 1}) * UPoly({-1, 0, 1}) * UPoly({2, 0, 0, 1}));
    ASSERT_EQ(g.size(), 3u);
    EXPECT_EQ(g[0].multiplicity, 2);
    EXPECT_TRUE(is_irreducible_over_q(UPoly({1, 0, 0, 0, 1})));
    EXPECT_FALSE(is_irreducible_over_q(UPoly({4, 0, 0, 0, 1})));   // x^4+4 = (x^2+2x+2)(x^2-2x+2)
    EXPECT_FALSE(is_irreducible_over_q(UPoly({1, 0, 0, 0, 0, 0, 0, 0, 1}) - UPoly({0, 0, 0, 0, 2})));
}

TEST(NumberField, Construction) {
    EXPECT_THROW(NumberField(UPoly({-1, 0, 1})), InputError);
    EXPECT_THROW(NumberField(UPoly({1, 0, 2})), InputError);
    NumberField K(UPoly({1, 0, 1}));
    auto i = K.generator();
    EXPECT_EQ(i * i, K.from_rational(-1));
    auto z = K.element({3, 4});
    EXPECT_EQ(z * z.inverse(), K.one());
    EXPECT_EQ(z.norm(), 25);
}
