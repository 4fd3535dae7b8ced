#include <gtest/gtest.h>

#include <random>

#include "gheight/arith/number_field.hpp"
#include "gheight/linalg/matrix.hpp"

using namespace gheight;

namespace {

const RationalField Q;
using QM = Matrix<RationalField>;

QM random_matrix(std::mt19937_64& rng, size_t r, size_t c, int lo = -5, int hi = 5) {
    std::uniform_int_distribution<int> d(lo, hi);
    QM A(Q, r, c);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) A(i, j) = d(rng);
    return A;
}

// Faddeev-LeVerrier: c_{n-k} = -tr(A M_k)/k with M_{k+1} = A M_k + c_{n-k} I.
std::vector<Rational> leverrier(const QM& A) {
    size_t n = A.rows();
    std::vector<Rational> c(n + 1, Rational(0));
    c[n] = 1;
    QM M = QM::identity(Q, n);
    for (size_t k = 1; k <= n; ++k) {
        QM AM = A * M;
        Rational tr = 0;
        for (size_t i = 0; i < n; ++i) tr += AM(i, i);
        c[n - k] = -tr / Rational(static_cast<long>(k));
        M = AM;
        for (size_t i = 0; i < n; ++i) M(i, i) += c[n - k];
    }
    return c;
}

QM eval_poly(const std::vector<Rational>& p, const QM& A) {
    size_t n = A.rows();
    QM r(Q, n, n), pw = QM::identity(Q, n);
    for (const auto& c : p) {
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) r(i, j) += c * pw(i, j);
        pw = pw * A;
    }
    return r;
}

} // namespace

TEST(Linalg, CharpolyAgainstLeverrier) {
    std::mt19937_64 rng(41);
    for (int it = 0; it < 40; ++it) {
        size_t n = 1 + static_cast<size_t>(it % 6);
        auto A = random_matrix(rng, n, n);
        EXPECT_EQ(A.charpoly(), leverrier(A));
        EXPECT_TRUE(eval_poly(A.charpoly(), A) == QM(Q, n, n));
    }
}

TEST(Linalg, MinpolyExamples) {
    QM D(Q, 3, 3);
    D(0, 0) = 1;
    D(1, 1) = 1;
    D(2, 2) = 2;
    EXPECT_EQ(D.minpoly(), (std::vector<Rational>{2, -3, 1}));
    QM J(Q, 2, 2);
    J(0, 1) = 1;
    EXPECT_EQ(J.minpoly(), (std::vector<Rational>{0, 0, 1}));
    EXPECT_EQ(QM::identity(Q, 4).minpoly(), (std::vector<Rational>{-1, 1}));
}

TEST(Linalg, MinpolyAnnihilatesAndDivides) {
    std::mt19937_64 rng(42);
    for (int it = 0; it < 30; ++it) {
        size_t n = 2 + static_cast<size_t>(it % 4);
        // block-diagonal with a repeated block makes it derogatory half the time
        QM A = random_matrix(rng, n, n, -2, 2);
        if (it % 2) {
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j)
                    if (i != j) A(i, j) = 0;
            A(0, 0) = A(n - 1, n - 1);
        }
        auto mp = A.minpoly();
        EXPECT_TRUE(eval_poly(mp, A) == QM(Q, n, n));
        UPoly cp(A.charpoly()), m(mp);
        EXPECT_TRUE((cp % m).is_zero());
        // no proper divisor of lower degree annihilates: check via the degree of
        // the Krylov space of a generic vector
        std::vector<Rational> v;
        std::uniform_int_distribution<int> d(-9, 9);
        for (size_t i = 0; i < n; ++i) v.push_back(d(rng));
        size_t deg = mp.size() - 1;
        QM K(Q, n, deg);
        auto w = v;
        for (size_t j = 0; j < deg; ++j) {
            for (size_t i = 0; i < n; ++i) K(i, j) = w[i];
            w = A.apply(w);
        }
        EXPECT_LE(K.rank(), deg);
    }
}

TEST(Linalg, NullspaceSolveInverse) {
    std::mt19937_64 rng(43);
    for (int it = 0; it < 40; ++it) {
        size_t r = 1 + static_cast<size_t>(it % 5), c = 1 + static_cast<size_t>((it / 5) % 5);
        auto A = random_matrix(rng, r, c, -3, 3);
        auto null = A.nullspace();
        EXPECT_EQ(null.size() + A.rank(), c);
        for (const auto& v : null) {
            auto z = A.apply(v);
            for (const auto& x : z) EXPECT_EQ(x, 0);
        }
        std::vector<Rational> x;
        std::uniform_int_distribution<int> d(-4, 4);
        for (size_t j = 0; j < c; ++j) x.push_back(d(rng));
        auto b = A.apply(x);
        auto sol = A.solve(b);
        ASSERT_TRUE(sol.has_value());
        EXPECT_EQ(A.apply(*sol), b);
        FactoredSystem<RationalField> fs(A);
        auto sol2 = fs.solve(b);
        ASSERT_TRUE(sol2.has_value());
        EXPECT_EQ(A.apply(*sol2), b);
        if (r == c && A.rank() == r) {
            EXPECT_TRUE(A * A.inverse_matrix() == QM::identity(Q, r));
            EXPECT_NE(A.det(), 0);
        } else if (r == c) {
            EXPECT_EQ(A.det(), 0);
        }
    }
    QM Z(Q, 2, 2);
    Z(0, 0) = 1;
    Z(0, 1) = 1;
    Z(1, 0) = 1;
    Z(1, 1) = 1;
    EXPECT_FALSE(Z.solve({Rational(1), Rational(2)}).has_value());
}

TEST(Linalg, NumberFieldEntries) {
    NumberField K(UPoly({-2, 0, 1}));
    auto r = K.generator();
    Matrix<NumberField> A(K, 2, 2);
    A(0, 0) = r;
    A(0, 1) = K.one();
    A(1, 0) = K.one();
    A(1, 1) = -r;
    // charpoly x^2 - (2 + 1) = x^2 - 3
    auto cp = A.charpoly();
    ASSERT_EQ(cp.size(), 3u);
    EXPECT_EQ(cp[0], K.from_rational(-3));
    EXPECT_TRUE(cp[1].is_zero());
    EXPECT_EQ(A.det(), K.from_rational(-3));
    EXPECT_TRUE(A * A.inverse_matrix() == Matrix<NumberField>::identity(K, 2));
}
