#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gheight/arith/factor.hpp"
#include "gheight/linalg/matrix.hpp"
#include "gheight/series/multipoly.hpp"

namespace gheight {

inline std::vector<std::string> dual_names(int m) { return default_names(m, "y"); }

// First Hodge number: the bound on the invariant subspace.
inline int hodge_invariant_bound(const std::vector<int>& h, int m = -1) {
    if (h.empty()) throw InputError("hodge_invariant_bound: empty Hodge number list");
    int sum = 0;
    for (int x : h) {
        if (x < 0) throw InputError("hodge_invariant_bound: negative Hodge number " + std::to_string(x));
        sum += x;
    }
    if (m >= 0 && sum != m)
        throw InputError("hodge_invariant_bound: Hodge numbers sum to " + std::to_string(sum) + ", expected " + std::to_string(m));
    return h.front();
}

struct DegreeBound {
    Integer bound;
    bool placeholder = true;   // default policy, not taken from the source
    std::string note() const {
        return placeholder ? "placeholder policy m!*2^m (non-paper)" : "user supplied";
    }
};

inline DegreeBound endo_field_degree_bound(int m, std::optional<Integer> user = std::nullopt) {
    if (m < 1) throw InputError("endo_field_degree_bound: need m >= 1");
    if (user) {
        if (*user < 1) throw InputError("endo_field_degree_bound: bound must be positive");
        return {*user, false};
    }
    Integer b = 1;
    for (int i = 2; i <= m; ++i) b *= i;
    b *= pow(Integer(2), static_cast<unsigned long>(m));
    return {b, true};
}

namespace detail {

// Laplace expansion along rows, memoised on the set of unused columns.
template <CoefficientField F>
MultiPoly<F> poly_det(const std::vector<std::vector<MultiPoly<F>>>& M, const F& K, int nvars) {
    size_t n = M.size();
    if (n == 0) return MultiPoly<F>::constant(K, nvars, K.one());
    std::map<unsigned, MultiPoly<F>> memo;
    auto rec = [&](auto& self, size_t row, unsigned used) -> MultiPoly<F> {
        if (row == n) return MultiPoly<F>::constant(K, nvars, K.one());
        auto it = memo.find(used);
        if (it != memo.end()) return it->second;
        MultiPoly<F> acc(K, nvars);
        int sign = 1;
        for (size_t c = 0; c < n; ++c) {
            if (used & (1u << c)) continue;
            if (!M[row][c].is_zero()) {
                auto sub = self(self, row + 1, used | (1u << c));
                if (!sub.is_zero()) {
                    auto t = M[row][c] * sub;
                    acc = sign > 0 ? acc + t : acc + (-t);
                }
            }
            sign = -sign;
        }
        memo.emplace(used, acc);
        return acc;
    };
    return rec(rec, 0, 0u);
}

inline std::vector<std::vector<int>> column_subsets(int m, int r) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto& self, int next) -> void {
        if (static_cast<int>(cur.size()) == r) {
            out.push_back(cur);
            return;
        }
        for (int c = next; c < m; ++c) {
            cur.push_back(c);
            self(self, c + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

} // namespace detail

template <CoefficientField F>
struct Minor {
    std::vector<int> columns;   // 1-based
    MultiPoly<F> poly;
};

// Nonzero (k+1)-minors of the matrix with rows y^T tau^j, j = 0..k, in the
// order of their column subsets.
template <CoefficientField F>
std::vector<Minor<F>> minor_relation(const Matrix<F>& tau, int k) {
    if (tau.rows() != tau.cols()) throw InputError("minor_relation: endomorphism matrix must be square");
    int m = static_cast<int>(tau.rows());
    if (k <= 0) throw InputError("minor_relation: need k >= 1, got " + std::to_string(k));
    int dmin = static_cast<int>(tau.minpoly().size()) - 1;
    if (k >= dmin)
        throw InputError("minor_relation: no relation guaranteed, k = " + std::to_string(k) +
                         " is not below the minimal polynomial degree " + std::to_string(dmin));
    const F& K = tau.field();
    using P = MultiPoly<F>;
    std::vector<std::vector<P>> rows;
    Matrix<F> power = Matrix<F>::identity(K, static_cast<size_t>(m));
    for (int j = 0; j <= k; ++j) {
        std::vector<P> row;
        for (int c = 0; c < m; ++c) {
            P entry(K, m);
            for (int i = 0; i < m; ++i) {
                const auto& t = power(static_cast<size_t>(i), static_cast<size_t>(c));
                if (is_zero(t)) continue;
                Exponent e(static_cast<size_t>(m), 0);
                e[static_cast<size_t>(i)] = 1;
                entry.add_term(e, t);
            }
            row.push_back(std::move(entry));
        }
        rows.push_back(std::move(row));
        power = power * tau;
    }
    std::vector<Minor<F>> out;
    for (const auto& cols : detail::column_subsets(m, k + 1)) {
        std::vector<std::vector<P>> sub;
        for (const auto& row : rows) {
            std::vector<P> r;
            for (int c : cols) r.push_back(row[static_cast<size_t>(c)]);
            sub.push_back(std::move(r));
        }
        P d = detail::poly_det(sub, K, m);
        if (d.is_zero()) continue;
        std::vector<int> one_based;
        for (int c : cols) one_based.push_back(c + 1);
        out.push_back({one_based, std::move(d)});
    }
    return out;
}

// prod over the conjugates of P: the norm from L to Q, computed as the
// determinant of multiplication by P on the power basis of L over Q[y].
inline MultiPoly<RationalField> galois_conjugate_product(const MultiPoly<NumberField>& P) {
    if (P.is_zero()) throw InputError("galois_conjugate_product: zero polynomial");
    const NumberField& L = P.field();
    int d = L.degree(), n = P.nvars();
    RationalField Q;
    using QP = MultiPoly<RationalField>;
    if (d > 8) throw InputError("galois_conjugate_product: unsupported field degree " + std::to_string(d));
    std::vector<std::vector<QP>> M(static_cast<size_t>(d), std::vector<QP>(static_cast<size_t>(d), QP(Q, n)));
    for (const auto& [e, c] : P.terms()) {
        auto mm = c.multiplication_matrix();
        for (int r = 0; r < d; ++r)
            for (int s = 0; s < d; ++s) {
                const Rational& v = mm[static_cast<size_t>(r)][static_cast<size_t>(s)];
                if (sgn(v) != 0) M[static_cast<size_t>(r)][static_cast<size_t>(s)].add_term(e, v);
            }
    }
    return detail::poly_det(M, Q, n);
}

inline MultiPoly<RationalField> galois_conjugate_product(const MultiPoly<RationalField>& P) {
    if (P.is_zero()) throw InputError("galois_conjugate_product: zero polynomial");
    return P;
}

struct LinearForm {
    NumberField field;                        // Q(lambda), or Q
    std::vector<NumberFieldElement> coeffs;   // coefficient of y_1..y_m
    UPoly eigen_minpoly;                      // irreducible factor of the charpoly
    int orbit = 1;                            // number of conjugate forms it stands for

    MultiPoly<NumberField> poly() const {
        MultiPoly<NumberField> p(field, static_cast<int>(coeffs.size()));
        for (size_t i = 0; i < coeffs.size(); ++i) {
            if (coeffs[i].is_zero()) continue;
            Exponent e(coeffs.size(), 0);
            e[i] = 1;
            p.add_term(e, coeffs[i]);
        }
        return p;
    }
    std::string to_string() const {
        std::string s = poly().to_string(dual_names(static_cast<int>(coeffs.size())));
        if (field.degree() > 1) s += "  over Q[a]/(" + field.minpoly().to_string("a") + ")";
        return s;
    }
};

struct LinearFactorResult {
    std::vector<LinearForm> forms;
    MultiPoly<RationalField> product;
};

namespace detail {

inline NumberFieldElement quadratic_conjugate(const NumberFieldElement& x) {
    // a -> -a - c1 for minpoly a^2 + c1 a + c0
    const NumberField& L = x.field();
    Rational c1 = L.minpoly().coeff(1);
    Rational u = x.coords().size() > 0 ? x.coords()[0] : Rational(0);
    Rational v = x.coords().size() > 1 ? x.coords()[1] : Rational(0);
    return L.element({u - c1 * v, -v});
}

} // namespace detail

// One linear form per eigenvalue of tau: the left eigenvector (eigenvector
// of tau^T) read as a functional in y. Each Q-irreducible factor of the
// characteristic polynomial contributes its norm to the product.
inline LinearFactorResult linear_factor_relations(const Matrix<RationalField>& tau) {
    if (tau.rows() != tau.cols()) throw InputError("linear_factor_relations: endomorphism matrix must be square");
    int m = static_cast<int>(tau.rows());
    RationalField Q;
    auto cp = tau.charpoly(), mp = tau.minpoly();
    if (cp.size() != mp.size())
        throw InputError("linear_factor_relations: tau is derogatory (minimal polynomial degree " + std::to_string(mp.size() - 1) +
                         " < " + std::to_string(m) + "); use minor_relation instead");
    Matrix<RationalField> tt = tau.transpose();
    LinearFactorResult out{{}, MultiPoly<RationalField>::constant(Q, m, Rational(1))};
    for (const auto& f : factor_over_q(UPoly(cp))) {
        int d = f.factor.degree();
        if (d > 8) throw InputError("linear_factor_relations: unsupported field, eigenvalue field degree " + std::to_string(d) + " > 8");
        NumberField L = d == 1 ? NumberField() : NumberField(f.factor);
        NumberFieldElement lambda = d == 1 ? L.from_rational(-f.factor.coeff(0)) : L.generator();
        Matrix<NumberField> A(L, static_cast<size_t>(m), static_cast<size_t>(m));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                A(static_cast<size_t>(i), static_cast<size_t>(j)) = L.from_rational(tt(static_cast<size_t>(i), static_cast<size_t>(j)));
                if (i == j) A(static_cast<size_t>(i), static_cast<size_t>(j)) -= lambda;
            }
        auto null = A.nullspace();
        if (null.size() != 1) throw InputError("linear_factor_relations: eigenspace of dimension " + std::to_string(null.size()));
        auto v = null.front();
        // first nonzero coordinate 1
        for (const auto& c : v)
            if (!c.is_zero()) {
                auto inv = c.inverse();
                for (auto& x : v) x = x * inv;
                break;
            }
        LinearForm form{L, v, f.factor, d};
        out.product = out.product * galois_conjugate_product(form.poly());
        if (d == 2) {
            form.orbit = 1;
            LinearForm conj = form;
            for (auto& x : conj.coeffs) x = detail::quadratic_conjugate(x);
            out.forms.push_back(std::move(form));
            out.forms.push_back(std::move(conj));
        } else {
            out.forms.push_back(std::move(form));
        }
    }
    return out;
}

} // namespace gheight
