#pragma once

#include <map>
#include <vector>

#include "gheight/series/multipoly.hpp"
#include "gheight/series/multiseries.hpp"

namespace gheight {

// Truncation of P/Q at total degree N. Needs Q(0) != 0.
template <CoefficientField F>
MultiSeries<F> expand_rational(const MultiPoly<F>& P, const MultiPoly<F>& Q, int N) {
    if (P.nvars() != Q.nvars()) throw InputError("expand_rational: numerator and denominator in different variables");
    int n = Q.nvars();
    const F& K = Q.field();
    using E = typename F::element_type;
    Exponent zero(static_cast<size_t>(n), 0);
    E q0 = Q.coeff(zero);
    if (is_zero(q0)) throw InputError("expand_rational: Q(0) = 0, denominator not invertible");
    E q0inv = inverse(q0);
    MultiSeries<F> S(K, n, N);
    std::vector<std::pair<Exponent, E>> qterms;
    for (const auto& [e, c] : Q.terms())
        if (e != zero) qterms.push_back({e, c});
    Exponent f(static_cast<size_t>(n));
    for (const auto& e : exponents_up_to(n, N)) {
        E s = P.coeff(e);
        for (const auto& [j, qj] : qterms) {
            bool fits = true;
            for (size_t i = 0; i < f.size() && fits; ++i) {
                f[i] = e[i] - j[i];
                fits = f[i] >= 0;
            }
            if (!fits) continue;
            auto it = S.terms().find(f);
            if (it != S.terms().end()) s -= qj * it->second;
        }
        S.add_term(e, s * q0inv);
    }
    return S;
}

// F(A_1, ..., A_nu) truncated at N; every A_i must have zero constant term
// and the same number of variables as each other.
template <CoefficientField Fd>
MultiSeries<Fd> compose(const MultiSeries<Fd>& F, const std::vector<MultiSeries<Fd>>& A, int N) {
    if (static_cast<int>(A.size()) != F.nvars())
        throw InputError("compose: need " + std::to_string(F.nvars()) + " inner series, got " + std::to_string(A.size()));
    if (A.empty()) throw InputError("compose: no inner series");
    int m = A[0].nvars();
    for (size_t i = 0; i < A.size(); ++i) {
        if (A[i].nvars() != m) throw InputError("compose: inner series have different variable counts");
        if (!is_zero(A[i].constant_term()))
            throw InputError("compose: inner series " + std::to_string(i + 1) + " has nonzero constant term");
    }
    const Fd& K = F.field();
    std::vector<MultiSeries<Fd>> inner;
    for (const auto& a : A) inner.push_back(a.truncate(N));
    // z^e o A, memoised by exponent
    std::map<Exponent, MultiSeries<Fd>, GradedLex> memo;
    Exponent zero(static_cast<size_t>(F.nvars()), 0);
    memo.emplace(zero, MultiSeries<Fd>::constant(K, m, N, K.one()));
    auto power = [&](auto& self, const Exponent& e) -> const MultiSeries<Fd>& {
        auto it = memo.find(e);
        if (it != memo.end()) return it->second;
        size_t i = e.size();
        while (i-- > 0)
            if (e[i] > 0) break;
        Exponent f = e;
        --f[i];
        MultiSeries<Fd> r = self(self, f) * inner[i];
        return memo.emplace(e, std::move(r)).first->second;
    };
    MultiSeries<Fd> out(K, m, N);
    for (const auto& [e, c] : F.terms()) {
        if (total_degree(e) > N) break;   // A^e has valuation >= |e|
        const auto& p = power(power, e);
        for (const auto& [g, d] : p.terms()) out.add_term(g, c * d);
    }
    return out;
}

// Keeps the terms z1^n ... z_mu^n (no other variables) and reads them as t^n.
template <CoefficientField F>
UniSeries<F> mu_diagonal(const MultiSeries<F>& h, int mu) {
    if (mu < 1 || mu > h.nvars())
        throw InputError("mu_diagonal: need 1 <= mu <= " + std::to_string(h.nvars()) + ", got " + std::to_string(mu));
    int order = h.order() / mu;
    UniSeries<F> out(h.field(), order);
    for (const auto& [e, c] : h.terms()) {
        int n = e[0];
        bool keep = true;
        for (int i = 0; i < h.nvars() && keep; ++i) keep = e[static_cast<size_t>(i)] == (i < mu ? n : 0);
        if (keep && n <= order) out.set(n, c);
    }
    return out;
}

// The monomial s = z1 ... z_mu as an exponent.
inline Exponent s_exponent(int nvars, int mu, int power = 1) {
    Exponent e(static_cast<size_t>(nvars), 0);
    for (int i = 0; i < mu; ++i) e[static_cast<size_t>(i)] = power;
    return e;
}

} // namespace gheight
