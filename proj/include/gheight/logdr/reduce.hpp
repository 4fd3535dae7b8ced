#pragma once

#include <optional>
#include <string>

#include "gheight/logdr/logform.hpp"

namespace gheight {

template <CoefficientField F>
struct Reduction {
    UniSeries<F> h;
    // omega = h(s) ds-form + d_rel(eta) up to order N-1; absent when mu = 1.
    std::optional<LogForm<F>> eta;
};

namespace detail {

template <CoefficientField F>
void require_closed(const LogForm<F>& w) {
    if (w.degree() >= w.nu() - 1) return;
    auto dw = d_rel(w);
    if (dw.is_zero()) return;
    const auto& [I, f] = *dw.components().begin();
    const auto& [e, c] = *f.terms().begin();
    std::string mono = monomial_string(e, default_names(w.nu()));
    throw InputError("relative_reduce: form is not closed; d(omega) has coefficient " + coeff_to_string(c) +
                     " at generators [" + genset_string(I) + "] monomial " + mono);
}

} // namespace detail

// Writes a closed form of degree mu-1 as h(s) dz_2/z_2 ^ ... ^ dz_mu/z_mu plus
// an exact form. Dependence on z_{mu+1..nu} and the dz_{>mu} components is
// integrated away with the Euler homotopy; unbalanced monomials in
// z_1..z_mu are killed with the Koszul homotopy for D_2..D_mu.
template <CoefficientField F>
Reduction<F> relative_reduce_with_primitive(const LogForm<F>& w, int requested_order = -1) {
    int nu = w.nu(), mu = w.mu(), N = w.order();
    if (w.degree() != mu - 1)
        throw InputError("relative_reduce: expected a form of degree mu-1 = " + std::to_string(mu - 1) + ", got degree " +
                         std::to_string(w.degree()));
    int out_order = N / mu;
    if (requested_order > out_order)
        throw OrderError("relative_reduce: t-order " + std::to_string(requested_order) + " needs input order " +
                             std::to_string(mu * requested_order) + ", have " + std::to_string(N),
                         mu * requested_order);
    detail::require_closed(w);

    const F& K = w.field();
    UniSeries<F> h(K, out_order);
    std::optional<LogForm<F>> eta;
    if (mu >= 2) eta.emplace(K, nu, mu, mu - 2, N + 1);

    for (const auto& [I, f] : w.components()) {
        GenSet Ie, Iy;
        for (int g : I) (g <= mu ? Ie : Iy).push_back(g);
        for (const auto& [e, c] : f.terms()) {
            int weight = static_cast<int>(Iy.size());
            for (int i = mu; i < nu; ++i) weight += e[static_cast<size_t>(i)];
            if (weight > 0) {
                if (!eta) continue;   // degree 0 forms have no homotopy term
                // (-1)^{|Ie|} Ie ^ iota_Euler(y^a dy_Iy) / weight
                Rational base(Ie.size() % 2 ? -1 : 1, weight);
                for (size_t k = 0; k < Iy.size(); ++k) {
                    GenSet J = Ie;
                    for (size_t l = 0; l < Iy.size(); ++l)
                        if (l != k) J.push_back(Iy[l]);
                    Exponent e2 = e;
                    ++e2[static_cast<size_t>(Iy[k] - 1)];
                    Rational s = (k % 2) ? -base : base;
                    eta->add_term(J, e2, scale(c, s));
                }
                continue;
            }
            // x-only term in a pure log component
            long norm2 = 0;
            std::vector<long> lam(static_cast<size_t>(mu) + 1, 0);
            for (int g = 2; g <= mu; ++g) {
                lam[static_cast<size_t>(g)] = e[static_cast<size_t>(g - 1)] - e[0];
                norm2 += lam[static_cast<size_t>(g)] * lam[static_cast<size_t>(g)];
            }
            if (norm2 == 0) {
                // balanced: e_1 = ... = e_mu, and I is the full log set
                h.set(e[0], h.coeff(e[0]) + c);
                continue;
            }
            // iota_lambda / |lambda|^2
            for (size_t k = 0; k < Ie.size(); ++k) {
                long l = lam[static_cast<size_t>(Ie[k])];
                if (l == 0) continue;
                GenSet J = Ie;
                J.erase(J.begin() + static_cast<long>(k));
                Rational s = ratio(((k % 2) ? -1 : 1) * l, norm2);
                eta->add_term(J, e, scale(c, s));
            }
        }
    }
    return {h, eta};
}

template <CoefficientField F>
UniSeries<F> relative_reduce(const LogForm<F>& w, int requested_order = -1) {
    return relative_reduce_with_primitive(w, requested_order).h;
}

// The pipeline's name for the same map.
template <CoefficientField F>
UniSeries<F> compute_gfunction(const LogForm<F>& w, int requested_order = -1) {
    return relative_reduce(w, requested_order);
}

} // namespace gheight
