#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "gheight/arith/modp.hpp"
#include "gheight/arith/upoly.hpp"

namespace gheight {

namespace detail {

// Advances a sorted index subset of {0..n-1}; false when exhausted.
inline bool next_combination(std::vector<size_t>& idx, size_t n) {
    size_t s = idx.size();
    for (size_t i = s; i-- > 0;) {
        if (idx[i] < n - s + i) {
            ++idx[i];
            for (size_t j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

inline Integer symmetric(const Integer& a, const Integer& m) {
    Integer r = a % m;
    if (r < 0) r += m;
    if (2 * r > m) r -= m;
    return r;
}

inline std::vector<Integer> primitive_part(std::vector<Integer> f) {
    Integer g = 0;
    for (const auto& c : f) g = gcd(g, c);
    if (g == 0) return f;
    if (f.back() < 0) g = -g;
    for (auto& c : f) c /= g;
    return f;
}

// Exact division test over Z: returns quotient if b | a.
inline std::optional<std::vector<Integer>> divides(const std::vector<Integer>& a, const std::vector<Integer>& b) {
    auto [q, r] = divmod(from_integers(a), from_integers(b));
    if (!r.is_zero()) return std::nullopt;
    std::vector<Integer> out;
    for (const auto& c : q.coeffs()) {
        if (c.get_den() != 1) return std::nullopt;
        out.push_back(c.get_num());
    }
    return out;
}

// Irreducible factors over Z of a squarefree primitive f with positive
// leading coefficient (Zassenhaus: factor mod p, lift, recombine).
inline std::vector<std::vector<Integer>> zassenhaus(std::vector<Integer> f) {
    int n = static_cast<int>(f.size()) - 1;
    if (n <= 1) return {f};

    Integer best_p = 0;
    std::vector<modp::Poly> best;
    int tried = 0;
    for (unsigned long pu = 3; tried < 6; pu += 2) {
        Integer p(pu);
        if (!is_prime(p) || f.back() % p == 0) continue;
        modp::Poly fp = modp::reduce(f, p);
        modp::Poly dp = modp::derivative(fp, p);
        if (dp.empty() || modp::degree(modp::gcd(fp, dp, p)) != 0) continue;
        auto facs = modp::factor_mod_p(fp, p);
        ++tried;
        if (best_p == 0 || facs.size() < best.size()) {
            best_p = p;
            best.clear();
            for (auto& fc : facs) best.push_back(fc.factor);
        }
        if (best.size() == 1) break;
    }
    if (best.size() <= 1) return {f};

    // Mignotte-type bound on coefficients of any factor.
    Integer norm2sq = 0;
    for (const auto& c : f) norm2sq += c * c;
    Integer norm = sqrt(norm2sq) + 1;
    Integer bound = pow(Integer(2), static_cast<unsigned long>(n)) * norm * abs(f.back());
    int k = 1;
    Integer pk = best_p;
    while (pk <= 2 * bound) {
        pk *= best_p;
        ++k;
    }
    std::vector<modp::Poly> lifted = modp::multifactor_lift(f, best, best_p, k);

    std::vector<std::vector<Integer>> out;
    std::vector<modp::Poly> remaining = lifted;
    std::vector<Integer> rest = f;
    size_t s = 1;
    while (2 * s <= remaining.size()) {
        bool found = false;
        std::vector<size_t> idx(s);
        for (size_t i = 0; i < s; ++i) idx[i] = i;
        for (;;) {
            modp::Poly g = {rest.back() % pk};
            for (size_t i : idx) g = modp::mul(g, remaining[i], pk);
            std::vector<Integer> gi;
            for (const auto& c : g) gi.push_back(symmetric(c, pk));
            while (!gi.empty() && gi.back() == 0) gi.pop_back();
            gi = primitive_part(gi);
            if (auto q = divides(rest, gi)) {
                out.push_back(gi);
                rest = primitive_part(*q);
                std::vector<modp::Poly> keep;
                for (size_t i = 0; i < remaining.size(); ++i)
                    if (std::find(idx.begin(), idx.end(), i) == idx.end()) keep.push_back(remaining[i]);
                remaining = std::move(keep);
                found = true;
                break;
            }
            if (!next_combination(idx, remaining.size())) break;
        }
        if (!found) ++s;
    }
    if (rest.size() > 1) out.push_back(rest);
    return out;
}

} // namespace detail

struct RationalFactor {
    UPoly factor;   // monic, irreducible over Q
    int multiplicity;
};

// Factorisation of a nonzero polynomial over Q into monic irreducibles,
// sorted by (degree, coefficients).
inline std::vector<RationalFactor> factor_over_q(const UPoly& f) {
    if (f.is_zero()) throw InputError("factor_over_q: zero polynomial");
    std::vector<RationalFactor> out;
    // Yun's squarefree decomposition.
    UPoly a = f.monic();
    UPoly b = a.derivative();
    UPoly c = gcd(a, b);
    UPoly w = a / c;
    int i = 1;
    while (w.degree() > 0) {
        UPoly y = gcd(w, c);
        UPoly z = (w / y).monic();
        if (z.degree() > 0) {
            for (auto& g : detail::zassenhaus(z.primitive_integer()))
                out.push_back({from_integers(g).monic(), i});
        }
        ++i;
        w = y;
        c = c / y;
    }
    std::sort(out.begin(), out.end(), [](const RationalFactor& x, const RationalFactor& y) {
        if (x.factor.degree() != y.factor.degree()) return x.factor.degree() < y.factor.degree();
        const auto& cx = x.factor.coeffs();
        const auto& cy = y.factor.coeffs();
        for (size_t k = cx.size(); k-- > 0;)
            if (cx[k] != cy[k]) return cx[k] < cy[k];
        return x.multiplicity < y.multiplicity;
    });
    return out;
}

inline bool is_irreducible_over_q(const UPoly& f) {
    if (f.degree() < 1) return false;
    auto facs = factor_over_q(f);
    return facs.size() == 1 && facs[0].multiplicity == 1;
}

inline std::vector<Rational> rational_roots(const UPoly& f) {
    std::vector<Rational> roots;
    for (const auto& fc : factor_over_q(f))
        if (fc.factor.degree() == 1) roots.push_back(-fc.factor.coeff(0));
    return roots;
}

} // namespace gheight
