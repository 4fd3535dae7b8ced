#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "gheight/arith/integer.hpp"

// Polynomials with integer coefficients reduced modulo a prime power:
// factorisation over F_p and Hensel lifting to Z/p^k.
namespace gheight::modp {

// Coefficient i at x^i, entries in [0, modulus), no trailing zeros.
using Poly = std::vector<Integer>;

inline void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline Poly reduce(Poly f, const Integer& m) {
    for (auto& c : f) {
        c %= m;
        if (c < 0) c += m;
    }
    trim(f);
    return f;
}

inline int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

inline Poly add(const Poly& a, const Poly& b, const Integer& m) {
    Poly c(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) c[i] += b[i];
    return reduce(std::move(c), m);
}

inline Poly sub(const Poly& a, const Poly& b, const Integer& m) {
    Poly c(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
    return reduce(std::move(c), m);
}

inline Poly mul(const Poly& a, const Poly& b, const Integer& m) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return reduce(std::move(c), m);
}

inline Poly scale(const Poly& a, const Integer& s, const Integer& m) {
    Poly c(a);
    for (auto& v : c) v *= s;
    return reduce(std::move(c), m);
}

inline Integer inverse(const Integer& a, const Integer& m) {
    Integer r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw InputError("modp: non-invertible leading coefficient");
    return r;
}

// Division by b whose leading coefficient is a unit mod m.
inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, const Integer& m) {
    if (b.empty()) throw InputError("modp: division by zero polynomial");
    Poly r = a;
    int db = degree(b);
    if (degree(a) < db) return {{}, r};
    Poly q(static_cast<size_t>(degree(a) - db) + 1);
    Integer inv = inverse(b.back(), m);
    for (int i = degree(a); i >= db; --i) {
        Integer f = (r[static_cast<size_t>(i)] * inv) % m;
        if (f == 0) continue;
        q[static_cast<size_t>(i - db)] = f;
        for (int j = 0; j <= db; ++j) {
            auto& slot = r[static_cast<size_t>(i - db + j)];
            slot = (slot - f * b[static_cast<size_t>(j)]) % m;
            if (slot < 0) slot += m;
        }
    }
    return {reduce(std::move(q), m), reduce(std::move(r), m)};
}

inline Poly rem(const Poly& a, const Poly& b, const Integer& m) { return divmod(a, b, m).second; }

inline Poly monic(const Poly& f, const Integer& m) {
    if (f.empty()) return f;
    return scale(f, inverse(f.back(), m), m);
}

// gcd over F_p (p prime), monic.
inline Poly gcd(Poly a, Poly b, const Integer& p) {
    while (!b.empty()) {
        Poly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, p);
}

// s*a + t*b = 1 over F_p for coprime a, b.
inline std::pair<Poly, Poly> bezout(const Poly& a, const Poly& b, const Integer& p) {
    Poly r0 = a, r1 = b, s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
    while (!r1.empty()) {
        auto [q, r] = divmod(r0, r1, p);
        Poly s2 = sub(s0, mul(q, s1, p), p), t2 = sub(t0, mul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (degree(r0) != 0) throw InputError("modp::bezout: polynomials not coprime");
    Integer inv = inverse(r0[0], p);
    return {scale(s0, inv, p), scale(t0, inv, p)};
}

inline Poly powmod(Poly base, Integer e, const Poly& f, const Integer& m) {
    Poly r = {1};
    base = rem(base, f, m);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = rem(mul(r, base, m), f, m);
        base = rem(mul(base, base, m), f, m);
        e >>= 1;
    }
    return rem(r, f, m);
}

inline Poly derivative(const Poly& f, const Integer& m) {
    Poly d;
    for (size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<long>(i));
    return reduce(std::move(d), m);
}

inline bool is_one(const Poly& f) { return f.size() == 1 && f[0] == 1; }

namespace detail {

// f(x) = g(x^p) over F_p  ->  g
inline Poly pth_root(const Poly& f, const Integer& p) {
    unsigned long pu = p.get_ui();
    Poly g;
    for (size_t i = 0; i < f.size(); i += pu) g.push_back(f[i]);
    return g;
}

// Squarefree factorisation over F_p: f monic = prod g_i^{e_i}.
inline void squarefree(const Poly& f, const Integer& p, long mult, std::vector<std::pair<Poly, long>>& out) {
    if (degree(f) <= 0) return;
    Poly b = derivative(f, p);
    if (b.empty()) {
        squarefree(pth_root(f, p), p, mult * p.get_si(), out);
        return;
    }
    Poly c = gcd(f, b, p);
    Poly w = divmod(f, c, p).first;
    long i = 1;
    while (!is_one(w)) {
        Poly y = gcd(w, c, p);
        Poly z = divmod(w, y, p).first;
        if (degree(z) > 0) out.emplace_back(monic(z, p), i * mult);
        ++i;
        w = y;
        c = divmod(c, y, p).first;
    }
    if (degree(c) > 0) squarefree(pth_root(c, p), p, mult * p.get_si(), out);
}

inline void equal_degree(const Poly& g, int d, const Integer& p, gmp_randclass& rng, std::vector<Poly>& out) {
    if (degree(g) == d) {
        out.push_back(g);
        return;
    }
    Integer qd = pow(p, static_cast<unsigned long>(d));
    for (;;) {
        Poly a(static_cast<size_t>(degree(g)));
        for (auto& c : a) c = rng.get_z_range(p);
        trim(a);
        if (degree(a) < 1) continue;
        Poly b;
        if (p == 2) {
            Poly term = a;
            b = a;
            for (int i = 1; i < d; ++i) {
                term = rem(mul(term, term, p), g, p);
                b = add(b, term, p);
            }
        } else {
            b = sub(powmod(a, (qd - 1) / 2, g, p), Poly{1}, p);
        }
        Poly h = gcd(g, b, p);
        if (degree(h) > 0 && degree(h) < degree(g)) {
            equal_degree(h, d, p, rng, out);
            equal_degree(divmod(g, h, p).first, d, p, rng, out);
            return;
        }
    }
}

inline void distinct_degree(Poly g, const Integer& p, gmp_randclass& rng, std::vector<Poly>& out) {
    Poly x = {0, 1};
    Poly h = x;
    for (int d = 1; 2 * d <= degree(g); ++d) {
        h = powmod(h, p, g, p);
        Poly gd = gcd(g, sub(h, x, p), p);
        if (degree(gd) > 0) {
            equal_degree(gd, d, p, rng, out);
            g = divmod(g, gd, p).first;
            h = rem(h, g, p);
        }
    }
    if (degree(g) > 0) out.push_back(monic(g, p));
}

} // namespace detail

struct Factor {
    Poly factor;   // monic irreducible over F_p
    long exponent;
};

// Complete factorisation over F_p of f with unit leading coefficient;
// factors are monic and sorted by (degree, coefficients).
inline std::vector<Factor> factor_mod_p(const Poly& f_in, const Integer& p) {
    Poly f = monic(reduce(f_in, p), p);
    std::vector<std::pair<Poly, long>> sqf;
    detail::squarefree(f, p, 1, sqf);
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(20240917UL);
    std::vector<Factor> out;
    for (const auto& [g, e] : sqf) {
        std::vector<Poly> irr;
        detail::distinct_degree(g, p, rng, irr);
        for (auto& h : irr) out.push_back({std::move(h), e});
    }
    std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) {
        if (a.factor.size() != b.factor.size()) return a.factor.size() < b.factor.size();
        for (size_t i = a.factor.size(); i-- > 0;)
            if (a.factor[i] != b.factor[i]) return a.factor[i] < b.factor[i];
        return a.exponent < b.exponent;
    });
    return out;
}

// Lift f = g*h (mod p) to f = G*H (mod p^k); g monic, g and h coprime mod p.
inline std::pair<Poly, Poly> hensel_lift(const Poly& f, Poly g, Poly h, const Integer& p, int k) {
    auto [s, t] = bezout(g, h, p);
    Integer pi = p;
    for (int i = 1; i < k; ++i) {
        Integer next = pi * p;
        Poly e = sub(reduce(f, next), mul(g, h, next), next);
        for (auto& c : e) c /= pi;
        e = reduce(std::move(e), p);
        auto [q, r] = divmod(mul(e, t, p), g, p);
        Poly dh = add(mul(e, s, p), mul(q, h, p), p);
        g = add(g, scale(r, pi, next), next);
        h = add(h, scale(dh, pi, next), next);
        pi = next;
    }
    return {g, h};
}

// Lift f = lc(f) * prod factors (mod p) to mod p^k. Factors monic,
// pairwise coprime mod p. Returned factors are monic mod p^k.
inline std::vector<Poly> multifactor_lift(const Poly& f, const std::vector<Poly>& factors, const Integer& p, int k) {
    Integer pk = pow(p, static_cast<unsigned long>(k));
    std::vector<Poly> out;
    Poly rest = reduce(f, pk);
    for (size_t i = 0; i + 1 < factors.size(); ++i) {
        Poly h = {1};
        for (size_t j = i + 1; j < factors.size(); ++j) h = mul(h, factors[j], p);
        h = scale(h, rest.back() % p, p);
        auto [G, H] = hensel_lift(rest, factors[i], h, p, k);
        out.push_back(std::move(G));
        rest = std::move(H);
    }
    if (!factors.empty()) out.push_back(monic(rest, pk));
    return out;
}

} // namespace gheight::modp
