#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gheight/errors.hpp"

namespace gheight {

using Integer = mpz_class;

inline Integer abs(const Integer& n) { return Integer(::abs(n)); }

inline Integer gcd(const Integer& a, const Integer& b) {
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer pow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Integer factorial(unsigned long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// Miller-Rabin with 40 rounds; false positives are not a practical concern
// at the sizes used here.
inline bool is_prime(const Integer& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

// Multiplicity of the prime p in the nonzero integer n.
inline long int_valuation(const Integer& n, const Integer& p) {
    if (n == 0) throw InputError("int_valuation: zero has infinite valuation");
    Integer rest;
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

namespace detail {

inline Integer pollard_brent(const Integer& n, unsigned long seed) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    Integer y = seed % n, c = (seed * 7 + 1) % n, m = 64, g = 1, r = 1, q = 1;
    Integer x, ys;
    auto f = [&](const Integer& v) { return Integer((v * v + c) % n); };
    while (g == 1) {
        x = y;
        for (Integer i = 0; i < r; ++i) y = f(y);
        Integer k = 0;
        while (k < r && g == 1) {
            ys = y;
            Integer lim = std::min(m, Integer(r - k));
            for (Integer i = 0; i < lim; ++i) {
                y = f(y);
                q = (q * abs(Integer(x - y))) % n;
            }
            g = gcd(q, n);
            k += m;
        }
        r *= 2;
    }
    if (g == n) {
        do {
            ys = f(ys);
            g = gcd(abs(Integer(x - ys)), n);
        } while (g == 1);
    }
    return g;
}

inline void factor_into(Integer n, std::map<Integer, int>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    for (unsigned long seed = 2;; ++seed) {
        Integer d = pollard_brent(n, seed);
        if (d != n && d != 1) {
            factor_into(d, out);
            factor_into(Integer(n / d), out);
            return;
        }
    }
}

} // namespace detail

// Prime factorisation of |n|, n != 0. Ordered by prime.
inline std::map<Integer, int> factor_integer(const Integer& n) {
    if (n == 0) throw InputError("factor_integer: zero");
    std::map<Integer, int> out;
    Integer m = abs(n);
    for (unsigned long p = 2; p < 10000 && Integer(p) * p <= m; p += (p == 2 ? 1 : 2)) {
        int e = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            m /= p;
            ++e;
        }
        if (e > 0) out[Integer(p)] = e;
    }
    detail::factor_into(m, out);
    return out;
}

inline std::vector<Integer> prime_divisors(const Integer& n) {
    std::vector<Integer> out;
    for (const auto& [p, e] : factor_integer(n)) out.push_back(p);
    return out;
}

inline Integer parse_integer(const std::string& s) {
    Integer r;
    if (s.empty() || r.set_str(s, 10) != 0) throw InputError("not an integer: '" + s + "'");
    return r;
}

} // namespace gheight
