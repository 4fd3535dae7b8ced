#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gheight/arith/rational.hpp"

namespace gheight {

// Dense univariate polynomial over Q, coefficient i at x^i.
// Invariant: no trailing zero coefficients (zero polynomial is empty).
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
        for (auto& c : c_) c.canonicalize();
        trim();
    }
    UPoly(std::initializer_list<long> coeffs) {
        for (long v : coeffs) c_.emplace_back(v);
        trim();
    }

    static UPoly constant(const Rational& a) { return UPoly(std::vector<Rational>{a}); }
    static UPoly x() { return UPoly(std::vector<Rational>{0, 1}); }
    static UPoly monomial(const Rational& a, int degree) {
        std::vector<Rational> c(static_cast<size_t>(degree) + 1);
        c.back() = a;
        return UPoly(std::move(c));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(int i) const { return i >= 0 && i <= degree() ? c_[static_cast<size_t>(i)] : Rational(0); }
    const Rational& leading() const { return c_.back(); }

    Rational operator()(const Rational& x) const {
        Rational r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }

    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
        return UPoly(std::move(c));
    }
    friend UPoly operator-(const UPoly& a) {
        std::vector<Rational> c(a.c_);
        for (auto& v : c) v = -v;
        return UPoly(std::move(c));
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (sgn(a.c_[i]) == 0) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        }
        return UPoly(std::move(c));
    }
    friend UPoly operator*(const Rational& s, const UPoly& a) {
        std::vector<Rational> c(a.c_);
        for (auto& v : c) v *= s;
        return UPoly(std::move(c));
    }
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

    // Quotient and remainder; b != 0.
    friend std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
        if (b.is_zero()) throw InputError("UPoly: division by zero polynomial");
        std::vector<Rational> r(a.c_);
        int db = b.degree();
        if (a.degree() < db) return {UPoly(), a};
        std::vector<Rational> q(static_cast<size_t>(a.degree() - db) + 1);
        Rational inv = 1 / b.leading();
        for (int i = a.degree(); i >= db; --i) {
            Rational f = r[static_cast<size_t>(i)] * inv;
            if (sgn(f) == 0) continue;
            q[static_cast<size_t>(i - db)] = f;
            for (int j = 0; j <= db; ++j) r[static_cast<size_t>(i - db + j)] -= f * b.c_[static_cast<size_t>(j)];
        }
        return {UPoly(std::move(q)), UPoly(std::move(r))};
    }
    friend UPoly operator%(const UPoly& a, const UPoly& b) { return divmod(a, b).second; }
    friend UPoly operator/(const UPoly& a, const UPoly& b) { return divmod(a, b).first; }

    UPoly monic() const {
        if (is_zero()) return {};
        return (1 / leading()) * *this;
    }

    UPoly derivative() const {
        std::vector<Rational> c;
        for (size_t i = 1; i < c_.size(); ++i) c.push_back(c_[i] * static_cast<long>(i));
        return UPoly(std::move(c));
    }

    // Integer polynomial with the same roots: scaled by the lcm of
    // denominators and divided by the content; sign makes leading > 0.
    std::vector<Integer> primitive_integer() const {
        Integer l = 1, g = 0;
        for (const auto& v : c_) l = lcm(l, v.get_den());
        std::vector<Integer> out;
        for (const auto& v : c_) {
            Integer n = Integer(v * l);
            out.push_back(n);
            g = gcd(g, n);
        }
        if (g == 0) return out;
        if (out.back() < 0) g = -g;
        for (auto& v : out) v /= g;
        return out;
    }

    std::string to_string(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            const Rational& v = c_[static_cast<size_t>(i)];
            if (sgn(v) == 0) continue;
            if (!s.empty()) s += sgn(v) > 0 ? " + " : " - ";
            else if (sgn(v) < 0) s += "-";
            Rational a = ::abs(v);
            if (a != 1 || i == 0) s += a.get_str();
            if (i > 0) s += (a != 1 ? "*" : "") + var + (i > 1 ? "^" + std::to_string(i) : "");
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

inline UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
        UPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// Extended Euclid: returns (g, s, t) with s*a + t*b = g monic.
inline std::tuple<UPoly, UPoly, UPoly> xgcd(const UPoly& a, const UPoly& b) {
    UPoly r0 = a, r1 = b, s0 = UPoly{1}, s1, t0, t1 = UPoly{1};
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        UPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    Rational inv = 1 / r0.leading();
    return {inv * r0, inv * s0, inv * t0};
}

inline Rational resultant(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return 0;
    if (b.degree() == 0) return rational_pow(b.leading(), a.degree());
    if (a.degree() == 0) return rational_pow(a.leading(), b.degree());
    UPoly r = a % b;
    if (r.is_zero()) return 0;
    int m = a.degree(), n = b.degree();
    Rational sign = (m % 2 == 1 && n % 2 == 1) ? -1 : 1;
    return sign * rational_pow(b.leading(), m - r.degree()) * resultant(b, r);
}

inline UPoly power_mod(UPoly base, unsigned long e, const UPoly& mod) {
    UPoly r{1};
    base = base % mod;
    while (e > 0) {
        if (e & 1UL) r = (r * base) % mod;
        base = (base * base) % mod;
        e >>= 1;
    }
    return r % mod;
}

inline UPoly squarefree_part(const UPoly& f) {
    if (f.degree() <= 0) return f.monic();
    return (f / gcd(f, f.derivative())).monic();
}

inline UPoly from_integers(const std::vector<Integer>& c) {
    std::vector<Rational> q;
    for (const auto& v : c) q.emplace_back(v);
    return UPoly(std::move(q));
}

} // namespace gheight
