#pragma once

#include <compare>
#include <limits>
#include <string>

#include "gheight/arith/integer.hpp"

namespace gheight {

// Always canonical: gcd(num, den) = 1, den > 0.
using Rational = mpq_class;

// p-adic valuation: an integer, or +infinity for zero.
class Valuation {
public:
    static Valuation infinity() { return Valuation(); }
    explicit Valuation(long v) : value_(v), infinite_(false) {}

    bool is_infinite() const { return infinite_; }
    long value() const {
        if (infinite_) throw InputError("valuation of zero is +infinity");
        return value_;
    }

    friend bool operator==(const Valuation& a, const Valuation& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }
    friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
        return a.value_ <=> b.value_;
    }
    friend Valuation operator+(const Valuation& a, const Valuation& b) {
        if (a.infinite_ || b.infinite_) return infinity();
        return Valuation(a.value_ + b.value_);
    }

    std::string to_string() const { return infinite_ ? "inf" : std::to_string(value_); }

private:
    Valuation() : value_(0), infinite_(true) {}
    long value_;
    bool infinite_;
};

inline Valuation padic_valuation(const Rational& q, const Integer& p) {
    if (!is_prime(p)) throw InputError("padic_valuation: " + p.get_str() + " is not prime");
    if (sgn(q) == 0) return Valuation::infinity();
    long v = 0;
    if (q.get_num() != 1 && q.get_num() != -1) v += int_valuation(q.get_num(), p);
    if (q.get_den() != 1) v -= int_valuation(q.get_den(), p);
    return Valuation(v);
}

// n/d in canonical form.
inline Rational ratio(const Integer& n, const Integer& d) {
    if (d == 0) throw InputError("ratio: zero denominator");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

inline Rational rational_pow(const Rational& q, long e) {
    Rational r;
    if (e >= 0) {
        mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), static_cast<unsigned long>(e));
    } else {
        if (sgn(q) == 0) throw InputError("rational_pow: zero to a negative power");
        mpz_pow_ui(r.get_num_mpz_t(), q.get_den_mpz_t(), static_cast<unsigned long>(-e));
        mpz_pow_ui(r.get_den_mpz_t(), q.get_num_mpz_t(), static_cast<unsigned long>(-e));
    }
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational parse_rational(const std::string& s) {
    Rational r;
    if (s.empty() || r.set_str(s, 10) != 0 || r.get_den() == 0)
        throw InputError("not a rational: '" + s + "'");
    r.canonicalize();
    return r;
}

// Smallest integer >= q.
inline Integer ceil(const Rational& q) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline Integer floor(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

} // namespace gheight
