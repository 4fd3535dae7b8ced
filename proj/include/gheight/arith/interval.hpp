#pragma once

#include <cmath>
#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

#include "gheight/arith/rational.hpp"

namespace gheight {

// Closed real interval [lo, hi] with MPFR endpoints and outward rounding.
// Every operation returns an enclosure of the exact result set.
class Interval {
public:
    explicit Interval(long precision = 64) { init(precision); mpfr_set_zero(lo_, 1); mpfr_set_zero(hi_, 1); }

    Interval(const Rational& q, long precision) {
        init(precision);
        mpfr_set_q(lo_, q.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(hi_, q.get_mpq_t(), MPFR_RNDU);
    }

    Interval(const Rational& lo, const Rational& hi, long precision) {
        init(precision);
        mpfr_set_q(lo_, lo.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(hi_, hi.get_mpq_t(), MPFR_RNDU);
        if (mpfr_greater_p(lo_, hi_)) throw InputError("Interval: lo > hi");
    }

    Interval(const Interval& o) {
        init(o.precision());
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    Interval(Interval&& o) noexcept {
        init(mpfr_get_prec(o.lo_));
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }
    Interval& operator=(Interval o) noexcept {
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
        return *this;
    }
    ~Interval() {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    long precision() const { return static_cast<long>(mpfr_get_prec(lo_)); }

    double lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
    double upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }
    double midpoint() const {
        Interval t(*this);
        mpfr_add(t.lo_, lo_, hi_, MPFR_RNDN);
        mpfr_div_2ui(t.lo_, t.lo_, 1, MPFR_RNDN);
        return mpfr_get_d(t.lo_, MPFR_RNDN);
    }
    double width() const { return upper() - lower(); }

    bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
    bool contains(const Interval& o) const {
        return mpfr_lessequal_p(lo_, o.lo_) && mpfr_greaterequal_p(hi_, o.hi_);
    }
    bool is_positive() const { return mpfr_sgn(lo_) > 0; }
    bool is_negative() const { return mpfr_sgn(hi_) < 0; }

    // Certain comparisons: true only when every point of *this compares so.
    bool certainly_less(const Interval& o) const { return mpfr_less_p(hi_, o.lo_); }
    bool certainly_greater(const Interval& o) const { return mpfr_greater_p(lo_, o.hi_); }
    bool certainly_less_equal(const Interval& o) const { return mpfr_lessequal_p(hi_, o.lo_); }

    friend Interval operator+(const Interval& a, const Interval& b) {
        Interval r(std::max(a.precision(), b.precision()));
        mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }
    friend Interval operator-(const Interval& a, const Interval& b) {
        Interval r(std::max(a.precision(), b.precision()));
        mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
        mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
        return r;
    }
    friend Interval operator-(const Interval& a) {
        Interval r(a.precision());
        mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
        mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
        return r;
    }
    friend Interval operator*(const Interval& a, const Interval& b) {
        long prec = std::max(a.precision(), b.precision());
        Interval r(prec);
        mpfr_t t;
        mpfr_init2(t, prec);
        bool first = true;
        for (auto* x : {&a.lo_, &a.hi_}) {
            for (auto* y : {&b.lo_, &b.hi_}) {
                mpfr_mul(t, *x, *y, MPFR_RNDD);
                if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
                mpfr_mul(t, *x, *y, MPFR_RNDU);
                if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
                first = false;
            }
        }
        mpfr_clear(t);
        return r;
    }
    friend Interval operator/(const Interval& a, const Interval& b) {
        if (b.contains_zero()) throw PrecisionError("Interval: division by an interval containing zero");
        long prec = std::max(a.precision(), b.precision());
        Interval inv(prec);
        mpfr_ui_div(inv.lo_, 1, b.hi_, MPFR_RNDD);
        mpfr_ui_div(inv.hi_, 1, b.lo_, MPFR_RNDU);
        return a * inv;
    }

    Interval& operator+=(const Interval& o) { return *this = *this + o; }
    Interval& operator-=(const Interval& o) { return *this = *this - o; }
    Interval& operator*=(const Interval& o) { return *this = *this * o; }

    friend Interval abs(const Interval& a) {
        if (mpfr_sgn(a.lo_) >= 0) return a;
        if (mpfr_sgn(a.hi_) <= 0) return -a;
        Interval r(a.precision());
        mpfr_set_zero(r.lo_, 1);
        mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
        if (mpfr_less_p(r.hi_, a.hi_)) mpfr_set(r.hi_, a.hi_, MPFR_RNDU);
        return r;
    }

    friend Interval sqr(const Interval& a) {
        Interval b = abs(a);
        Interval r(a.precision());
        mpfr_sqr(r.lo_, b.lo_, MPFR_RNDD);
        mpfr_sqr(r.hi_, b.hi_, MPFR_RNDU);
        return r;
    }

    friend Interval sqrt(const Interval& a) {
        if (a.is_negative()) throw InputError("Interval sqrt of a negative interval");
        Interval r(a.precision());
        if (mpfr_sgn(a.lo_) <= 0) mpfr_set_zero(r.lo_, 1);
        else mpfr_sqrt(r.lo_, a.lo_, MPFR_RNDD);
        mpfr_sqrt(r.hi_, a.hi_, MPFR_RNDU);
        return r;
    }

    friend Interval log(const Interval& a) {
        if (!a.is_positive()) throw PrecisionError("Interval log: argument not certainly positive");
        Interval r(a.precision());
        mpfr_log(r.lo_, a.lo_, MPFR_RNDD);
        mpfr_log(r.hi_, a.hi_, MPFR_RNDU);
        return r;
    }

    friend Interval exp(const Interval& a) {
        Interval r(a.precision());
        mpfr_exp(r.lo_, a.lo_, MPFR_RNDD);
        mpfr_exp(r.hi_, a.hi_, MPFR_RNDU);
        return r;
    }

    friend Interval max(const Interval& a, const Interval& b) {
        Interval r(std::max(a.precision(), b.precision()));
        mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }
    friend Interval min(const Interval& a, const Interval& b) {
        Interval r(std::max(a.precision(), b.precision()));
        mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }

    // Convex hull.
    friend Interval hull(const Interval& a, const Interval& b) {
        Interval r(std::max(a.precision(), b.precision()));
        mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }

    // Widen by +-radius.
    Interval inflate(const Interval& radius) const {
        Interval r(*this);
        mpfr_sub(r.lo_, lo_, radius.hi_, MPFR_RNDD);
        mpfr_add(r.hi_, hi_, radius.hi_, MPFR_RNDU);
        return r;
    }

    Interval upper_bound() const {
        Interval r(*this);
        mpfr_set(r.lo_, hi_, MPFR_RNDD);
        return r;
    }

    Interval with_precision(long precision) const {
        Interval r(precision);
        mpfr_set(r.lo_, lo_, MPFR_RNDD);
        mpfr_set(r.hi_, hi_, MPFR_RNDU);
        return r;
    }

    // "mid +- rad" with `digits` significant digits.
    std::string to_string(int digits = 12) const {
        char* buf = nullptr;
        Interval t(*this);
        mpfr_t mid, rad;
        mpfr_init2(mid, precision());
        mpfr_init2(rad, 53);
        mpfr_add(mid, lo_, hi_, MPFR_RNDN);
        mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
        mpfr_sub(rad, hi_, lo_, MPFR_RNDU);
        mpfr_div_2ui(rad, rad, 1, MPFR_RNDU);
        mpfr_asprintf(&buf, "%.*Rg +- %.2Re", digits, mid, rad);
        std::string s(buf);
        mpfr_free_str(buf);
        mpfr_clear(mid);
        mpfr_clear(rad);
        return s;
    }

    // Midpoint only, `digits` significant digits.
    std::string mid_string(int digits = 12) const {
        char* buf = nullptr;
        mpfr_t mid;
        mpfr_init2(mid, precision());
        mpfr_add(mid, lo_, hi_, MPFR_RNDN);
        mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
        mpfr_asprintf(&buf, "%.*Rg", digits, mid);
        std::string s(buf);
        mpfr_free_str(buf);
        mpfr_clear(mid);
        return s;
    }

    static Interval log_of(const Integer& n, long precision) {
        return log(Interval(Rational(n), precision));
    }

private:
    void init(long precision) {
        mpfr_init2(lo_, std::max<long>(precision, MPFR_PREC_MIN));
        mpfr_init2(hi_, std::max<long>(precision, MPFR_PREC_MIN));
    }

    mpfr_t lo_;
    mpfr_t hi_;
};

// log max{1, t}
inline Interval log_plus(const Interval& t) {
    if (t.is_negative()) throw InputError("log_plus: negative argument");
    Interval one(Rational(1), t.precision());
    return log(max(one, t));
}

inline double log_plus(double t) {
    if (t < 0) throw InputError("log_plus: negative argument");
    return t > 1.0 ? std::log(t) : 0.0;
}

// Rectangular complex interval.
struct ComplexInterval {
    Interval re;
    Interval im;

    friend ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    ComplexInterval scaled(const Interval& s) const { return {re * s, im * s}; }

    Interval abs_squared() const { return sqr(re) + sqr(im); }
    Interval abs() const { return sqrt(abs_squared()); }
};

} // namespace gheight
