#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gheight/arith/factor.hpp"
#include "gheight/arith/interval.hpp"
#include "gheight/arith/modp.hpp"
#include "gheight/arith/number_field.hpp"
#include "gheight/arith/roots.hpp"

namespace gheight {

// Monic integral model of a field: beta = D*alpha has minimal polynomial M
// with integer coefficients.
struct IntegralModel {
    Integer scale;
    std::vector<Integer> minpoly;
};

inline IntegralModel integral_model(const NumberField& K) {
    const UPoly& m = K.minpoly();
    int d = m.degree();
    Integer D = 1;
    for (const auto& c : m.coeffs()) D = lcm(D, Integer(c.get_den()));
    std::vector<Integer> M(static_cast<size_t>(d) + 1);
    for (int i = 0; i <= d; ++i) {
        Rational c = m.coeff(i) * Rational(pow(D, static_cast<unsigned long>(d - i)));
        M[static_cast<size_t>(i)] = c.get_num();
    }
    return {D, M};
}

class Place {
public:
    enum class Kind { Archimedean, Finite };

    static Place infinity() { return archimedean(NumberField(), 0, true); }
    static Place prime(const Integer& p) {
        if (!is_prime(p)) throw InputError("Place: " + p.get_str() + " is not prime");
        Place v;
        v.kind_ = Kind::Finite;
        v.prime_ = p;
        v.residue_factor_ = {0, 1};
        return v;
    }
    static Place archimedean(NumberField K, int index, bool real) {
        Place v;
        v.kind_ = Kind::Archimedean;
        v.field_ = std::move(K);
        v.index_ = index;
        v.real_ = real;
        return v;
    }
    static Place finite(NumberField K, Integer p, modp::Poly phi, long e, bool regular) {
        Place v;
        v.kind_ = Kind::Finite;
        v.field_ = std::move(K);
        v.prime_ = std::move(p);
        v.residue_factor_ = std::move(phi);
        v.ramification_ = e;
        v.dedekind_regular_ = regular;
        return v;
    }

    Kind kind() const { return kind_; }
    bool is_archimedean() const { return kind_ == Kind::Archimedean; }
    bool is_finite() const { return kind_ == Kind::Finite; }
    const NumberField& field() const { return field_; }
    int index() const { return index_; }
    bool is_real() const { return real_; }
    const Integer& prime() const { return prime_; }
    // Factor of the integral model's minimal polynomial mod p, monic.
    const modp::Poly& residue_factor() const { return residue_factor_; }
    long ramification() const { return ramification_; }
    int residue_degree() const { return modp::degree(residue_factor_); }
    // False when Dedekind's criterion fails, i.e. this factor may cover
    // several primes of the maximal order.
    bool dedekind_regular() const { return dedekind_regular_; }

    int local_degree() const {
        if (is_archimedean()) return real_ ? 1 : 2;
        return static_cast<int>(ramification_) * residue_degree();
    }

    std::string label() const {
        if (field_.is_rationals()) return is_archimedean() ? "inf" : prime_.get_str();
        if (is_archimedean()) return "inf" + std::to_string(index_);
        std::string s = prime_.get_str() + "[";
        for (size_t i = 0; i < residue_factor_.size(); ++i) {
            if (i) s += ",";
            s += residue_factor_[i].get_str();
        }
        return s + "]";
    }

    bool operator==(const Place& o) const {
        return kind_ == o.kind_ && field_ == o.field_ && index_ == o.index_ && prime_ == o.prime_ &&
               residue_factor_ == o.residue_factor_;
    }

private:
    Place() = default;
    Kind kind_ = Kind::Archimedean;
    NumberField field_;
    int index_ = 0;
    bool real_ = true;
    Integer prime_ = 0;
    modp::Poly residue_factor_;
    long ramification_ = 1;
    bool dedekind_regular_ = true;
};

// Real embeddings first (ascending), then one place per conjugate pair.
inline std::vector<Place> archimedean_places(const NumberField& K) {
    if (K.is_rationals()) return {Place::infinity()};
    auto roots = isolate_roots(K.minpoly(), 64);
    std::vector<Place> out;
    int i = 0;
    for (const auto& r : roots) {
        if (!r.real && r.approx_im < 0) continue;
        out.push_back(Place::archimedean(K, i++, r.real));
    }
    return out;
}

inline std::vector<Place> places_above(const NumberField& K, const Integer& p) {
    if (!is_prime(p)) throw InputError("places_above: " + p.get_str() + " is not prime");
    if (K.is_rationals()) return {Place::prime(p)};
    auto model = integral_model(K);
    auto facs = modp::factor_mod_p(model.minpoly, p);
    // Dedekind: F = (M - g*h)/p with g = prod phi, h = prod phi^{e-1}.
    modp::Poly g = {1}, h = {1};
    Integer big = pow(p, 4);
    for (const auto& f : facs) {
        g = modp::mul(g, f.factor, big);
        for (long j = 1; j < f.exponent; ++j) h = modp::mul(h, f.factor, big);
    }
    std::vector<Integer> gh(g.size() + h.size());
    for (size_t i = 0; i < g.size(); ++i)
        for (size_t j = 0; j < h.size(); ++j) gh[i + j] += g[i] * h[j];
    modp::Poly F;
    for (size_t i = 0; i < std::max(gh.size(), model.minpoly.size()); ++i) {
        Integer a = i < model.minpoly.size() ? model.minpoly[i] : Integer(0);
        Integer b = i < gh.size() ? gh[i] : Integer(0);
        F.push_back((a - b) / p);
    }
    F = modp::reduce(F, p);
    std::vector<Place> out;
    for (const auto& f : facs) {
        bool regular = f.exponent == 1 || modp::rem(F, f.factor, p).size() > 0;
        out.push_back(Place::finite(K, p, f.factor, f.exponent, regular));
    }
    return out;
}

namespace detail {

// Integer lift of the p-adic factor of M belonging to v, modulo p^k.
inline UPoly padic_factor(const Place& v, const std::vector<Integer>& M, int k) {
    const Integer& p = v.prime();
    auto facs = modp::factor_mod_p(M, p);
    modp::Poly mine = {1}, rest = {1};
    for (const auto& f : facs) {
        modp::Poly pw = {1};
        for (long j = 0; j < f.exponent; ++j) pw = modp::mul(pw, f.factor, p);
        if (f.factor == v.residue_factor()) mine = pw;
        else rest = modp::mul(rest, pw, p);
    }
    modp::Poly lifted = mine;
    if (modp::degree(rest) > 0) lifted = modp::multifactor_lift(M, {mine, rest}, p, k)[0];
    else if (k > 1) lifted = modp::reduce(M, pow(p, static_cast<unsigned long>(k)));
    return from_integers(lifted);
}

} // namespace detail

// v_p of the local norm N_{K_v/Q_p}(x); |x|_v = p^{-value/[K:Q]}.
inline Valuation local_valuation(const NumberFieldElement& x, const Place& v) {
    if (!v.is_finite()) throw InputError("local_valuation: archimedean place");
    if (x.is_zero()) return Valuation::infinity();
    if (x.field().is_rationals()) return padic_valuation(x.to_rational(), v.prime());
    if (!(x.field() == v.field())) throw InputError("local_valuation: element and place over different fields");
    auto model = integral_model(x.field());
    // x = A(beta) with A_i = c_i / D^i.
    std::vector<Rational> a;
    Rational Dinv = Rational(1) / Rational(model.scale);
    Rational s = 1;
    for (const auto& c : x.coords()) {
        a.push_back(c * s);
        s *= Dinv;
    }
    UPoly A(a);
    Integer den = 1;
    for (const auto& c : A.coeffs()) den = lcm(den, Integer(c.get_den()));
    UPoly Aint = Rational(den) * A;
    const Integer& p = v.prime();
    for (int k = 8;; k *= 2) {
        UPoly Phi = detail::padic_factor(v, model.minpoly, k);
        Rational R = resultant(Phi, Aint);
        if (sgn(R) != 0) {
            long val = padic_valuation(R, p).value();
            if (val < k) return Valuation(val - static_cast<long>(Phi.degree()) * int_valuation(den, p));
        }
        if (k > 4096) throw PrecisionError("local_valuation: p-adic precision exhausted");
    }
}

// |x|_v as a rigorous object. Finite places give p^exponent exactly.
struct AbsValue {
    bool zero = false;
    Integer prime = 0;                 // finite places
    Rational exponent = 0;             // |x|_v = prime^exponent
    std::optional<Rational> exact;     // exact rational value when known
    Interval enclosure{Rational(0), 64};

    bool is_finite_place() const { return prime != 0; }

    Interval logarithm(long precision) const {
        if (zero) throw InputError("AbsValue: log of zero");
        if (is_finite_place()) return Interval(exponent, precision) * Interval::log_of(prime, precision);
        if (exact) return log(Interval(*exact, precision));
        return log(enclosure.with_precision(precision));
    }

    std::string to_string(int digits = 12) const {
        if (zero) return "0";
        if (is_finite_place()) {
            if (sgn(exponent) == 0) return "1";
            return prime.get_str() + "^" + exponent.get_str();
        }
        if (exact) return exact->get_str();
        return enclosure.to_string(digits);
    }
};

namespace detail {

inline ComplexInterval eval_at(const UPoly& f, const ComplexInterval& z, long prec) {
    ComplexInterval r{Interval(Rational(0), prec), Interval(Rational(0), prec)};
    const auto& c = f.coeffs();
    for (size_t i = c.size(); i-- > 0;) {
        r = r * z;
        r.re = r.re + Interval(c[i], prec);
    }
    return r;
}

} // namespace detail

inline AbsValue abs_value(const NumberFieldElement& x, const Place& v, long precision) {
    AbsValue out;
    out.enclosure = Interval(Rational(0), precision);
    if (x.is_zero()) {
        out.zero = true;
        out.exact = Rational(0);
        if (v.is_finite()) out.prime = v.prime();
        return out;
    }
    const NumberField& K = x.field();
    if (!K.is_rationals() && !(K == v.field())) throw InputError("abs_value: element and place over different fields");
    int d = K.degree();
    if (v.is_finite()) {
        out.prime = v.prime();
        out.exponent = ratio(-local_valuation(x, v).value(), d);
        out.enclosure = exp(Interval(out.exponent, precision) * Interval::log_of(v.prime(), precision));
        if (out.exponent.get_den() == 1) {
            long e = out.exponent.get_num().get_si();
            out.exact = rational_pow(Rational(v.prime()), e);
        }
        return out;
    }
    if (K.is_rationals()) {
        out.exact = ::abs(x.to_rational());
        out.enclosure = Interval(*out.exact, precision);
        return out;
    }
    Rational weight = ratio(v.local_degree(), d);
    for (long bits = precision;; bits *= 2) {
        if (bits > 1L << 16) throw PrecisionError("abs_value: could not separate value from zero");
        auto roots = isolate_roots(K.minpoly(), bits);
        std::vector<const RootEnclosure*> ordered;
        for (const auto& r : roots)
            if (r.real || r.approx_im > 0) ordered.push_back(&r);
        const auto& root = *ordered.at(static_cast<size_t>(v.index()));
        Interval a = detail::eval_at(x.as_poly(), root.box, bits).abs();
        if (!a.is_positive()) continue;
        out.enclosure = exp(Interval(weight, bits) * log(a)).with_precision(precision);
        return out;
    }
}

inline AbsValue abs_value(const Rational& q, const Place& v, long precision) {
    return abs_value(NumberField().from_rational(q), v, precision);
}

// Complex embedding sigma_v, with the root box refined on demand until a
// nonzero element is separated from zero.
class Embedding {
public:
    Embedding(const Place& v, long precision) : v_(v), bits_(precision) {
        if (!v.is_archimedean()) throw InputError("Embedding: finite place");
        refresh();
    }

    const Place& place() const { return v_; }
    long precision() const { return bits_; }
    // n_v / d
    Rational weight() const { return ratio(v_.local_degree(), v_.field().degree()); }

    ComplexInterval operator()(const NumberFieldElement& x) const {
        for (;;) {
            ComplexInterval z = detail::eval_at(x.as_poly(), box_, bits_);
            if (x.is_zero() || z.abs_squared().is_positive()) return z;
            if (bits_ > 1L << 16) throw PrecisionError("Embedding: could not separate value from zero");
            bits_ *= 2;
            refresh();
        }
    }
    ComplexInterval operator()(const Rational& q) const {
        return {Interval(q, bits_), Interval(Rational(0), bits_)};
    }

private:
    void refresh() const {
        const NumberField& K = v_.field();
        if (K.is_rationals()) {
            box_ = {Interval(Rational(0), bits_), Interval(Rational(0), bits_)};
            return;
        }
        auto roots = isolate_roots(K.minpoly(), bits_);
        std::vector<const RootEnclosure*> ordered;
        for (const auto& r : roots)
            if (r.real || r.approx_im > 0) ordered.push_back(&r);
        box_ = ordered.at(static_cast<size_t>(v_.index()))->box;
    }

    Place v_;
    mutable long bits_;
    mutable ComplexInterval box_;
};

// Primes outside of which |x|_v = 1 at every finite place.
inline std::vector<Integer> support_primes(const NumberFieldElement& x) {
    std::set<Integer> ps;
    if (x.is_zero()) return {};
    for (const auto& c : x.coords())
        for (const auto& p : prime_divisors(Integer(c.get_den()))) ps.insert(p);
    for (const auto& c : x.field().minpoly().coeffs())
        for (const auto& p : prime_divisors(Integer(c.get_den()))) ps.insert(p);
    Rational n = x.norm();
    for (const auto& p : prime_divisors(abs(Integer(n.get_num())))) ps.insert(p);
    for (const auto& p : prime_divisors(Integer(n.get_den()))) ps.insert(p);
    return {ps.begin(), ps.end()};
}

struct WeilHeight {
    Interval value;
    std::optional<Integer> log_of;   // h = log(log_of) exactly, for rationals
    std::string to_string(int digits = 12) const {
        if (log_of) return "log(" + log_of->get_str() + ")";
        return value.to_string(digits);
    }
};

inline WeilHeight weil_height(const NumberFieldElement& x, long precision = 128) {
    if (x.is_zero()) return {Interval(Rational(0), precision), Integer(1)};
    if (x.field().is_rationals()) {
        Rational q = x.to_rational();
        Integer m = std::max(abs(Integer(q.get_num())), Integer(q.get_den()));
        return {Interval::log_of(m, precision), m};
    }
    const NumberField& K = x.field();
    Interval total(Rational(0), precision);
    for (const auto& v : archimedean_places(K)) total = total + log_plus(abs_value(x, v, precision).enclosure);
    for (const auto& p : support_primes(x)) {
        Rational e = 0;
        for (const auto& v : places_above(K, p)) {
            Rational ev = abs_value(x, v, precision).exponent;
            if (sgn(ev) > 0) e += ev;
        }
        total = total + Interval(e, precision) * Interval::log_of(p, precision);
    }
    return {total, std::nullopt};
}

inline WeilHeight weil_height(const Rational& q, long precision = 128) {
    return weil_height(NumberField().from_rational(q), precision);
}

// Sum of log|x|_v over all places: the finite part is kept as exact
// exponents of primes, the archimedean part as an interval.
struct ProductFormula {
    std::map<Integer, Rational> finite;   // prime -> sum of exponents
    Interval archimedean;
    Interval total;
    bool finite_matches_norm = false;     // prod p^{e_p * d} == 1/|N(x)|

    bool holds() const { return finite_matches_norm && total.contains_zero(); }
};

inline ProductFormula product_formula(const NumberFieldElement& x, long precision = 128) {
    if (x.is_zero()) throw InputError("product_formula: zero element");
    const NumberField& K = x.field();
    ProductFormula pf{{}, Interval(Rational(0), precision), Interval(Rational(0), precision)};
    for (const auto& v : archimedean_places(K)) pf.archimedean = pf.archimedean + abs_value(x, v, precision).logarithm(precision);
    Rational prod = 1;
    pf.total = pf.archimedean;
    for (const auto& p : support_primes(x)) {
        Rational e = 0;
        for (const auto& v : places_above(K, p)) e += abs_value(x, v, precision).exponent;
        pf.finite[p] = e;
        Rational ed = e * K.degree();
        if (ed.get_den() != 1) return pf;
        prod *= rational_pow(Rational(p), ed.get_num().get_si());
        pf.total = pf.total + Interval(e, precision) * Interval::log_of(p, precision);
    }
    pf.finite_matches_norm = prod * ::abs(x.norm()) == 1;
    return pf;
}

} // namespace gheight
