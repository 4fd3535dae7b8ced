#pragma once

#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "gheight/arith/factor.hpp"
#include "gheight/arith/upoly.hpp"

namespace gheight {

inline constexpr int kMaxFieldDegree = 8;

class NumberFieldElement;

// Q viewed as a coefficient field. Elements are plain Rationals.
struct RationalField {
    using element_type = Rational;

    Rational zero() const { return 0; }
    Rational one() const { return 1; }
    Rational from_rational(const Rational& q) const { return q; }
    int degree() const { return 1; }
    UPoly minpoly() const { return UPoly::x(); }
    bool operator==(const RationalField&) const = default;
};

// K = Q[x]/(m(x)) with m monic irreducible of degree <= 8.
// Cheap to copy: the definition is shared.
class NumberField {
public:
    using element_type = NumberFieldElement;

    // Q, with minimal polynomial x.
    NumberField() : data_(rationals_data()) {}

    explicit NumberField(const UPoly& minpoly) {
        if (minpoly.degree() < 1) throw InputError("NumberField: minimal polynomial must have degree >= 1");
        if (minpoly.leading() != 1) throw InputError("NumberField: minimal polynomial must be monic");
        if (minpoly.degree() > kMaxFieldDegree)
            throw UnsupportedError("NumberField: degree " + std::to_string(minpoly.degree()) + " exceeds " +
                                   std::to_string(kMaxFieldDegree));
        if (!is_irreducible_over_q(minpoly))
            throw InputError("NumberField: minimal polynomial " + minpoly.to_string() + " is reducible over Q");
        auto d = std::make_shared<Data>();
        d->minpoly = minpoly;
        d->irreducibility_verified = true;
        data_ = std::move(d);
    }

    static NumberField rationals() { return NumberField(); }

    int degree() const { return data_->minpoly.degree(); }
    const UPoly& minpoly() const { return data_->minpoly; }
    bool irreducibility_verified() const { return data_->irreducibility_verified; }
    bool is_rationals() const { return degree() == 1; }

    friend bool operator==(const NumberField& a, const NumberField& b) {
        return a.data_ == b.data_ || a.data_->minpoly == b.data_->minpoly;
    }

    inline NumberFieldElement zero() const;
    inline NumberFieldElement one() const;
    inline NumberFieldElement generator() const;
    inline NumberFieldElement from_rational(const Rational& q) const;
    inline NumberFieldElement element(std::vector<Rational> coords) const;
    inline NumberFieldElement from_poly(const UPoly& p) const;

    // "c0,c1,...,cd" coefficient list of the minimal polynomial.
    std::string header() const {
        std::string s;
        for (int i = 0; i <= degree(); ++i) {
            if (i) s += ",";
            s += minpoly().coeff(i).get_str();
        }
        return s;
    }

private:
    struct Data {
        UPoly minpoly;
        bool irreducibility_verified = false;
    };
    static std::shared_ptr<const Data> rationals_data() {
        static const std::shared_ptr<const Data> q = [] {
            auto d = std::make_shared<Data>();
            d->minpoly = UPoly::x();
            d->irreducibility_verified = true;
            return d;
        }();
        return q;
    }
    std::shared_ptr<const Data> data_;
};

// Element of a NumberField as coordinates in the power basis 1, a, ..., a^{d-1}.
class NumberFieldElement {
public:
    NumberFieldElement() = default;

    NumberFieldElement(NumberField field, std::vector<Rational> coords)
        : field_(std::move(field)), coords_(std::move(coords)) {
        for (auto& c : coords_) c.canonicalize();
        if (static_cast<int>(coords_.size()) > field_.degree()) coords_ = reduce(UPoly(coords_)).coords_;
        coords_.resize(static_cast<size_t>(field_.degree()));
    }

    const NumberField& field() const { return field_; }
    const std::vector<Rational>& coords() const { return coords_; }
    UPoly as_poly() const { return UPoly(coords_); }

    bool is_zero() const {
        for (const auto& c : coords_)
            if (sgn(c) != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (size_t i = 1; i < coords_.size(); ++i)
            if (sgn(coords_[i]) != 0) return false;
        return true;
    }
    Rational to_rational() const {
        if (!is_rational()) throw InputError("NumberFieldElement: not a rational number");
        return coords_.empty() ? Rational(0) : coords_[0];
    }

    friend NumberFieldElement operator+(const NumberFieldElement& a, const NumberFieldElement& b) {
        check_same(a, b);
        NumberFieldElement r = a;
        for (size_t i = 0; i < r.coords_.size(); ++i) r.coords_[i] += b.coords_[i];
        return r;
    }
    friend NumberFieldElement operator-(const NumberFieldElement& a, const NumberFieldElement& b) {
        check_same(a, b);
        NumberFieldElement r = a;
        for (size_t i = 0; i < r.coords_.size(); ++i) r.coords_[i] -= b.coords_[i];
        return r;
    }
    friend NumberFieldElement operator-(const NumberFieldElement& a) {
        NumberFieldElement r = a;
        for (auto& c : r.coords_) c = -c;
        return r;
    }
    friend NumberFieldElement operator*(const NumberFieldElement& a, const NumberFieldElement& b) {
        check_same(a, b);
        if (a.field_.degree() == 1) return NumberFieldElement(a.field_, {a.coords_[0] * b.coords_[0]});
        return a.reduce(a.as_poly() * b.as_poly());
    }
    friend NumberFieldElement operator*(const Rational& s, const NumberFieldElement& a) {
        NumberFieldElement r = a;
        for (auto& c : r.coords_) c *= s;
        return r;
    }
    friend NumberFieldElement operator/(const NumberFieldElement& a, const NumberFieldElement& b) {
        return a * b.inverse();
    }
    NumberFieldElement& operator+=(const NumberFieldElement& o) { return *this = *this + o; }
    NumberFieldElement& operator-=(const NumberFieldElement& o) { return *this = *this - o; }
    NumberFieldElement& operator*=(const NumberFieldElement& o) { return *this = *this * o; }

    friend bool operator==(const NumberFieldElement& a, const NumberFieldElement& b) {
        return a.field_ == b.field_ && a.coords_ == b.coords_;
    }

    NumberFieldElement inverse() const {
        if (is_zero()) throw InputError("NumberFieldElement: inverse of zero");
        if (field_.degree() == 1) return NumberFieldElement(field_, {1 / coords_[0]});
        auto [g, s, t] = xgcd(as_poly(), field_.minpoly());
        return reduce(s);
    }

    NumberFieldElement pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        NumberFieldElement r = field_.one(), b = *this;
        while (e > 0) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    // N_{K/Q}(x) = Res(m, x(a)) for monic m.
    Rational norm() const {
        if (field_.degree() == 1) return coords_[0];
        return resultant(field_.minpoly(), as_poly());
    }

    Rational trace() const {
        // trace of multiplication-by-x on the power basis
        Rational t = 0;
        NumberFieldElement basis = field_.one();
        for (int j = 0; j < field_.degree(); ++j) {
            t += (*this * basis).coords_[static_cast<size_t>(j)];
            basis *= field_.generator();
        }
        return t;
    }

    // Column j holds the coordinates of x * a^j.
    std::vector<std::vector<Rational>> multiplication_matrix() const {
        int d = field_.degree();
        std::vector<std::vector<Rational>> m(static_cast<size_t>(d), std::vector<Rational>(static_cast<size_t>(d)));
        NumberFieldElement basis = field_.one();
        for (int j = 0; j < d; ++j) {
            NumberFieldElement col = *this * basis;
            for (int i = 0; i < d; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = col.coords_[static_cast<size_t>(i)];
            basis *= field_.generator();
        }
        return m;
    }

    std::string to_string() const {
        std::string s;
        for (size_t i = 0; i < coords_.size(); ++i) {
            if (i) s += ",";
            s += coords_[i].get_str();
        }
        return s;
    }

    // Human-readable, e.g. "1 - 1/2*a".
    std::string pretty(const std::string& gen = "a") const { return as_poly().to_string(gen); }

private:
    static void check_same(const NumberFieldElement& a, const NumberFieldElement& b) {
        if (!(a.field_ == b.field_)) throw InputError("NumberFieldElement: field mismatch");
    }
    NumberFieldElement reduce(const UPoly& p) const {
        UPoly r = p % field_.minpoly();
        std::vector<Rational> c = r.coeffs();
        c.resize(static_cast<size_t>(field_.degree()));
        NumberFieldElement out;
        out.field_ = field_;
        out.coords_ = std::move(c);
        return out;
    }

    NumberField field_;
    std::vector<Rational> coords_;
};

inline NumberFieldElement NumberField::zero() const { return NumberFieldElement(*this, {}); }
inline NumberFieldElement NumberField::one() const { return NumberFieldElement(*this, {1}); }
inline NumberFieldElement NumberField::generator() const {
    if (degree() == 1) return NumberFieldElement(*this, {-minpoly().coeff(0)});
    return NumberFieldElement(*this, {0, 1});
}
inline NumberFieldElement NumberField::from_rational(const Rational& q) const { return NumberFieldElement(*this, {q}); }
inline NumberFieldElement NumberField::element(std::vector<Rational> coords) const {
    if (static_cast<int>(coords.size()) > degree())
        throw InputError("NumberField::element: " + std::to_string(coords.size()) + " coordinates for a degree " +
                         std::to_string(degree()) + " field");
    return NumberFieldElement(*this, std::move(coords));
}
inline NumberFieldElement NumberField::from_poly(const UPoly& p) const {
    UPoly r = p % minpoly();
    return NumberFieldElement(*this, r.coeffs());
}

// Uniform coefficient helpers for generic code over RationalField and NumberField.
inline bool is_zero(const Rational& a) { return sgn(a) == 0; }
inline bool is_zero(const NumberFieldElement& a) { return a.is_zero(); }
inline Rational scale(const Rational& a, const Rational& s) { return a * s; }
inline NumberFieldElement scale(const NumberFieldElement& a, const Rational& s) { return s * a; }
inline Rational inverse(const Rational& a) {
    if (sgn(a) == 0) throw InputError("inverse of zero");
    return 1 / a;
}
inline NumberFieldElement inverse(const NumberFieldElement& a) { return a.inverse(); }
inline std::string coeff_to_string(const Rational& a) { return a.get_str(); }
inline std::string coeff_to_string(const NumberFieldElement& a) { return a.to_string(); }

template <class F>
concept CoefficientField = requires(const F& f, const typename F::element_type& a, const Rational& q) {
    typename F::element_type;
    { f.zero() } -> std::convertible_to<typename F::element_type>;
    { f.one() } -> std::convertible_to<typename F::element_type>;
    { f.from_rational(q) } -> std::convertible_to<typename F::element_type>;
    { f.degree() } -> std::convertible_to<int>;
    { is_zero(a) } -> std::convertible_to<bool>;
    { f == f } -> std::convertible_to<bool>;
};

// Parses "c0,c1,...,cd" into a minimal polynomial; "0,1" is Q.
inline UPoly parse_minpoly(const std::string& s) {
    std::vector<Rational> c;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) c.push_back(parse_rational(tok));
    if (c.size() < 2) throw InputError("field: need at least two coefficients, got '" + s + "'");
    return UPoly(std::move(c));
}

inline NumberFieldElement parse_element(const NumberField& k, const std::string& s) {
    std::vector<Rational> c;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) c.push_back(parse_rational(tok));
    return k.element(std::move(c));
}

} // namespace gheight
