#pragma once

#include <algorithm>
#include <map>
#include <ostream>
#include <string>
#include <type_traits>
#include <vector>

#include "gheight/series/multipoly.hpp"

namespace gheight {

// Power series in nvars variables truncated at total degree order.
// No zero coefficients are stored.
template <CoefficientField F>
class MultiSeries {
public:
    using E = typename F::element_type;
    using Terms = std::map<Exponent, E, GradedLex>;

    MultiSeries() = default;
    MultiSeries(F field, int nvars, int order) : field_(std::move(field)), nvars_(nvars), order_(order) {
        if (nvars < 1) throw InputError("MultiSeries: need at least one variable");
        if (order < 0) throw InputError("MultiSeries: negative truncation order");
    }

    static MultiSeries constant(const F& field, int nvars, int order, const E& c) {
        MultiSeries s(field, nvars, order);
        s.add_term(Exponent(static_cast<size_t>(nvars), 0), c);
        return s;
    }
    static MultiSeries variable(const F& field, int nvars, int order, int i) {
        MultiSeries s(field, nvars, order);
        Exponent e(static_cast<size_t>(nvars), 0);
        e.at(static_cast<size_t>(i)) = 1;
        s.add_term(e, field.one());
        return s;
    }
    static MultiSeries from_poly(const MultiPoly<F>& p, int order) {
        MultiSeries s(p.field(), p.nvars(), order);
        for (const auto& [e, c] : p.terms()) s.add_term(e, c);
        return s;
    }

    const F& field() const { return field_; }
    int nvars() const { return nvars_; }
    int order() const { return order_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    E coeff(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? field_.zero() : it->second;
    }
    E constant_term() const { return coeff(Exponent(static_cast<size_t>(nvars_), 0)); }

    // Adds c*z^e; terms beyond the truncation order are dropped.
    void add_term(const Exponent& e, const E& c) {
        if (static_cast<int>(e.size()) != nvars_) throw InputError("MultiSeries: exponent length mismatch");
        if (total_degree(e) > order_ || gheight::is_zero(c)) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
            return;
        }
        it->second += c;
        if (gheight::is_zero(it->second)) terms_.erase(it);
    }
    void set(const Exponent& e, const E& c) {
        terms_.erase(e);
        add_term(e, c);
    }

    // Lowest total degree present, or order+1 for the zero series.
    int valuation() const { return terms_.empty() ? order_ + 1 : total_degree(terms_.begin()->first); }

    MultiSeries truncate(int order) const {
        MultiSeries r(field_, nvars_, std::min(order, order_));
        for (const auto& [e, c] : terms_)
            if (total_degree(e) <= r.order_) r.terms_.emplace(e, c);
        return r;
    }

    friend MultiSeries operator+(const MultiSeries& a, const MultiSeries& b) {
        check(a, b);
        MultiSeries r = a.truncate(b.order_);
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend MultiSeries operator-(const MultiSeries& a) {
        MultiSeries r = a;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }
    friend MultiSeries operator-(const MultiSeries& a, const MultiSeries& b) { return a + (-b); }

    friend MultiSeries operator*(const MultiSeries& a, const MultiSeries& b) {
        check(a, b);
        int n = std::min(a.order_, b.order_);
        MultiSeries r(a.field_, a.nvars_, n);
        Exponent e(static_cast<size_t>(a.nvars_));
        if constexpr (std::is_same_v<F, RationalField>) {
            // integer numerators over a common denominator: one gcd per output term
            // instead of one per product
            auto numerators = [n](const MultiSeries& s, Integer& den) {
                den = 1;
                for (const auto& [ex, c] : s.terms_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
                std::vector<std::pair<const Exponent*, Integer>> out;
                for (const auto& [ex, c] : s.terms_) {
                    if (total_degree(ex) > n) break;
                    out.emplace_back(&ex, Integer(c.get_num() * (den / c.get_den())));
                }
                return out;
            };
            Integer da, db;
            auto na = numerators(a, da), nb = numerators(b, db);
            std::map<Exponent, Integer, GradedLex> acc;
            for (const auto& [ea, ca] : na) {
                int d = total_degree(*ea);
                for (const auto& [eb, cb] : nb) {
                    if (d + total_degree(*eb) > n) break;
                    for (size_t i = 0; i < e.size(); ++i) e[i] = (*ea)[i] + (*eb)[i];
                    auto& slot = acc[e];
                    mpz_addmul(slot.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
                }
            }
            Integer dd = da * db;
            for (auto& [ex, v] : acc) {
                if (sgn(v) == 0) continue;
                Rational q(v, dd);
                q.canonicalize();
                r.terms_.emplace_hint(r.terms_.end(), ex, std::move(q));
            }
            return r;
        }
        for (const auto& [ea, ca] : a.terms_) {
            int da = total_degree(ea);
            if (da > n) break;
            for (const auto& [eb, cb] : b.terms_) {
                if (da + total_degree(eb) > n) break;   // graded order
                for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }
    friend MultiSeries operator*(const E& s, const MultiSeries& a) {
        MultiSeries r(a.field_, a.nvars_, a.order_);
        if (gheight::is_zero(s)) return r;
        for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, s * c);
        return r;
    }
    MultiSeries scalar_mul(const E& s) const { return s * *this; }

    friend bool operator==(const MultiSeries& a, const MultiSeries& b) {
        return a.nvars_ == b.nvars_ && a.order_ == b.order_ && a.terms_ == b.terms_;
    }

    // Equality of the common truncation.
    bool agrees_with(const MultiSeries& o, int order) const {
        return truncate(order).terms_ == o.truncate(order).terms_;
    }

    // d/dz_var; the result has order one less.
    MultiSeries derivative(int var) const {
        if (var < 0 || var >= nvars_) throw InputError("MultiSeries: derivative variable out of range");
        MultiSeries r(field_, nvars_, std::max(order_ - 1, 0));
        for (const auto& [e, c] : terms_) {
            int k = e[static_cast<size_t>(var)];
            if (k == 0) continue;
            Exponent f = e;
            --f[static_cast<size_t>(var)];
            r.add_term(f, scale(c, Rational(k)));
        }
        return r;
    }

    // Multiplies by the monomial z^m (truncating).
    MultiSeries shift(const Exponent& m) const {
        MultiSeries r(field_, nvars_, order_);
        for (const auto& [e, c] : terms_) {
            Exponent f = e;
            for (size_t i = 0; i < f.size(); ++i) f[i] += m[i];
            r.add_term(f, c);
        }
        return r;
    }

    MultiSeries pow(int k) const {
        MultiSeries r = constant(field_, nvars_, order_, field_.one());
        for (int i = 0; i < k; ++i) r = r * *this;
        return r;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0 + O(" + std::to_string(order_ + 1) + ")";
        std::string s;
        auto names = default_names(nvars_);
        for (const auto& [e, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += "(" + coeff_to_string(c) + ")*" + monomial_string(e, names);
        }
        return s + " + O(" + std::to_string(order_ + 1) + ")";
    }

private:
    static void check(const MultiSeries& a, const MultiSeries& b) {
        if (a.nvars_ != b.nvars_) throw InputError("MultiSeries: variable count mismatch (" + std::to_string(a.nvars_) +
                                                   " vs " + std::to_string(b.nvars_) + ")");
        if (!(a.field_ == b.field_)) throw InputError("MultiSeries: coefficient field mismatch");
    }

    F field_;
    int nvars_ = 1;
    int order_ = 0;
    Terms terms_;
};

// Univariate truncated series, stored densely: coeffs()[n] is the t^n term.
template <CoefficientField F>
class UniSeries {
public:
    using E = typename F::element_type;

    UniSeries() = default;
    UniSeries(F field, int order) : field_(std::move(field)), order_(order), c_(static_cast<size_t>(order + 1), field_.zero()) {
        if (order < 0) throw InputError("UniSeries: negative truncation order");
    }
    UniSeries(F field, std::vector<E> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
        if (c_.empty()) throw InputError("UniSeries: empty coefficient list");
        order_ = static_cast<int>(c_.size()) - 1;
    }

    const F& field() const { return field_; }
    int order() const { return order_; }
    const std::vector<E>& coeffs() const { return c_; }
    const E& coeff(int n) const { return c_.at(static_cast<size_t>(n)); }
    void set(int n, const E& v) { c_.at(static_cast<size_t>(n)) = v; }

    bool is_zero() const {
        for (const auto& c : c_)
            if (!gheight::is_zero(c)) return false;
        return true;
    }

    UniSeries truncate(int order) const {
        int n = std::min(order, order_);
        return UniSeries(field_, std::vector<E>(c_.begin(), c_.begin() + n + 1));
    }

    friend UniSeries operator+(const UniSeries& a, const UniSeries& b) {
        int n = std::min(a.order_, b.order_);
        UniSeries r(a.field_, n);
        for (int i = 0; i <= n; ++i) r.c_[static_cast<size_t>(i)] = a.coeff(i) + b.coeff(i);
        return r;
    }
    friend UniSeries operator-(const UniSeries& a, const UniSeries& b) {
        int n = std::min(a.order_, b.order_);
        UniSeries r(a.field_, n);
        for (int i = 0; i <= n; ++i) r.c_[static_cast<size_t>(i)] = a.coeff(i) - b.coeff(i);
        return r;
    }
    friend UniSeries operator*(const UniSeries& a, const UniSeries& b) {
        int n = std::min(a.order_, b.order_);
        UniSeries r(a.field_, n);
        for (int i = 0; i <= n; ++i) {
            if (gheight::is_zero(a.coeff(i))) continue;
            for (int j = 0; i + j <= n; ++j) r.c_[static_cast<size_t>(i + j)] += a.coeff(i) * b.coeff(j);
        }
        return r;
    }
    friend UniSeries operator*(const E& s, const UniSeries& a) {
        UniSeries r = a;
        for (auto& c : r.c_) c = s * c;
        return r;
    }
    friend bool operator==(const UniSeries& a, const UniSeries& b) { return a.order_ == b.order_ && a.c_ == b.c_; }

    // Evaluates the truncation at x.
    E evaluate(const E& x) const {
        E s = field_.zero();
        for (size_t i = c_.size(); i-- > 0;) s = s * x + c_[i];
        return s;
    }

    std::string to_string() const {
        std::string s;
        for (int n = 0; n <= order_; ++n) {
            if (gheight::is_zero(coeff(n))) continue;
            if (!s.empty()) s += " + ";
            s += "(" + coeff_to_string(coeff(n)) + ")";
            if (n) s += "*t^" + std::to_string(n);
        }
        if (s.empty()) s = "0";
        return s + " + O(t^" + std::to_string(order_ + 1) + ")";
    }

private:
    F field_;
    int order_ = 0;
    std::vector<E> c_;
};

template <CoefficientField F>
std::ostream& operator<<(std::ostream& os, const MultiSeries<F>& s) { return os << s.to_string(); }
template <CoefficientField F>
std::ostream& operator<<(std::ostream& os, const UniSeries<F>& s) { return os << s.to_string(); }

} // namespace gheight
