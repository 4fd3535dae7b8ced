#pragma once

#include <map>
#include <string>
#include <vector>

#include "gheight/arith/number_field.hpp"
#include "gheight/errors.hpp"

namespace gheight {

using Exponent = std::vector<int>;

inline int total_degree(const Exponent& e) {
    int d = 0;
    for (int x : e) d += x;
    return d;
}

// Graded order: total degree ascending, then lexicographically descending,
// so 1, z1, z2, z1^2, z1 z2, z2^2, ...
struct GradedLex {
    bool operator()(const Exponent& a, const Exponent& b) const {
        int da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        return a > b;
    }
};

// All exponents of length n with total degree exactly d, in GradedLex order.
inline std::vector<Exponent> exponents_of_degree(int n, int d) {
    std::vector<Exponent> out;
    Exponent e(static_cast<size_t>(n), 0);
    // recursive fill, first variable largest first
    auto rec = [&](auto& self, int i, int left) -> void {
        if (i == n - 1) {
            e[static_cast<size_t>(i)] = left;
            out.push_back(e);
            return;
        }
        for (int k = left; k >= 0; --k) {
            e[static_cast<size_t>(i)] = k;
            self(self, i + 1, left - k);
        }
    };
    if (n == 0) {
        if (d == 0) out.push_back({});
        return out;
    }
    rec(rec, 0, d);
    return out;
}

inline std::vector<Exponent> exponents_up_to(int n, int d) {
    std::vector<Exponent> out;
    for (int k = 0; k <= d; ++k) {
        auto part = exponents_of_degree(n, k);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

inline std::string monomial_string(const Exponent& e, const std::vector<std::string>& names) {
    std::string s;
    for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += names[i];
        if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s.empty() ? "1" : s;
}

inline std::vector<std::string> default_names(int n, const std::string& stem = "z") {
    std::vector<std::string> v;
    for (int i = 1; i <= n; ++i) v.push_back(stem + std::to_string(i));
    return v;
}

// Sparse multivariate polynomial over a coefficient field.
template <CoefficientField F>
class MultiPoly {
public:
    using E = typename F::element_type;
    using Terms = std::map<Exponent, E, GradedLex>;

    MultiPoly() = default;
    MultiPoly(F field, int nvars) : field_(std::move(field)), nvars_(nvars) {}

    static MultiPoly constant(const F& field, int nvars, const E& c) {
        MultiPoly p(field, nvars);
        p.add_term(Exponent(static_cast<size_t>(nvars), 0), c);
        return p;
    }
    static MultiPoly variable(const F& field, int nvars, int i) {
        MultiPoly p(field, nvars);
        Exponent e(static_cast<size_t>(nvars), 0);
        e.at(static_cast<size_t>(i)) = 1;
        p.add_term(e, field.one());
        return p;
    }

    const F& field() const { return field_; }
    int nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    E coeff(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? field_.zero() : it->second;
    }

    void add_term(const Exponent& e, const E& c) {
        if (static_cast<int>(e.size()) != nvars_) throw InputError("MultiPoly: exponent length mismatch");
        if (gheight::is_zero(c)) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
            return;
        }
        it->second += c;
        if (gheight::is_zero(it->second)) terms_.erase(it);
    }

    int total_degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, gheight::total_degree(e));
        return d;
    }
    int degree_in(int var) const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<size_t>(var)]);
        return d;
    }
    bool is_homogeneous() const {
        int d = -1;
        for (const auto& [e, c] : terms_) {
            int k = gheight::total_degree(e);
            if (d >= 0 && k != d) return false;
            d = k;
        }
        return true;
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        check(a, b);
        MultiPoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend MultiPoly operator-(const MultiPoly& a) {
        MultiPoly r = a;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        check(a, b);
        MultiPoly r(a.field_, a.nvars_);
        Exponent e(static_cast<size_t>(a.nvars_));
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    friend MultiPoly operator*(const E& s, const MultiPoly& a) {
        MultiPoly r(a.field_, a.nvars_);
        for (const auto& [e, c] : a.terms_) r.add_term(e, s * c);
        return r;
    }
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    MultiPoly pow(int k) const {
        MultiPoly r = constant(field_, nvars_, field_.one());
        for (int i = 0; i < k; ++i) r = r * *this;
        return r;
    }

    E evaluate(const std::vector<E>& x) const {
        if (static_cast<int>(x.size()) != nvars_) throw InputError("MultiPoly: point has wrong dimension");
        E s = field_.zero();
        for (const auto& [e, c] : terms_) {
            E t = c;
            for (size_t i = 0; i < e.size(); ++i)
                for (int k = 0; k < e[i]; ++k) t *= x[i];
            s += t;
        }
        return s;
    }

    // Maps coefficients into another field (e.g. Q into a number field).
    template <CoefficientField G, class Map>
    MultiPoly<G> map_coefficients(const G& g, Map f) const {
        MultiPoly<G> r(g, nvars_);
        for (const auto& [e, c] : terms_) r.add_term(e, f(c));
        return r;
    }

    std::string to_string(const std::vector<std::string>& names) const {
        if (terms_.empty()) return "0";
        std::string s;
        // highest degree first reads more naturally
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!s.empty()) s += " + ";
            s += "(" + coeff_to_string(it->second) + ")*" + monomial_string(it->first, names);
        }
        return s;
    }
    std::string to_string() const { return to_string(default_names(nvars_, "y")); }

private:
    static void check(const MultiPoly& a, const MultiPoly& b) {
        if (a.nvars_ != b.nvars_) throw InputError("MultiPoly: variable count mismatch");
        if (!(a.field_ == b.field_)) throw InputError("MultiPoly: field mismatch");
    }

    F field_;
    int nvars_ = 0;
    Terms terms_;
};

} // namespace gheight
