#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "gheight/series/multiseries.hpp"
#include "gheight/series/ops.hpp"

namespace gheight {

// Generators are labelled by variable index 2..nu (1-based):
// g_i = dz_i/z_i for i <= mu, g_i = dz_i for i > mu. dz_1/z_1 has been
// eliminated through dz_1/z_1 = -(dz_2/z_2 + ... + dz_mu/z_mu).
using GenSet = std::vector<int>;

struct GenSetLess {
    bool operator()(const GenSet& a, const GenSet& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

inline std::string genset_string(const GenSet& I) {
    if (I.empty()) return "-";
    std::string s;
    for (size_t k = 0; k < I.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(I[k]);
    }
    return s;
}

// All r-subsets of {2, ..., nu}, sorted.
inline std::vector<GenSet> generator_subsets(int nu, int r) {
    std::vector<GenSet> out;
    GenSet cur;
    auto rec = [&](auto& self, int next) -> void {
        if (static_cast<int>(cur.size()) == r) {
            out.push_back(cur);
            return;
        }
        for (int g = next; g <= nu; ++g) {
            cur.push_back(g);
            self(self, g + 1);
            cur.pop_back();
        }
    };
    rec(rec, 2);
    return out;
}

// Sign of g ^ g_I relative to the sorted set I u {g}.
inline int wedge_sign(int g, const GenSet& I) {
    int c = 0;
    for (int i : I)
        if (i < g) ++c;
    return (c % 2) ? -1 : 1;
}

inline GenSet insert_sorted(const GenSet& I, int g) {
    GenSet J = I;
    J.insert(std::upper_bound(J.begin(), J.end(), g), g);
    return J;
}

template <CoefficientField F>
class LogForm {
public:
    using E = typename F::element_type;
    using Series = MultiSeries<F>;
    using Components = std::map<GenSet, Series, GenSetLess>;

    LogForm() = default;
    LogForm(F field, int nu, int mu, int degree, int order)
        : field_(std::move(field)), nu_(nu), mu_(mu), degree_(degree), order_(order) {
        if (nu < 1) throw InputError("LogForm: need nu >= 1");
        if (mu < 1 || mu > nu) throw InputError("LogForm: need 1 <= mu <= nu");
        if (degree < 0 || degree > nu - 1) throw InputError("LogForm: degree must lie in [0, nu-1]");
        if (order < 0) throw InputError("LogForm: negative order");
    }

    const F& field() const { return field_; }
    int nu() const { return nu_; }
    int mu() const { return mu_; }
    int degree() const { return degree_; }
    int order() const { return order_; }
    const Components& components() const { return comps_; }

    Series component(const GenSet& I) const {
        auto it = comps_.find(I);
        return it == comps_.end() ? Series(field_, nu_, order_) : it->second;
    }

    void add_term(const GenSet& I, const Exponent& e, const E& c) {
        check_set(I);
        auto it = comps_.find(I);
        if (it == comps_.end()) it = comps_.emplace(I, Series(field_, nu_, order_)).first;
        it->second.add_term(e, c);
        if (it->second.is_zero()) comps_.erase(it);
    }
    void add_component(const GenSet& I, const Series& f) {
        for (const auto& [e, c] : f.terms()) add_term(I, e, c);
    }

    bool is_zero() const { return comps_.empty(); }

    LogForm truncate(int order) const {
        LogForm r(field_, nu_, mu_, degree_, std::min(order, order_));
        for (const auto& [I, f] : comps_) r.add_component(I, f.truncate(r.order_));
        return r;
    }

    friend LogForm operator+(const LogForm& a, const LogForm& b) {
        check(a, b);
        LogForm r = a.truncate(b.order_);
        for (const auto& [I, f] : b.comps_) r.add_component(I, f);
        return r;
    }
    friend LogForm operator-(const LogForm& a) {
        LogForm r(a.field_, a.nu_, a.mu_, a.degree_, a.order_);
        for (const auto& [I, f] : a.comps_) r.comps_.emplace(I, -f);
        return r;
    }
    friend LogForm operator-(const LogForm& a, const LogForm& b) { return a + (-b); }
    friend LogForm operator*(const E& s, const LogForm& a) {
        LogForm r(a.field_, a.nu_, a.mu_, a.degree_, a.order_);
        for (const auto& [I, f] : a.comps_) r.add_component(I, s * f);
        return r;
    }
    friend bool operator==(const LogForm& a, const LogForm& b) {
        return a.nu_ == b.nu_ && a.mu_ == b.mu_ && a.degree_ == b.degree_ && a.order_ == b.order_ && a.comps_ == b.comps_;
    }

    std::string to_string() const {
        if (comps_.empty()) return "0";
        std::string s;
        for (const auto& [I, f] : comps_) {
            if (!s.empty()) s += "\n";
            s += "[" + genset_string(I) + "] " + f.to_string();
        }
        return s;
    }

private:
    void check_set(const GenSet& I) const {
        if (static_cast<int>(I.size()) != degree_)
            throw InputError("LogForm: generator subset of size " + std::to_string(I.size()) + " in a degree " +
                             std::to_string(degree_) + " form");
        for (size_t k = 0; k < I.size(); ++k) {
            if (I[k] < 2 || I[k] > nu_) throw InputError("LogForm: generator index " + std::to_string(I[k]) + " outside 2.." + std::to_string(nu_));
            if (k && I[k] <= I[k - 1]) throw InputError("LogForm: generator subset not strictly increasing");
        }
    }
    static void check(const LogForm& a, const LogForm& b) {
        if (a.nu_ != b.nu_ || a.mu_ != b.mu_ || a.degree_ != b.degree_)
            throw InputError("LogForm: shape mismatch");
        if (!(a.field_ == b.field_)) throw InputError("LogForm: field mismatch");
    }

    F field_;
    int nu_ = 1, mu_ = 1, degree_ = 0, order_ = 0;
    Components comps_;
};

// Relative differential; the result has order one less than the input.
template <CoefficientField F>
LogForm<F> d_rel(const LogForm<F>& w) {
    if (w.degree() >= w.nu() - 1)
        throw InputError("d_rel: degree " + std::to_string(w.degree()) + " is already top degree for nu=" + std::to_string(w.nu()));
    LogForm<F> out(w.field(), w.nu(), w.mu(), w.degree() + 1, std::max(w.order() - 1, 0));
    int mu = w.mu();
    for (const auto& [I, f] : w.components()) {
        for (int g = 2; g <= w.nu(); ++g) {
            if (std::binary_search(I.begin(), I.end(), g)) continue;
            GenSet J = insert_sorted(I, g);
            int sign = wedge_sign(g, I);
            size_t gi = static_cast<size_t>(g - 1);
            for (const auto& [e, c] : f.terms()) {
                if (g <= mu) {
                    long lam = e[gi] - e[0];
                    if (lam != 0) out.add_term(J, e, scale(c, Rational(sign * lam)));
                } else if (e[gi] > 0) {
                    Exponent e2 = e;
                    --e2[gi];
                    out.add_term(J, e2, scale(c, Rational(sign * e[gi])));
                }
            }
        }
    }
    return out;
}

// h(s) * (dz_2/z_2 ^ ... ^ dz_mu/z_mu) as a form of degree mu-1.
template <CoefficientField F>
LogForm<F> s_form(const UniSeries<F>& h, int nu, int mu, int order) {
    LogForm<F> out(h.field(), nu, mu, mu - 1, order);
    GenSet top;
    for (int g = 2; g <= mu; ++g) top.push_back(g);
    for (int n = 0; n <= h.order() && mu * n <= order; ++n) out.add_term(top, s_exponent(nu, mu, n), h.coeff(n));
    return out;
}

} // namespace gheight
