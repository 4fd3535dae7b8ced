#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gheight/arith/places.hpp"
#include "gheight/linalg/matrix.hpp"
#include "gheight/series/multipoly.hpp"
#include "gheight/series/multiseries.hpp"

namespace gheight {

template <CoefficientField F>
class GVector {
public:
    using E = typename F::element_type;

    explicit GVector(std::vector<UniSeries<F>> entries) : entries_(std::move(entries)) {
        if (entries_.empty()) throw InputError("GVector: need at least one series");
        for (const auto& g : entries_) {
            if (!(g.field() == entries_[0].field())) throw InputError("GVector: entries over different fields");
            if (g.order() != entries_[0].order())
                throw InputError("GVector: entries truncated at different orders (" + std::to_string(g.order()) + " vs " +
                                 std::to_string(entries_[0].order()) + ")");
        }
    }

    const F& field() const { return entries_[0].field(); }
    int order() const { return entries_[0].order(); }
    int size() const { return static_cast<int>(entries_.size()); }
    const UniSeries<F>& operator[](int i) const { return entries_.at(static_cast<size_t>(i)); }
    const std::vector<UniSeries<F>>& entries() const { return entries_; }

private:
    std::vector<UniSeries<F>> entries_;
};

inline NumberField as_number_field(const RationalField&) { return NumberField(); }
inline NumberField as_number_field(const NumberField& K) { return K; }

namespace detail {

// |x|_v = p^e at a finite place, x != 0
inline Rational finite_exponent(const Rational& q, const Place& v) {
    if (v.field().is_rationals()) return Rational(-padic_valuation(q, v.prime()).value());
    return abs_value(v.field().from_rational(q), v, 64).exponent;
}
inline Rational finite_exponent(const NumberFieldElement& x, const Place& v) {
    if (x.field().is_rationals() && v.field().is_rationals()) return finite_exponent(x.to_rational(), v);
    return abs_value(x, v, 64).exponent;
}

inline std::vector<Integer> candidate_primes(const Rational& q) { return prime_divisors(Integer(q.get_den())); }
inline std::vector<Integer> candidate_primes(const NumberFieldElement& x) {
    if (x.field().is_rationals()) return candidate_primes(x.to_rational());
    return support_primes(x);
}

// log |x|_v for the normalised archimedean absolute value, x != 0
template <class E>
Interval log_abs_arch(const E& x, const Embedding& emb) {
    Interval a = emb(x).abs();
    return Interval(emb.weight(), emb.precision()) * log(a);
}

} // namespace detail

struct SizeEstimate {
    int n = 0;
    std::map<Integer, Rational> finite;   // p -> e_p, finite part = sum e_p log p
    Interval finite_part, archimedean_part, value;

    std::string to_string(int digits = 12) const {
        return "sigma_" + std::to_string(n) + " = " + value.mid_string(digits) + " interval" + value.to_string(digits);
    }
};

// sigma_n = (1/n) sum_v max_{i, j <= n} log+ |G_ij|_v
template <CoefficientField F>
SizeEstimate size_partial(const GVector<F>& G, int n, long precision = 128) {
    if (n < 1) throw InputError("size_partial: need n >= 1");
    if (n > G.order()) throw InputError("size_partial: n = " + std::to_string(n) + " exceeds the series order " + std::to_string(G.order()));
    NumberField K = as_number_field(G.field());
    SizeEstimate out;
    out.n = n;
    std::map<Integer, std::vector<Place>> finite_places;
    for (const auto& g : G.entries())
        for (int j = 0; j <= n; ++j) {
            const auto& c = g.coeff(j);
            if (is_zero(c)) continue;
            for (const auto& p : detail::candidate_primes(c)) {
                auto it = finite_places.find(p);
                if (it == finite_places.end())
                    it = finite_places.emplace(p, K.is_rationals() ? std::vector<Place>{Place::prime(p)} : places_above(K, p)).first;
            }
        }
    for (const auto& [p, places] : finite_places) {
        Rational ep = 0;
        for (const auto& v : places) {
            Rational best = 0;
            for (const auto& g : G.entries())
                for (int j = 0; j <= n; ++j) {
                    const auto& c = g.coeff(j);
                    if (is_zero(c)) continue;
                    Rational e = detail::finite_exponent(c, v);
                    if (e > best) best = e;
                }
            ep += best;
        }
        if (sgn(ep) > 0) out.finite[p] = ep;
    }
    out.finite_part = Interval(Rational(0), precision);
    for (const auto& [p, e] : out.finite) out.finite_part = out.finite_part + Interval(e, precision) * Interval::log_of(p, precision);
    out.archimedean_part = Interval(Rational(0), precision);
    for (const auto& v : archimedean_places(K)) {
        Embedding emb(v, precision);
        Interval best(Rational(0), precision);
        for (const auto& g : G.entries())
            for (int j = 0; j <= n; ++j) {
                const auto& c = g.coeff(j);
                if (is_zero(c)) continue;
                best = max(best, detail::log_abs_arch(c, emb));
            }
        out.archimedean_part = out.archimedean_part + best;
    }
    out.value = (out.finite_part + out.archimedean_part) / Interval(Rational(n), precision);
    return out;
}

template <CoefficientField F>
std::vector<SizeEstimate> size_sequence(const GVector<F>& G, const std::vector<int>& ns, long precision = 128) {
    std::vector<SizeEstimate> out;
    for (int n : ns) out.push_back(size_partial(G, n, precision));
    return out;
}

struct SizeTrend {
    double slope = 0;
    std::string verdict;   // heuristic only
};

// Least-squares slope of sigma_n against log n.
inline SizeTrend size_heuristic(const std::vector<SizeEstimate>& seq) {
    if (seq.size() < 2) throw InputError("size_heuristic: need at least two sample points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0, k = static_cast<double>(seq.size());
    for (const auto& s : seq) {
        double x = std::log(static_cast<double>(s.n)), y = s.value.midpoint();
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double den = k * sxx - sx * sx;
    if (den == 0) throw InputError("size_heuristic: sample points must have distinct n");
    SizeTrend t;
    t.slope = (k * sxy - sx * sy) / den;
    t.verdict = t.slope < 0.1 ? "bounded-looking" : "divergent-looking";
    return t;
}

struct RadiusEstimate {
    bool inconclusive = false;
    bool finite_place = false;
    Integer prime = 0;
    Rational exponent = 0;   // finite places: radius = prime^exponent exactly
    Interval value;
    int window = 0;
    int terms_used = 0;

    std::string to_string(int digits = 12) const {
        std::string tag = "estimate(window=" + std::to_string(window) + ")";
        if (inconclusive) return "inconclusive " + tag;
        if (finite_place) return prime.get_str() + "^" + exponent.get_str() + " " + tag;
        return value.mid_string(digits) + " " + tag;
    }
};

// min of |a_n|_v^{-1/n} over the nonzero a_n in the trailing window.
template <CoefficientField F>
RadiusEstimate v_radius(const UniSeries<F>& a, const Place& v, int window, long precision = 128) {
    int N = a.order();
    if (window < 1 || window > N)
        throw InputError("v_radius: window must lie in [1, " + std::to_string(N) + "], got " + std::to_string(window));
    RadiusEstimate r;
    r.window = window;
    r.finite_place = v.is_finite();
    if (r.finite_place) r.prime = v.prime();
    std::optional<Embedding> emb;
    if (v.is_archimedean()) emb.emplace(v, precision);
    bool first = true;
    for (int n = std::max(1, N - window + 1); n <= N; ++n) {
        const auto& c = a.coeff(n);
        if (is_zero(c)) continue;
        ++r.terms_used;
        if (r.finite_place) {
            Rational e = -detail::finite_exponent(c, v) / Rational(n);
            if (first || e < r.exponent) r.exponent = e;
        } else {
            Interval x = exp(-detail::log_abs_arch(c, *emb) / Interval(Rational(n), precision));
            r.value = first ? x : min(r.value, x);
        }
        first = false;
    }
    if (r.terms_used < 2) {
        r.inconclusive = true;
        return r;
    }
    if (r.finite_place) r.value = exp(Interval(r.exponent, precision) * Interval::log_of(r.prime, precision));
    return r;
}

enum class Verdict { No, Yes, Unknown };

inline std::string verdict_string(Verdict v) {
    switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    default: return "unknown";
    }
}

struct RelevanceEntry {
    std::string place;
    AbsValue xi_abs;
    std::vector<RadiusEstimate> radii;
    Verdict relevant = Verdict::Unknown;
    bool estimate = false;   // verdict leaned on radius estimates
};

namespace detail {

// Compares |xi|_v with a radius estimate: Yes if radius > |xi|_v.
inline Verdict radius_exceeds(const RadiusEstimate& r, const AbsValue& xi) {
    if (r.inconclusive) return Verdict::Unknown;
    if (xi.zero) return Verdict::Yes;
    if (r.finite_place) return r.exponent > xi.exponent ? Verdict::Yes : Verdict::No;
    Interval x = xi.exact ? Interval(*xi.exact, r.value.precision()) : xi.enclosure;
    if (r.value.certainly_greater(x)) return Verdict::Yes;
    if (r.value.certainly_less_equal(x)) return Verdict::No;
    return Verdict::Unknown;
}

inline Verdict below_one(const AbsValue& xi) {
    if (xi.zero) return Verdict::Yes;
    if (xi.is_finite_place()) return sgn(xi.exponent) < 0 ? Verdict::Yes : Verdict::No;
    if (xi.exact) return *xi.exact < 1 ? Verdict::Yes : Verdict::No;
    Interval one(Rational(1), xi.enclosure.precision());
    if (xi.enclosure.certainly_less(one)) return Verdict::Yes;
    if (one.certainly_less_equal(xi.enclosure)) return Verdict::No;
    return Verdict::Unknown;
}

} // namespace detail

template <CoefficientField F>
RelevanceEntry is_relevant(const typename F::element_type& xi, const Place& v, const GVector<F>& G, int window,
                           long precision = 128) {
    RelevanceEntry e;
    e.place = v.label();
    e.xi_abs = abs_value(xi, v, precision);
    for (const auto& g : G.entries()) e.radii.push_back(v_radius(g, v, window, precision));
    Verdict small = detail::below_one(e.xi_abs);
    if (small == Verdict::No) {
        e.relevant = Verdict::No;
        return e;
    }
    e.estimate = true;
    Verdict all = small;
    for (const auto& r : e.radii) {
        Verdict d = detail::radius_exceeds(r, e.xi_abs);
        if (d == Verdict::No) {
            all = Verdict::No;
            break;
        }
        if (d == Verdict::Unknown) all = Verdict::Unknown;
    }
    e.relevant = all;
    return e;
}

template <CoefficientField F>
std::vector<RelevanceEntry> relevance_report(const typename F::element_type& xi, const std::vector<Place>& places,
                                             const GVector<F>& G, int window, long precision = 128) {
    std::vector<RelevanceEntry> out;
    for (const auto& v : places) out.push_back(is_relevant(xi, v, G, window, precision));
    return out;
}

// Variables of a relation polynomial: x, y0, y1, ..., ym (y0 stands for 1).
inline std::vector<std::string> relation_names(int m) {
    std::vector<std::string> n{"x"};
    for (int i = 0; i <= m; ++i) n.push_back("y" + std::to_string(i));
    return n;
}

template <CoefficientField F>
struct RelationBasis {
    std::vector<MultiPoly<F>> basis;
    int unknowns = 0, equations = 0, order = 0;
};

namespace detail {

// prod_i G_i^{alpha_i} with y0 = 1, memoised on alpha.
template <CoefficientField F>
const UniSeries<F>& y_power(const GVector<F>& G, const Exponent& alpha, int N,
                            std::map<Exponent, UniSeries<F>>& memo) {
    auto it = memo.find(alpha);
    if (it != memo.end()) return it->second;
    size_t i = alpha.size();
    while (i-- > 1)
        if (alpha[i] > 0) break;
    UniSeries<F> r(G.field(), N);
    if (i == 0) {
        r.set(0, G.field().one());
    } else {
        Exponent beta = alpha;
        --beta[i];
        r = y_power(G, beta, N, memo) * G[static_cast<int>(i) - 1].truncate(N);
    }
    return memo.emplace(alpha, std::move(r)).first->second;
}

} // namespace detail

// P(x, 1, G(x)) truncated at N.
template <CoefficientField F>
UniSeries<F> relation_series(const MultiPoly<F>& P, const GVector<F>& G, int N) {
    if (P.nvars() != G.size() + 2) throw InputError("relation_series: polynomial must be in x, y0..y" + std::to_string(G.size()));
    std::map<Exponent, UniSeries<F>> memo;
    UniSeries<F> out(G.field(), N);
    for (const auto& [e, c] : P.terms()) {
        Exponent alpha(e.begin() + 1, e.end());
        const auto& Y = detail::y_power(G, alpha, N, memo);
        for (int j = 0; j + e[0] <= N; ++j) out.set(j + e[0], out.coeff(j + e[0]) + c * Y.coeff(j));
    }
    return out;
}

// All P homogeneous of degree delta in y0..ym with deg_x <= D and
// P(x, 1, G) = O(x^{N+1}). Needs 25% more equations than unknowns.
template <CoefficientField F>
RelationBasis<F> functional_relations(const GVector<F>& G, int delta, int D, int N) {
    if (delta < 0 || D < 0 || N < 0) throw InputError("functional_relations: negative degree or order");
    if (N > G.order())
        throw InputError("functional_relations: order " + std::to_string(N) + " exceeds the series order " + std::to_string(G.order()));
    int m = G.size();
    auto alphas = exponents_of_degree(m + 1, delta);
    int U = (D + 1) * static_cast<int>(alphas.size());
    int required = (5 * U + 3) / 4;
    if (N + 1 < required)
        throw OrderError("functional_relations: " + std::to_string(U) + " unknowns need at least " + std::to_string(required) +
                             " equations, order " + std::to_string(N) + " gives " + std::to_string(N + 1),
                         required - 1);
    const F& K = G.field();
    std::map<Exponent, UniSeries<F>> memo;
    Matrix<F> A(K, static_cast<size_t>(N) + 1, static_cast<size_t>(U));
    size_t col = 0;
    for (int k = 0; k <= D; ++k)
        for (const auto& alpha : alphas) {
            const auto& Y = detail::y_power(G, alpha, N, memo);
            for (int j = k; j <= N; ++j) A(static_cast<size_t>(j), col) = Y.coeff(j - k);
            ++col;
        }
    auto null = A.nullspace();
    RelationBasis<F> out;
    out.unknowns = U;
    out.equations = N + 1;
    out.order = N;
    if (null.empty()) return out;
    Matrix<F> B(K, null.size(), static_cast<size_t>(U));
    for (size_t r = 0; r < null.size(); ++r)
        for (size_t c = 0; c < static_cast<size_t>(U); ++c) B(r, c) = null[r][c];
    B.rref();
    for (size_t r = 0; r < null.size(); ++r) {
        MultiPoly<F> P(K, m + 2);
        size_t c = 0;
        for (int k = 0; k <= D; ++k)
            for (const auto& alpha : alphas) {
                Exponent e{k};
                e.insert(e.end(), alpha.begin(), alpha.end());
                if (!is_zero(B(r, c))) P.add_term(e, B(r, c));
                ++c;
            }
        if (!P.is_zero()) out.basis.push_back(std::move(P));
    }
    return out;
}

struct RelationCheck {
    bool holds = false;
    bool exact = false;      // no tail estimate involved
    bool vacuous = false;    // v not relevant for xi; holds reports the formal identity
    int order = 0;           // truncation order the verdict is certified to
    std::string method;      // "exact", "valuation", "interval", "formal"
    // finite places: |P(truncation)|_v = p^residual_exponent, tail error <= p^error_exponent
    std::optional<Rational> residual_exponent, error_exponent;
    std::optional<ComplexInterval> enclosure;

    std::string to_string(int digits = 12) const {
        std::string s = holds ? "holds" : "fails";
        s += " method=" + method + " order=" + std::to_string(order);
        if (vacuous) s += " vacuous";
        if (!exact) s += " estimate";
        if (error_exponent) {
            s += " residual=" + (residual_exponent ? residual_exponent->get_str() : std::string("-inf"));
            s += " tail<=" + error_exponent->get_str();
        }
        if (enclosure) s += " value=" + enclosure->re.to_string(digits) + "+i" + enclosure->im.to_string(digits);
        return s;
    }
};

// Tests P(xi, 1, G(xi)) = 0 at the place v. The truncated values are exact;
// the tail is bounded with the trailing-window radius model, so verdicts away
// from xi = 0 are estimates.
template <CoefficientField F>
RelationCheck relation_holds_at(const MultiPoly<F>& P, const typename F::element_type& xi, const Place& v,
                                const GVector<F>& G, long precision = 128, int window = -1) {
    using E = typename F::element_type;
    int m = G.size(), N = G.order();
    if (P.nvars() != m + 2) throw InputError("relation_holds_at: polynomial must be in x, y0..y" + std::to_string(m));
    if (window < 0) window = std::min(N, std::max(4, N / 2));
    const F& K = G.field();
    RelationCheck out;
    out.order = N;
    std::vector<E> vals{xi, K.one()};
    for (const auto& g : G.entries()) vals.push_back(g.evaluate(xi));
    E V = P.evaluate(vals);
    if (is_zero(xi)) {
        out.holds = is_zero(V);
        out.exact = true;
        out.method = "exact";
        return out;
    }
    auto entry = is_relevant(xi, v, G, window, precision);
    bool all_zero_tail = true;
    for (size_t i = 0; i < static_cast<size_t>(m); ++i) {
        const auto& r = entry.radii[i];
        if (!r.inconclusive) {
            all_zero_tail = false;
            continue;
        }
        for (int n = std::max(1, N - window + 1); n <= N; ++n)
            if (!is_zero(G[static_cast<int>(i)].coeff(n)))
                throw PrecisionError("relation_holds_at: radius of series " + std::to_string(i + 1) +
                                     " inconclusive in the window; raise the order or the window");
    }
    if (all_zero_tail) {
        // every series looks polynomial: the truncation is taken as the value
        out.holds = is_zero(V);
        out.method = "exact";
        return out;
    }
    if (entry.relevant != Verdict::Yes) {
        out.vacuous = true;
        out.method = "formal";
        out.holds = relation_series(P, G, N).is_zero();
        return out;
    }

    int delta = 0;
    for (const auto& [e, c] : P.terms()) {
        int d = 0;
        for (size_t i = 1; i < e.size(); ++i) d += e[i];
        delta = std::max(delta, d);
    }

    if (v.is_finite()) {
        out.method = "valuation";
        Rational exi = entry.xi_abs.exponent;
        // |tail_i|_v <= p^{(e_xi - r_i)(N+1)}
        std::optional<Rational> tail;
        for (const auto& r : entry.radii) {
            if (r.inconclusive) continue;
            Rational t = (exi - r.exponent) * Rational(N + 1);
            if (!tail || t > *tail) tail = t;
        }
        Rational big = 0;   // log_p of max(1, |S_i|_v, |tail_i|_v)
        for (int i = 0; i < m; ++i)
            if (!is_zero(vals[static_cast<size_t>(i) + 2]))
                big = std::max(big, detail::finite_exponent(vals[static_cast<size_t>(i) + 2], v));
        big = std::max(big, *tail);
        std::optional<Rational> coef;
        for (const auto& [e, c] : P.terms()) {
            Rational t = detail::finite_exponent(c, v) + Rational(e[0]) * exi;
            if (!coef || t > *coef) coef = t;
        }
        out.error_exponent = *coef + Rational(std::max(delta - 1, 0)) * big + *tail;
        if (!is_zero(V)) out.residual_exponent = detail::finite_exponent(V, v);
        out.holds = !out.residual_exponent || *out.residual_exponent <= *out.error_exponent;
        return out;
    }

    out.method = "interval";
    Embedding emb(v, precision);
    long prec = precision;
    ComplexInterval zx = emb(xi);
    Interval axi = zx.abs();
    std::vector<ComplexInterval> Y;
    for (int i = 0; i < m; ++i) {
        const auto& g = G[i];
        ComplexInterval s = emb(vals[static_cast<size_t>(i) + 2]);
        // raw radius and constant from the trailing window
        std::optional<Interval> rad;
        for (int n = std::max(1, N - window + 1); n <= N; ++n) {
            const auto& c = g.coeff(n);
            if (is_zero(c)) continue;
            Interval x = exp(-log(emb(c).abs()) / Interval(Rational(n), prec));
            rad = rad ? min(*rad, x) : x;
        }
        if (!rad) {
            Y.push_back(s);
            continue;
        }
        Interval C(Rational(0), prec);
        for (int n = std::max(1, N - window + 1); n <= N; ++n) {
            const auto& c = g.coeff(n);
            if (is_zero(c)) continue;
            Interval pw(Rational(1), prec);
            for (int k = 0; k < n; ++k) pw = pw * *rad;
            C = max(C, emb(c).abs() * pw);
        }
        Interval q = axi / *rad;
        Interval one(Rational(1), prec);
        if (!q.certainly_less(one)) throw PrecisionError("relation_holds_at: point not inside the estimated disc of convergence");
        Interval qn(Rational(1), prec);
        for (int k = 0; k <= N; ++k) qn = qn * q;
        Interval T = (C * qn / (one - q)).upper_bound();
        Interval radius(Rational(0), prec);
        radius = hull(-T, T);
        Y.push_back({s.re + radius, s.im + radius});
    }
    ComplexInterval total{Interval(Rational(0), prec), Interval(Rational(0), prec)};
    for (const auto& [e, c] : P.terms()) {
        ComplexInterval t = emb(c);
        for (int k = 0; k < e[0]; ++k) t = t * zx;
        for (int i = 0; i < m; ++i)
            for (int k = 0; k < e[static_cast<size_t>(i) + 2]; ++k) t = t * Y[static_cast<size_t>(i)];
        total = total + t;
    }
    out.enclosure = total;
    out.holds = total.re.contains_zero() && total.im.contains_zero();
    return out;
}

} // namespace gheight
