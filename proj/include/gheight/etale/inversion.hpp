#pragma once

#include <map>
#include <set>
#include <string>
#include <type_traits>
#include <vector>

#include "gheight/arith/places.hpp"
#include "gheight/linalg/matrix.hpp"
#include "gheight/series/ops.hpp"

namespace gheight {

// Polynomial map germ at the origin: components g_1..g_nu and embedding
// relations p_1..p_l in sigma ambient variables, with sigma = nu + l.
template <CoefficientField F>
class EtaleGerm {
public:
    using E = typename F::element_type;
    using Poly = MultiPoly<F>;

    EtaleGerm(F field, int sigma, std::vector<Poly> g, std::vector<Poly> p = {})
        : field_(std::move(field)), sigma_(sigma), g_(std::move(g)), p_(std::move(p)) {
        nu_ = static_cast<int>(g_.size());
        if (nu_ < 1) throw InputError("EtaleGerm: need at least one component polynomial");
        if (nu_ + static_cast<int>(p_.size()) != sigma_)
            throw InputError("EtaleGerm: need nu + l = sigma, got " + std::to_string(nu_) + " + " + std::to_string(p_.size()) +
                             " != " + std::to_string(sigma_));
        Exponent zero(static_cast<size_t>(sigma_), 0);
        for (const auto* list : {&g_, &p_})
            for (const auto& f : *list) {
                if (f.nvars() != sigma_) throw InputError("EtaleGerm: polynomial in the wrong number of variables");
                if (!(f.field() == field_)) throw InputError("EtaleGerm: polynomial over a different field");
                if (!is_zero(f.coeff(zero))) throw InputError("EtaleGerm: polynomial with nonzero constant term");
            }
        jac_ = Matrix<F>(field_, static_cast<size_t>(sigma_), static_cast<size_t>(sigma_));
        for (int i = 0; i < sigma_; ++i)
            for (int j = 0; j < sigma_; ++j) {
                Exponent e = zero;
                e[static_cast<size_t>(j)] = 1;
                jac_(static_cast<size_t>(i), static_cast<size_t>(j)) = component(i).coeff(e);
            }
        if (jac_.rank() < static_cast<size_t>(sigma_))
            throw InputError("EtaleGerm: Jacobian of (g, p) at the origin is singular");
    }

    const F& field() const { return field_; }
    int sigma() const { return sigma_; }
    int nu() const { return nu_; }
    const std::vector<Poly>& g() const { return g_; }
    const std::vector<Poly>& p() const { return p_; }
    const Matrix<F>& jacobian() const { return jac_; }
    // (g_1, ..., g_nu, p_1, ..., p_l)
    const Poly& component(int i) const {
        return i < nu_ ? g_[static_cast<size_t>(i)] : p_[static_cast<size_t>(i - nu_)];
    }

private:
    F field_;
    int sigma_, nu_;
    std::vector<Poly> g_, p_;
    Matrix<F> jac_;
};

// A = (A_1..A_sigma) in nu variables with g(A) = t and p(A) = 0 up to order N.
// Fixed point A <- M^{-1}((t, 0) - Phi_{>=2}(A)), solved one degree at a time:
// the degree-k part of A^e (|e| >= 2) only sees degrees < k of A, so the
// needed powers are carried along incrementally as graded pieces.
template <CoefficientField F>
std::vector<MultiSeries<F>> formal_inverse(const EtaleGerm<F>& germ, int N) {
    if (N < 1) throw InputError("formal_inverse: order must be >= 1");
    using E = typename F::element_type;
    using Piece = std::map<Exponent, E>;
    using Graded = std::vector<Piece>;
    const F& K = germ.field();
    int sigma = germ.sigma(), nu = germ.nu();
    size_t S = static_cast<size_t>(sigma), Nz = static_cast<size_t>(N);
    Matrix<F> Minv = germ.jacobian().inverse_matrix();

    std::vector<std::vector<std::pair<Exponent, E>>> higher(S);
    std::map<Exponent, Graded, GradedLex> powers;   // A^e for the needed |e| >= 2
    for (int i = 0; i < sigma; ++i)
        for (const auto& [e, c] : germ.component(i).terms()) {
            int d = total_degree(e);
            if (d < 2 || d > N) continue;
            higher[static_cast<size_t>(i)].push_back({e, c});
            for (Exponent f = e; total_degree(f) >= 2;) {
                powers.emplace(f, Graded(Nz + 1));
                size_t j = f.size();
                while (f[--j] == 0) {}
                --f[j];
            }
        }

    std::vector<Graded> A(S, Graded(Nz + 1));
    for (size_t i = 0; i < S; ++i)
        for (int j = 0; j < nu; ++j) {
            const auto& m = Minv(i, static_cast<size_t>(j));
            if (is_zero(m)) continue;
            Exponent e(static_cast<size_t>(nu), 0);
            e[static_cast<size_t>(j)] = 1;
            A[i][1].emplace(e, m);
        }

    auto accumulate = [](Piece& out, const Piece& a, const Piece& b) {
        if (a.empty() || b.empty()) return;
        Exponent g;
        if constexpr (std::is_same_v<F, RationalField>) {
            // integer numerators, reduce once per output monomial
            auto scaled = [](const Piece& p, Integer& den) {
                den = 1;
                for (const auto& [e, c] : p) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
                std::vector<std::pair<const Exponent*, Integer>> v;
                for (const auto& [e, c] : p) v.emplace_back(&e, Integer(c.get_num() * (den / c.get_den())));
                return v;
            };
            Integer da, db;
            auto na = scaled(a, da), nb = scaled(b, db);
            std::map<Exponent, Integer> sums;
            for (const auto& [ea, ca] : na)
                for (const auto& [eb, cb] : nb) {
                    g = *ea;
                    for (size_t t = 0; t < g.size(); ++t) g[t] += (*eb)[t];
                    mpz_addmul(sums[g].get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
                }
            Integer dd = da * db;
            for (auto& [e, v] : sums) {
                if (sgn(v) == 0) continue;
                Rational q(v, dd);
                q.canonicalize();
                auto it = out.find(e);
                if (it == out.end()) out.emplace(e, std::move(q));
                else it->second += q;
            }
            return;
        }
        for (const auto& [ea, ca] : a)
            for (const auto& [eb, cb] : b) {
                g = ea;
                for (size_t t = 0; t < g.size(); ++t) g[t] += eb[t];
                auto it = out.find(g);
                if (it == out.end()) out.emplace(g, ca * cb);
                else it->second += ca * cb;
            }
    };
    auto prune = [](Piece& p) {
        for (auto it = p.begin(); it != p.end();) it = is_zero(it->second) ? p.erase(it) : std::next(it);
    };

    for (int k = 2; k <= N; ++k) {
        size_t kz = static_cast<size_t>(k);
        // graded order puts every prefix before its extensions
        for (auto& [e, P] : powers) {
            int deg = total_degree(e);
            if (deg > k) continue;
            size_t j = e.size();
            while (e[--j] == 0) {}
            Exponent f = e;
            --f[j];
            size_t lead = 0;
            while (f[lead] == 0) ++lead;
            const Graded& Pf = total_degree(f) == 1 ? A[lead] : powers.at(f);
            Piece out;
            for (int d = deg - 1; d <= k - 1; ++d) accumulate(out, Pf[static_cast<size_t>(d)], A[j][kz - static_cast<size_t>(d)]);
            prune(out);
            P[kz] = std::move(out);
        }
        std::vector<Piece> rhs(S);
        for (size_t i = 0; i < S; ++i) {
            for (const auto& [e, c] : higher[i])
                for (const auto& [g, v] : powers.at(e)[kz]) {
                    auto it = rhs[i].find(g);
                    if (it == rhs[i].end()) rhs[i].emplace(g, c * v);
                    else it->second += c * v;
                }
        }
        for (size_t i = 0; i < S; ++i) {
            Piece out;
            for (size_t j = 0; j < S; ++j) {
                const auto& m = Minv(i, j);
                if (is_zero(m)) continue;
                for (const auto& [g, v] : rhs[j]) {
                    auto it = out.find(g);
                    if (it == out.end()) out.emplace(g, -(m * v));
                    else it->second -= m * v;
                }
            }
            prune(out);
            A[i][kz] = std::move(out);
        }
    }

    std::vector<MultiSeries<F>> result;
    for (size_t i = 0; i < S; ++i) {
        MultiSeries<F> a(K, nu, N);
        for (const auto& piece : A[i])
            for (const auto& [g, v] : piece) a.add_term(g, v);
        result.push_back(std::move(a));
    }
    return result;
}

namespace detail {

inline void add_denominator_primes(const Rational& q, std::set<Integer>& out) {
    for (const auto& p : prime_divisors(Integer(q.get_den()))) out.insert(p);
}
inline void add_denominator_primes(const NumberFieldElement& x, std::set<Integer>& out) {
    for (const auto& c : x.coords()) add_denominator_primes(c, out);
}
inline void add_norm_primes(const Rational& q, std::set<Integer>& out) {
    if (sgn(q) == 0) return;
    for (const auto& p : prime_divisors(abs(Integer(q.get_num())))) out.insert(p);
    add_denominator_primes(q, out);
}
inline void add_norm_primes(const NumberFieldElement& x, std::set<Integer>& out) {
    if (x.is_zero()) return;
    add_norm_primes(x.norm(), out);
}

// Smallest valuation of x at places above p, scaled so that v(p) = 1.
inline Rational min_scaled_valuation(const Rational& q, const Integer& p) {
    return Rational(padic_valuation(q, p).value());
}
inline Rational min_scaled_valuation(const NumberFieldElement& x, const Integer& p) {
    if (x.field().is_rationals()) return Rational(padic_valuation(x.to_rational(), p).value());
    Rational best;
    bool first = true;
    for (const auto& v : places_above(x.field(), p)) {
        Rational val = ratio(local_valuation(x, v).value(), v.local_degree());
        if (first || val < best) best = val;
        first = false;
    }
    return best;
}

template <class E>
bool is_p_integral(const E& x, const Integer& p) {
    return is_zero(x) || sgn(min_scaled_valuation(x, p)) >= 0;
}

} // namespace detail

// Observed primes (denominators of the computed coefficients that are
// genuinely non-integral) together with the structural ones: primes of
// det M and denominators of the defining polynomials.
template <CoefficientField F>
std::vector<Integer> bad_primes(const EtaleGerm<F>& germ, const std::vector<MultiSeries<F>>& A) {
    std::set<Integer> structural, candidates;
    detail::add_norm_primes(germ.jacobian().det(), structural);
    for (int i = 0; i < germ.sigma(); ++i)
        for (const auto& [e, c] : germ.component(i).terms()) detail::add_denominator_primes(c, structural);
    UPoly m = germ.field().minpoly();
    for (const auto& c : m.coeffs()) detail::add_denominator_primes(c, candidates);
    for (const auto& a : A)
        for (const auto& [e, c] : a.terms()) detail::add_denominator_primes(c, candidates);
    std::set<Integer> out = structural;
    for (const auto& p : candidates) {
        if (out.count(p)) continue;
        for (const auto& a : A) {
            bool bad = false;
            for (const auto& [e, c] : a.terms())
                if (!detail::is_p_integral(c, p)) {
                    bad = true;
                    break;
                }
            if (bad) {
                out.insert(p);
                break;
            }
        }
    }
    return {out.begin(), out.end()};
}

// Minimal prod p^{e_p} over p in sigma_set with a_J * N^{|J|} integral at p
// for all computed coefficients.
template <CoefficientField F>
Integer scaling_integer(const std::vector<Integer>& sigma_set, const std::vector<MultiSeries<F>>& A) {
    Integer N = 1;
    for (const auto& p : sigma_set) {
        Integer e = 0;
        for (const auto& a : A)
            for (const auto& [J, c] : a.terms()) {
                int d = total_degree(J);
                if (d == 0 || is_zero(c)) continue;
                Rational v = detail::min_scaled_valuation(c, p);
                if (sgn(v) >= 0) continue;
                Integer need = ceil(-v / Rational(d));
                if (need > e) e = need;
            }
        N *= pow(p, e.get_ui());
    }
    return N;
}

// A(N t): the coefficient of t^J picks up N^{|J|}.
template <CoefficientField F>
std::vector<MultiSeries<F>> rescale(const std::vector<MultiSeries<F>>& A, const Integer& N) {
    std::vector<MultiSeries<F>> out;
    for (const auto& a : A) {
        MultiSeries<F> r(a.field(), a.nvars(), a.order());
        for (const auto& [J, c] : a.terms()) r.add_term(J, scale(c, Rational(pow(N, static_cast<unsigned long>(total_degree(J))))));
        out.push_back(std::move(r));
    }
    return out;
}

template <CoefficientField F>
struct InversionResult {
    std::vector<MultiSeries<F>> A;
    int order = 0;
    std::vector<Integer> bad_primes;
    Integer scaling = 1;
    // coordinates may be rescaled by scaling; the base parameter s = z1..z_mu
    // then rescales by scaling^mu
    Integer s_scaling(int mu) const { return pow(scaling, static_cast<unsigned long>(mu)); }
    int certified_order() const { return order; }
};

template <CoefficientField F>
InversionResult<F> invert(const EtaleGerm<F>& germ, int N) {
    InversionResult<F> r;
    r.A = formal_inverse(germ, N);
    r.order = N;
    r.bad_primes = bad_primes(germ, r.A);
    r.scaling = scaling_integer(r.bad_primes, r.A);
    return r;
}

} // namespace gheight
