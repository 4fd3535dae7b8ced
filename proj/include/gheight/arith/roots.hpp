#pragma once

#include <algorithm>
#include <complex>
#include <vector>

#include "gheight/arith/interval.hpp"
#include "gheight/arith/upoly.hpp"

namespace gheight {

// A certified enclosure of one complex root of a squarefree polynomial.
// The box contains exactly one root; for real roots the imaginary part is
// exactly zero.
struct RootEnclosure {
    ComplexInterval box;
    bool real = false;
    double approx_re = 0;
    double approx_im = 0;
};

namespace detail {

struct RationalComplex {
    Rational re, im;
};

inline RationalComplex eval(const UPoly& f, const RationalComplex& z) {
    RationalComplex r{0, 0};
    const auto& c = f.coeffs();
    for (size_t i = c.size(); i-- > 0;) {
        Rational nre = r.re * z.re - r.im * z.im + c[i];
        Rational nim = r.re * z.im + r.im * z.re;
        r = {nre, nim};
    }
    return r;
}

inline Rational round_dyadic(const Rational& q, long bits) {
    Integer scale = pow(Integer(2), static_cast<unsigned long>(bits));
    Rational t = q * scale;
    Integer n = floor(Rational(t + Rational(1, 2)));
    return ratio(n, scale);
}

inline std::vector<std::complex<long double>> durand_kerner(const UPoly& f) {
    int d = f.degree();
    std::vector<long double> c(static_cast<size_t>(d) + 1);
    for (int i = 0; i <= d; ++i) c[static_cast<size_t>(i)] = f.coeff(i).get_d() / f.leading().get_d();
    long double bound = 1;
    for (int i = 0; i < d; ++i) bound = std::max(bound, 1 + std::abs(c[static_cast<size_t>(i)]));
    std::vector<std::complex<long double>> z(static_cast<size_t>(d));
    const std::complex<long double> seed(0.4L, 0.9L);
    for (int i = 0; i < d; ++i) z[static_cast<size_t>(i)] = std::pow(seed, i) * bound * 0.5L;
    auto eval_ld = [&](std::complex<long double> x) {
        std::complex<long double> r = 0;
        for (int i = d; i >= 0; --i) r = r * x + c[static_cast<size_t>(i)];
        return r;
    };
    for (int it = 0; it < 2000; ++it) {
        long double change = 0;
        for (int i = 0; i < d; ++i) {
            std::complex<long double> den = 1;
            for (int j = 0; j < d; ++j)
                if (j != i) den *= z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)];
            if (std::abs(den) == 0) den = 1e-30L;
            std::complex<long double> step = eval_ld(z[static_cast<size_t>(i)]) / den;
            z[static_cast<size_t>(i)] -= step;
            change = std::max(change, std::abs(step));
        }
        if (change < 1e-18L) break;
    }
    return z;
}

} // namespace detail

// Enclosures of all roots of a squarefree polynomial f, ordered: real roots
// ascending, then non-real roots ascending by (re, im). Precision is doubled
// internally until every root is isolated.
inline std::vector<RootEnclosure> isolate_roots(const UPoly& f, long precision) {
    int d = f.degree();
    if (d < 1) return {};
    if (d == 1) {
        Rational r = -f.coeff(0) / f.leading();
        RootEnclosure e{{Interval(r, precision), Interval(Rational(0), precision)}, true, r.get_d(), 0};
        return {e};
    }
    auto approx = detail::durand_kerner(f);
    UPoly df = f.derivative();
    for (long bits = std::max<long>(precision, 64);; bits *= 2) {
        if (bits > 1L << 16) throw PrecisionError("isolate_roots: could not isolate roots");
        std::vector<detail::RationalComplex> centers;
        std::vector<bool> on_axis;
        for (const auto& a : approx) {
            detail::RationalComplex z{Rational(static_cast<double>(a.real())), Rational(static_cast<double>(a.imag()))};
            bool axis = std::abs(a.imag()) < 1e-9L * (1 + std::abs(a.real()));
            if (axis) z.im = 0;
            for (int it = 0; it < 200; ++it) {
                auto fz = detail::eval(f, z);
                auto dz = detail::eval(df, z);
                Rational den = dz.re * dz.re + dz.im * dz.im;
                if (sgn(den) == 0) break;
                Rational sre = (fz.re * dz.re + fz.im * dz.im) / den;
                Rational sim = (fz.im * dz.re - fz.re * dz.im) / den;
                z.re = detail::round_dyadic(z.re - sre, bits + 8);
                z.im = axis ? Rational(0) : detail::round_dyadic(z.im - sim, bits + 8);
                Rational mag = ::abs(sre) + ::abs(sim);
                if (sgn(mag) == 0 || mag < Rational(1, pow(Integer(2), static_cast<unsigned long>(bits + 4)))) break;
            }
            centers.push_back(z);
            on_axis.push_back(axis);
        }
        std::vector<Interval> radii;
        bool ok = true;
        for (const auto& z : centers) {
            auto fz = detail::eval(f, z);
            auto dz = detail::eval(df, z);
            Interval num = sqrt(Interval(fz.re * fz.re + fz.im * fz.im, bits));
            Interval den = sqrt(Interval(dz.re * dz.re + dz.im * dz.im, bits));
            if (den.contains_zero()) {
                ok = false;
                break;
            }
            radii.push_back((Interval(Rational(d), bits) * num / den).upper_bound());
        }
        if (!ok) continue;
        for (size_t i = 0; i < centers.size() && ok; ++i) {
            // Non-real roots must stay off the real axis.
            if (!on_axis[i] && !Interval(::abs(centers[i].im), bits).certainly_greater(radii[i])) ok = false;
            for (size_t j = i + 1; j < centers.size() && ok; ++j) {
                Rational dre = centers[i].re - centers[j].re, dim = centers[i].im - centers[j].im;
                Interval dist = sqrt(Interval(dre * dre + dim * dim, bits));
                if (!dist.certainly_greater(radii[i] + radii[j])) ok = false;
            }
        }
        if (!ok) continue;
        std::vector<RootEnclosure> out;
        for (size_t i = 0; i < centers.size(); ++i) {
            Interval re = Interval(centers[i].re, bits).inflate(radii[i]);
            Interval im = on_axis[i] ? Interval(Rational(0), bits) : Interval(centers[i].im, bits).inflate(radii[i]);
            out.push_back({{re, im}, on_axis[i], centers[i].re.get_d(), centers[i].im.get_d()});
        }
        std::sort(out.begin(), out.end(), [](const RootEnclosure& a, const RootEnclosure& b) {
            if (a.real != b.real) return a.real;
            if (a.approx_re != b.approx_re) return a.approx_re < b.approx_re;
            return a.approx_im < b.approx_im;
        });
        return out;
    }
}

} // namespace gheight
