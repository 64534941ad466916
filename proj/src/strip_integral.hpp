// Shared kernel for log G_b on the central strip, instantiated for double and MPFR.
#pragma once

#include <cmath>
#include <complex>

namespace qgv::detail {

inline double to_double(double x) { return x; }
inline double to_double(const mp::Real& x) { return x.to_double(); }

template <class R>
R pi_of();
template <>
inline double pi_of<double>() { return M_PI; }
template <>
inline mp::Real pi_of<mp::Real>() { return mp::Real::pi(); }

template <class R, class C>
struct StripParams {
    R b, m, Q;
    double digits_nat;  // target accuracy as -ln(eps)
};

template <class R, class C>
C make_complex(const R& re, const R& im) {
    return C(re, im);
}

// I(z) = int over R + i s c of e^{zt} dt / (t (1 - e^{bt}) (1 - e^{t/b})), s = sign(Im z), c = pi m.
// Requires 0 < Re z < Q. The positive half uses the e^{-Qt}-rescaled form so nothing overflows.
template <class R, class C>
C strip_integral(const C& z, const StripParams<R, C>& p, double* err) {
    using std::exp;
    const R pi = pi_of<R>();
    const R zero(0.0);
    const double bd = to_double(p.b), md = to_double(p.m), Qd = to_double(p.Q);
    const double re_z = to_double(z.real()), im_z = to_double(z.imag());
    const double sgn = im_z >= 0 ? 1.0 : -1.0;
    const double cd_ = M_PI * md;
    const double d = 0.9 * cd_;
    const double L = p.digits_nat;
    const double hd = 2 * M_PI * d / (L + d * std::abs(im_z) + 5.0);
    const long n_pos = static_cast<long>(std::ceil((L + 6.0) / ((Qd - re_z) * hd))) + 2;
    const long n_neg = static_cast<long>(std::ceil((L + 6.0) / (re_z * hd))) + 2;
    (void)bd;

    const R h(hd);
    const R c = pi * p.m * R(sgn);
    const R inv_b = R(1.0) / p.b;
    const C ic = make_complex<R, C>(zero, c);
    const C zq = z - C(p.Q);
    constexpr long kRefresh = 32;

    C sum_all = C(0.0), sum_even = C(0.0);

    // positive half, k = 0 .. n_pos
    {
        C E, A, B, rE, rA, rB;
        const C hc = C(h);
        rE = exp(zq * hc);
        rA = exp(-(C(p.b) * hc));
        rB = exp(-(C(inv_b) * hc));
        for (long k = 0; k <= n_pos; ++k) {
            const R x = h * R(static_cast<double>(k));
            const C t = C(x) + ic;
            if (k % kRefresh == 0) {
                E = exp(zq * t);
                A = exp(-(C(p.b) * t));
                B = exp(-(C(inv_b) * t));
            } else {
                E *= rE;
                A *= rA;
                B *= rB;
            }
            C den = t * (A - C(1.0)) * (B - C(1.0));
            C f = E / den;
            if (k == 0) {
                sum_all += f;
                sum_even += f;
            } else {
                sum_all += f;
                if (k % 2 == 0) sum_even += f;
            }
        }
    }
    // negative half, k = 1 .. n_neg
    {
        C E, A, B, rE, rA, rB;
        const C hc = C(h);
        rE = exp(-(z * hc));
        rA = exp(-(C(p.b) * hc));
        rB = exp(-(C(inv_b) * hc));
        for (long k = 1; k <= n_neg; ++k) {
            const R x = -(h * R(static_cast<double>(k)));
            const C t = C(x) + ic;
            if ((k - 1) % kRefresh == 0) {
                E = exp(z * t);
                A = exp(C(p.b) * t);
                B = exp(C(inv_b) * t);
            } else {
                E *= rE;
                A *= rA;
                B *= rB;
            }
            C den = t * (C(1.0) - A) * (C(1.0) - B);
            C f = E / den;
            sum_all += f;
            if (k % 2 == 0) sum_even += f;
        }
    }
    C I = sum_all * C(h);
    C I2 = sum_even * C(h + h);
    if (err) {
        using std::abs;
        double diff = to_double(abs(I - I2));
        // The halved rule's error is roughly the square of the doubled rule's (relative to O(1) scale).
        *err = diff * diff + 1e-300;
    }
    return I;
}

}  // namespace qgv::detail
