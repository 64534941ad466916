#include "qgv/mp.hpp"

#include <cstdlib>
#include <stdexcept>

namespace qgv::mp {

namespace {
thread_local long g_prec = 192;
}

long working_precision() { return g_prec; }

void set_working_precision(long bits) {
    if (bits < MPFR_PREC_MIN || bits > 1 << 20) throw std::invalid_argument("precision out of range");
    g_prec = bits;
}

PrecisionScope::PrecisionScope(long bits) : saved_(g_prec) { set_working_precision(bits); }
PrecisionScope::~PrecisionScope() { g_prec = saved_; }

Real::Real() {
    mpfr_init2(v_, g_prec);
    mpfr_set_zero(v_, 1);
}

Real::Real(double v) {
    mpfr_init2(v_, g_prec);
    mpfr_set_d(v_, v, MPFR_RNDN);
}

Real::Real(const std::string& decimal) {
    mpfr_init2(v_, g_prec);
    if (mpfr_set_str(v_, decimal.c_str(), 10, MPFR_RNDN) != 0 && !mpfr_number_p(v_))
        throw std::invalid_argument("not a number: " + decimal);
}

Real::Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
}

Real& Real::operator=(const Real& o) {
    if (this != &o) {
        if (mpfr_get_prec(v_) != mpfr_get_prec(o.v_)) mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::pi() {
    Real r;
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

std::string Real::to_string(int digits) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
    if (digits <= 0) digits = static_cast<int>(mpfr_get_prec(v_) * 0.30103) + 2;
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", digits - 1, v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

Real& Real::operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
Real& Real::operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
Real& Real::operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
Real& Real::operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

Real Real::operator-() const {
    Real r;
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

#define QGV_BINARY(op, fn)                            \
    Real operator op(const Real& a, const Real& b) {  \
        Real r;                                       \
        fn(r.raw(), a.raw(), b.raw(), MPFR_RNDN);     \
        return r;                                     \
    }
QGV_BINARY(+, mpfr_add)
QGV_BINARY(-, mpfr_sub)
QGV_BINARY(*, mpfr_mul)
QGV_BINARY(/, mpfr_div)
#undef QGV_BINARY

Real rebind(const Real& x) {
    Real r;
    mpfr_set(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

Complex rebind(const Complex& z) { return {rebind(z.real()), rebind(z.imag())}; }
bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.raw(), b.raw()) != 0; }
bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.raw(), b.raw()) != 0; }
bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.raw(), b.raw()) != 0; }
bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.raw(), b.raw()) != 0; }
bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.raw(), b.raw()) != 0; }

#define QGV_UNARY(name, fn)                   \
    Real name(const Real& x) {                \
        Real r;                               \
        fn(r.raw(), x.raw(), MPFR_RNDN);      \
        return r;                             \
    }
QGV_UNARY(abs, mpfr_abs)
QGV_UNARY(sqrt, mpfr_sqrt)
QGV_UNARY(exp, mpfr_exp)
QGV_UNARY(log, mpfr_log)
QGV_UNARY(log1p, mpfr_log1p)
QGV_UNARY(sin, mpfr_sin)
QGV_UNARY(cos, mpfr_cos)
#undef QGV_UNARY

Real floor(const Real& x) {
    Real r;
    mpfr_floor(r.raw(), x.raw());
    return r;
}

Real atan2(const Real& y, const Real& x) {
    Real r;
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}

Real ldexp(const Real& x, long e) {
    Real r;
    mpfr_mul_2si(r.raw(), x.raw(), e, MPFR_RNDN);
    return r;
}

Complex& Complex::operator+=(const Complex& o) { re_ += o.re_; im_ += o.im_; return *this; }
Complex& Complex::operator-=(const Complex& o) { re_ -= o.re_; im_ -= o.im_; return *this; }

Complex& Complex::operator*=(const Complex& o) {
    Real ac = re_ * o.re_;
    Real bd = im_ * o.im_;
    Real ad = re_ * o.im_;
    im_ *= o.re_;
    im_ += ad;
    re_ = std::move(ac);
    re_ -= bd;
    return *this;
}

Complex& Complex::operator*=(const Real& o) { re_ *= o; im_ *= o; return *this; }

Complex& Complex::operator/=(const Complex& o) {
    Real den = norm(o);
    Complex num = *this * conj(o);
    re_ = num.re_ / den;
    im_ = num.im_ / den;
    return *this;
}

Complex operator+(Complex a, const Complex& b) { return a += b; }
Complex operator-(Complex a, const Complex& b) { return a -= b; }
Complex operator*(Complex a, const Complex& b) { return a *= b; }
Complex operator/(Complex a, const Complex& b) { return a /= b; }
Complex operator*(Complex a, const Real& b) { return a *= b; }
Complex operator*(const Real& a, Complex b) { return b *= a; }

Complex conj(const Complex& z) { return {z.real(), -z.imag()}; }
Real norm(const Complex& z) { return z.real() * z.real() + z.imag() * z.imag(); }

Real abs(const Complex& z) {
    Real r;
    mpfr_hypot(r.raw(), z.real().raw(), z.imag().raw(), MPFR_RNDN);
    return r;
}

Real arg(const Complex& z) { return atan2(z.imag(), z.real()); }

Complex polar1(const Real& theta) {
    Real s, c;
    mpfr_sin_cos(s.raw(), c.raw(), theta.raw(), MPFR_RNDN);
    return {c, s};
}

Complex exp(const Complex& z) { return polar1(z.imag()) * exp(z.real()); }

Complex log(const Complex& z) { return {log(abs(z)), arg(z)}; }

Complex sqrt(const Complex& z) {
    Real r = sqrt(abs(z));
    Real half = ldexp(arg(z), -1);
    return polar1(half) * r;
}

}  // namespace qgv::mp
