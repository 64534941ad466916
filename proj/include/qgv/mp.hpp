// Thin RAII layer over MPFR with an explicit thread-local working precision.
#pragma once

#include <mpfr.h>

#include <complex>
#include <string>
#include <utility>

namespace qgv::mp {

long working_precision();
void set_working_precision(long bits);

class PrecisionScope {
public:
    explicit PrecisionScope(long bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    long saved_;
};

class Real {
public:
    Real();
    Real(double v);  // NOLINT(google-explicit-constructor)
    Real(int v) : Real(static_cast<double>(v)) {}  // NOLINT
    explicit Real(const std::string& decimal);
    Real(const Real& o);
    Real(Real&& o) noexcept;
    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept;
    ~Real();

    static Real pi();

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }
    long precision() const { return static_cast<long>(mpfr_get_prec(v_)); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // Scientific notation with `digits` significant digits; digits == 0 picks enough to round-trip.
    std::string to_string(int digits = 0) const;
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    Real& operator+=(const Real& o);
    Real& operator-=(const Real& o);
    Real& operator*=(const Real& o);
    Real& operator/=(const Real& o);
    Real operator-() const;

private:
    mpfr_t v_;
};

// Binary results are rounded to the working precision.
Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
// Copy of x rounded to the working precision.
Real rebind(const Real& x);
bool operator<(const Real& a, const Real& b);
bool operator>(const Real& a, const Real& b);
bool operator<=(const Real& a, const Real& b);
bool operator>=(const Real& a, const Real& b);
bool operator==(const Real& a, const Real& b);

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real log1p(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real atan2(const Real& y, const Real& x);
Real floor(const Real& x);
Real ldexp(const Real& x, long e);

class Complex {
public:
    Complex() = default;
    Complex(Real re, Real im = Real(0.0)) : re_(std::move(re)), im_(std::move(im)) {}  // NOLINT
    Complex(double re) : re_(re), im_(0.0) {}  // NOLINT
    Complex(std::complex<double> z) : re_(z.real()), im_(z.imag()) {}  // NOLINT

    const Real& real() const { return re_; }
    const Real& imag() const { return im_; }
    Real& real() { return re_; }
    Real& imag() { return im_; }

    std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }
    bool is_finite() const { return re_.is_finite() && im_.is_finite(); }

    Complex& operator+=(const Complex& o);
    Complex& operator-=(const Complex& o);
    Complex& operator*=(const Complex& o);
    Complex& operator/=(const Complex& o);
    Complex& operator*=(const Real& o);
    Complex operator-() const { return {-re_, -im_}; }

private:
    Real re_{0.0};
    Real im_{0.0};
};

Complex operator+(Complex a, const Complex& b);
Complex operator-(Complex a, const Complex& b);
Complex operator*(Complex a, const Complex& b);
Complex operator/(Complex a, const Complex& b);
Complex operator*(Complex a, const Real& b);
Complex operator*(const Real& a, Complex b);

Complex rebind(const Complex& z);
Complex conj(const Complex& z);
Real norm(const Complex& z);  // |z|^2
Real abs(const Complex& z);
Real arg(const Complex& z);
Complex exp(const Complex& z);
Complex log(const Complex& z);
Complex sqrt(const Complex& z);
// e^{i theta}
Complex polar1(const Real& theta);

}  // namespace qgv::mp
