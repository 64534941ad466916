// Faddeev-type double sine G_b(z), its log, the unitary variant g_b and lattice classification.
#pragma once

#include "qgv/mp.hpp"

#include <complex>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>

namespace qgv {

using cd = std::complex<double>;

class ModularParameter {
public:
    // b > 0 given as decimal text so that the multiprecision path sees the exact input.
    static ModularParameter from_string(const std::string& text);
    explicit ModularParameter(double b);

    const std::string& text() const { return text_; }
    double b() const { return b_; }
    double m() const { return b_ < 1.0 ? b_ : 1.0 / b_; }  // min(b, 1/b)
    double Q() const { return b_ + 1.0 / b_; }
    cd q() const;     // e^{i pi b^2}
    cd zeta() const;  // e^{i pi/4 + i pi (b^2 + b^-2)/12}

    mp::Real b_mp() const;  // at the current working precision
    mp::Real m_mp() const;
    mp::Real Q_mp() const;
    mp::Complex zeta_mp() const;

private:
    std::string text_;
    double b_;
};

enum class LatticeKind { Regular, Pole, Zero };

// Poles sit at -(k b + l/b), zeros at Q + k b + l/b, k, l >= 0.
struct LatticePoint {
    LatticeKind kind = LatticeKind::Regular;
    int k = 0;
    int l = 0;
    double distance = 0.0;  // to the nearest lattice point of either kind
};

LatticePoint lattice_classify(const ModularParameter& mp, cd z);

struct GbValue {
    mp::Complex value;
    mp::Complex log_value;
    double err_bound = 0.0;  // relative, estimated from step halving
    long precision_bits = 0;
};

class GbDomainError : public std::domain_error {
public:
    GbDomainError(const std::string& what, LatticePoint p) : std::domain_error(what), point(p) {}
    LatticePoint point;
};

class GbAccuracyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Points closer than this multiple of Q to a pole or zero are refused.
inline constexpr double kLatticeGuard = 1e-6;

class GbEvaluator {
public:
    explicit GbEvaluator(ModularParameter mp);
    ~GbEvaluator();
    GbEvaluator(GbEvaluator&&) noexcept;
    GbEvaluator& operator=(GbEvaluator&&) noexcept;

    const ModularParameter& parameter() const { return mp_; }

    // Multiprecision path; results are memoized on (z, prec).
    GbValue eval(const mp::Complex& z, long prec) const;
    // log G continued along the strip-reduction path from the central strip.
    GbValue log_eval(const mp::Complex& z, long prec) const { return eval(z, prec); }
    // g_b(x) = conj(zeta) / G(Q/2 + log x / (2 pi i b)), given log x.
    mp::Complex small_g_log(const mp::Complex& log_x, long prec) const;

    // Leading asymptotic form: conj(zeta) as Im z -> +inf, zeta e^{i pi z(z-Q)} as Im z -> -inf.
    // Throws std::domain_error when |Im z| < min_abs_im.
    mp::Complex asymptotic(const mp::Complex& z, long prec, double min_abs_im = 5.0) const;

    // Double path, memoized on the exact bits of z.
    cd eval(cd z) const;
    cd log_eval(cd z) const;
    cd small_g_log(cd log_x) const;
    cd small_g(cd x) const { return small_g_log(std::log(x)); }

    std::uint64_t cache_hits() const;
    std::uint64_t cache_misses() const;
    void clear_cache() const;

private:
    struct Cache;
    ModularParameter mp_;
    std::unique_ptr<Cache> cache_;
};

// Uncached reference evaluation in double precision; used by tests and by the cache miss path.
cd gb_log_double(const ModularParameter& mp, cd z, double* err_estimate = nullptr);

}  // namespace qgv
