#include "qgv/special_functions.hpp"

#include "strip_integral.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>

namespace qgv {

namespace {

constexpr double kPi = M_PI;
const cd I1{0.0, 1.0};

}  // namespace

ModularParameter ModularParameter::from_string(const std::string& text) {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size() || !(v > 0) || !std::isfinite(v))
        throw std::invalid_argument("b must be a positive real, got '" + text + "'");
    ModularParameter p(v);
    p.text_ = text;
    return p;
}

ModularParameter::ModularParameter(double b) : b_(b) {
    if (!(b > 0) || !std::isfinite(b)) throw std::invalid_argument("b must be positive");
    std::ostringstream os;
    os.precision(17);
    os << b;
    text_ = os.str();
}

cd ModularParameter::q() const { return std::exp(I1 * kPi * b_ * b_); }

cd ModularParameter::zeta() const {
    return std::exp(I1 * (kPi / 4 + kPi * (b_ * b_ + 1.0 / (b_ * b_)) / 12));
}

mp::Real ModularParameter::b_mp() const { return mp::Real(text_); }

mp::Real ModularParameter::m_mp() const {
    mp::Real b = b_mp();
    return b_ < 1.0 ? b : mp::Real(1.0) / b;
}

mp::Real ModularParameter::Q_mp() const {
    mp::Real b = b_mp();
    return b + mp::Real(1.0) / b;
}

mp::Complex ModularParameter::zeta_mp() const {
    mp::Real pi = mp::Real::pi();
    mp::Real b = b_mp();
    mp::Real b2 = b * b;
    mp::Real theta = pi / mp::Real(4.0) + pi * (b2 + mp::Real(1.0) / b2) / mp::Real(12.0);
    return mp::polar1(theta);
}

LatticePoint lattice_classify(const ModularParameter& mp, cd z) {
    const double b = mp.b(), ib = 1.0 / b, Q = mp.Q();
    LatticePoint best;
    best.distance = std::numeric_limits<double>::infinity();
    auto scan = [&](cd w, LatticeKind kind) {
        // lattice points w = k b + l / b, k, l >= 0
        const double re = w.real();
        const int kmax = std::max(0, static_cast<int>(std::ceil((re + 2.0) / b)));
        for (int k = 0; k <= kmax; ++k) {
            const double rest = (re - k * b) / ib;
            const int l0 = static_cast<int>(std::floor(rest));
            for (int l = std::max(0, l0 - 1); l <= std::max(0, l0 + 2); ++l) {
                double dist = std::abs(w - cd(k * b + l * ib, 0.0));
                if (dist < best.distance) best = {kind, k, l, dist};
            }
        }
    };
    scan(-z, LatticeKind::Pole);
    scan(z - Q, LatticeKind::Zero);
    if (best.distance > kLatticeGuard * Q) best.kind = LatticeKind::Regular;
    return best;
}

namespace {

template <class R, class C>
C log1m_exp(const C& a) {
    using std::exp;
    using std::log;
    return log(C(1.0) - exp(a));
}

// log G continued from the window [(Q - 1.5m)/2, (Q + 1.5m)/2] via unit m-steps.
template <class R, class C>
C log_gb_generic(C z, const detail::StripParams<R, C>& p, const C& log_zeta, double* err) {
    const R pi = detail::pi_of<R>();
    const R zero(0.0);
    const double md = detail::to_double(p.m), Qd = detail::to_double(p.Q);
    const double lo = (Qd - 1.5 * md) / 2, hi = (Qd + 1.5 * md) / 2;
    const C two_pi_i_m = detail::make_complex<R, C>(zero, pi * p.m * R(2.0));
    C acc = C(0.0);
    while (detail::to_double(z.real()) > hi) {
        z = z - C(p.m);
        acc += log1m_exp<R, C>(two_pi_i_m * z);
    }
    while (detail::to_double(z.real()) < lo) {
        acc -= log1m_exp<R, C>(two_pi_i_m * z);
        z = z + C(p.m);
    }
    C I = detail::strip_integral<R, C>(z, p, err);
    C base;
    if (detail::to_double(z.imag()) >= 0) {
        base = C(0.0) - log_zeta;  // log conj(zeta), zeta unimodular
    } else {
        C ipi = detail::make_complex<R, C>(zero, pi);
        base = log_zeta + ipi * z * (z - C(p.Q));
    }
    return base + acc - I;
}

void guard(const ModularParameter& mp, cd z) {
    LatticePoint lp = lattice_classify(mp, z);
    if (lp.kind != LatticeKind::Regular) {
        std::ostringstream os;
        os << "G_b argument " << z << " within " << kLatticeGuard << "*Q of a "
           << (lp.kind == LatticeKind::Pole ? "pole" : "zero") << " (k=" << lp.k << ", l=" << lp.l << ")";
        throw GbDomainError(os.str(), lp);
    }
}

}  // namespace

cd gb_log_double(const ModularParameter& mp, cd z, double* err_estimate) {
    guard(mp, z);
    detail::StripParams<double, cd> p{mp.b(), mp.m(), mp.Q(), 40.0};
    cd log_zeta = I1 * (kPi / 4 + kPi * (mp.b() * mp.b() + 1.0 / (mp.b() * mp.b())) / 12);
    double err = 0;
    cd out = log_gb_generic<double, cd>(z, p, log_zeta, &err);
    if (err_estimate) *err_estimate = err;
    return out;
}

struct GbEvaluator::Cache {
    struct KeyHash {
        std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const {
            return std::hash<std::uint64_t>()(k.first * 0x9E3779B97F4A7C15ULL ^ k.second);
        }
    };
    mutable std::shared_mutex mutex;
    std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, cd, KeyHash> fast;
    std::map<std::string, GbValue> precise;
    std::atomic<std::uint64_t> hits{0}, misses{0};
    static constexpr std::size_t kMaxFast = 1u << 21;
};

GbEvaluator::GbEvaluator(ModularParameter mp) : mp_(std::move(mp)), cache_(std::make_unique<Cache>()) {}
GbEvaluator::~GbEvaluator() = default;
GbEvaluator::GbEvaluator(GbEvaluator&&) noexcept = default;
GbEvaluator& GbEvaluator::operator=(GbEvaluator&&) noexcept = default;

cd GbEvaluator::log_eval(cd z) const {
    const std::pair<std::uint64_t, std::uint64_t> key{std::bit_cast<std::uint64_t>(z.real()),
                                                      std::bit_cast<std::uint64_t>(z.imag())};
    {
        std::shared_lock lock(cache_->mutex);
        auto it = cache_->fast.find(key);
        if (it != cache_->fast.end()) {
            ++cache_->hits;
            return it->second;
        }
    }
    cd v = gb_log_double(mp_, z);
    std::unique_lock lock(cache_->mutex);
    ++cache_->misses;
    if (cache_->fast.size() >= Cache::kMaxFast) cache_->fast.clear();
    cache_->fast.emplace(key, v);
    return v;
}

cd GbEvaluator::eval(cd z) const { return std::exp(log_eval(z)); }

cd GbEvaluator::small_g_log(cd log_x) const {
    const double b = mp_.b();
    cd z = mp_.Q() / 2 + log_x / (2 * kPi * I1 * b);
    cd log_zeta_bar = -I1 * (kPi / 4 + kPi * (b * b + 1.0 / (b * b)) / 12);
    return std::exp(log_zeta_bar - log_eval(z));
}

GbValue GbEvaluator::eval(const mp::Complex& z, long prec) const {
    guard(mp_, z.to_complex());
    const std::string key = std::to_string(prec) + "|" + z.real().to_string() + "|" + z.imag().to_string();
    {
        std::shared_lock lock(cache_->mutex);
        auto it = cache_->precise.find(key);
        if (it != cache_->precise.end()) {
            ++cache_->hits;
            return it->second;
        }
    }
    GbValue out;
    {
        mp::PrecisionScope scope(prec + 32);
        mp::Complex zz = mp::rebind(z);
        detail::StripParams<mp::Real, mp::Complex> p{mp_.b_mp(), mp_.m_mp(), mp_.Q_mp(),
                                                     (prec + 16) * std::log(2.0)};
        mp::Complex log_zeta = mp::log(mp_.zeta_mp());
        double err = 0;
        mp::Complex lg = log_gb_generic<mp::Real, mp::Complex>(zz, p, log_zeta, &err);
        out.log_value = lg;
        out.value = mp::exp(lg);
        out.err_bound = err;
        out.precision_bits = prec;
    }
    if (!(out.err_bound < std::ldexp(1.0, -static_cast<int>(prec / 2))))
        throw GbAccuracyError("G_b accuracy target not reached");
    std::unique_lock lock(cache_->mutex);
    ++cache_->misses;
    cache_->precise.emplace(key, out);
    return out;
}

mp::Complex GbEvaluator::small_g_log(const mp::Complex& log_x, long prec) const {
    mp::PrecisionScope scope(prec + 32);
    mp::Real pi = mp::Real::pi();
    mp::Real b = mp_.b_mp();
    mp::Complex denom(mp::Real(0.0), pi * b * mp::Real(2.0));
    mp::Complex z = mp::Complex(mp_.Q_mp() / mp::Real(2.0)) + log_x / denom;
    GbValue g = eval(z, prec);
    return mp::exp(mp::Complex(0.0) - mp::log(mp_.zeta_mp()) - g.log_value);
}

mp::Complex GbEvaluator::asymptotic(const mp::Complex& z, long prec, double min_abs_im) const {
    if (std::abs(z.imag().to_double()) < min_abs_im)
        throw std::domain_error("asymptotic form requested inside the band |Im z| < " + std::to_string(min_abs_im));
    mp::PrecisionScope scope(prec + 32);
    mp::Complex zeta = mp_.zeta_mp();
    if (z.imag().sign() >= 0) return mp::conj(zeta);
    mp::Complex ipi(mp::Real(0.0), mp::Real::pi());
    return zeta * mp::exp(ipi * z * (z - mp::Complex(mp_.Q_mp())));
}

std::uint64_t GbEvaluator::cache_hits() const { return cache_->hits.load(); }
std::uint64_t GbEvaluator::cache_misses() const { return cache_->misses.load(); }

void GbEvaluator::clear_cache() const {
    std::unique_lock lock(cache_->mutex);
    cache_->fast.clear();
    cache_->precise.clear();
}

}  // namespace qgv
