#include "qgv/analytic.hpp"

#include <boost/rational.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace qgv::an {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cd kI{0.0, 1.0};

NodePtr make(NodeKind k, cd p0 = {}, cd p1 = {}, cd p2 = {}, int sign = 1, std::vector<NodePtr> ch = {}) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->p0 = p0;
    n->p1 = p1;
    n->p2 = p2;
    n->sign = sign;
    n->children = std::move(ch);
    return n;
}

std::size_t count_nodes(const Node& n, NodeKind k) {
    std::size_t c = n.kind == k ? 1 : 0;
    for (const auto& ch : n.children) c += count_nodes(*ch, k);
    return c;
}

cd eval_node(const GbEvaluator& gb, const Node& n, cd z) {
    switch (n.kind) {
        case NodeKind::Gaussian: {
            const cd d = z - n.p1;
            return std::exp(-kPi * n.p0 * d * d + n.p2 * z);
        }
        case NodeKind::ExpAffine:
            return std::exp(n.p0 + n.p1 * z);
        case NodeKind::GbFactor: {
            const cd lg = gb.log_eval(n.p0 * z + n.p1);
            return std::exp(n.sign > 0 ? lg : -lg);
        }
        case NodeKind::Shift:
            return eval_node(gb, *n.children[0], z + n.p0);
        case NodeKind::Scalar:
            return n.p0;
        case NodeKind::Product: {
            cd v{1.0, 0.0};
            for (const auto& ch : n.children) v *= eval_node(gb, *ch, z);
            return v;
        }
        case NodeKind::Sum: {
            cd v{0.0, 0.0};
            for (const auto& ch : n.children) v += eval_node(gb, *ch, z);
            return v;
        }
    }
    return {};
}

double rat(const sym::Rational& r) { return boost::rational_cast<double>(r); }

// theta with phase = e^{i pi theta}
double phase_angle(const sym::PhaseScalar& p, double b) {
    return rat(p.c0) + rat(p.c2) * b * b + rat(p.cm2) / (b * b);
}

struct UForm {
    double theta = 0, a = 0, d = 0;
    cd central{};  // sum_j n_j nu_j
};

UForm u_form(const sym::ExpMonomial& m, double b, std::array<double, 2> nu, const char* what) {
    for (int i = 1; i < sym::kPositions; ++i)
        if (m.lin.a(i) != sym::Rational(0) || m.lin.d(i) != sym::Rational(0))
            throw std::invalid_argument(std::string(what) + ": only the u coordinate is supported");
    UForm f;
    f.theta = phase_angle(m.phase, b);
    f.a = rat(m.lin.a(sym::U));
    f.d = rat(m.lin.d(sym::U));
    f.central = rat(m.lin.n(0)) * nu[0] + rat(m.lin.n(1)) * nu[1];
    return f;
}

}  // namespace

PointwiseFunction::PointwiseFunction() : root_(make(NodeKind::Scalar, 1.0)) {}

PointwiseFunction PointwiseFunction::gaussian(cd a, cd center, cd slope) {
    if (a.real() <= 0) throw std::invalid_argument("gaussian: Re a must be positive");
    return PointwiseFunction(make(NodeKind::Gaussian, a, center, slope));
}

PointwiseFunction PointwiseFunction::exp_affine(cd c0, cd c1) {
    return PointwiseFunction(make(NodeKind::ExpAffine, c0, c1));
}

PointwiseFunction PointwiseFunction::gb_factor(int sign, cd slope, cd offset) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("gb_factor: sign must be +-1");
    return PointwiseFunction(make(NodeKind::GbFactor, slope, offset, {}, sign));
}

PointwiseFunction PointwiseFunction::scalar(cd c) { return PointwiseFunction(make(NodeKind::Scalar, c)); }

PointwiseFunction PointwiseFunction::operator*(const PointwiseFunction& o) const {
    std::vector<NodePtr> ch;
    for (const auto* x : {&root_, &o.root_}) {
        if ((*x)->kind == NodeKind::Product)
            ch.insert(ch.end(), (*x)->children.begin(), (*x)->children.end());
        else
            ch.push_back(*x);
    }
    return PointwiseFunction(make(NodeKind::Product, {}, {}, {}, 1, std::move(ch)));
}

PointwiseFunction PointwiseFunction::operator+(const PointwiseFunction& o) const {
    std::vector<NodePtr> ch;
    for (const auto* x : {&root_, &o.root_}) {
        if ((*x)->kind == NodeKind::Sum)
            ch.insert(ch.end(), (*x)->children.begin(), (*x)->children.end());
        else
            ch.push_back(*x);
    }
    return PointwiseFunction(make(NodeKind::Sum, {}, {}, {}, 1, std::move(ch)));
}

PointwiseFunction PointwiseFunction::shifted(cd delta) const {
    return PointwiseFunction(make(NodeKind::Shift, delta, {}, {}, 1, {root_}));
}

std::size_t PointwiseFunction::count(NodeKind k) const { return count_nodes(*root_, k); }

PointwiseFunction test_gaussian(double center, double beta) { return PointwiseFunction::gaussian(1.0, center, beta); }

AnalyticEngine::AnalyticEngine(ModularParameter mp) : gb_(std::move(mp)) {
    const auto g = rep::sl2_generators();
    K_ = {"K", {}, g.K[0]};
    E_ = rep::conjugated_form(g.E[0]);
    F_ = rep::conjugated_form(g.F[0]);
}

cd AnalyticEngine::eval(const PointwiseFunction& f, cd z) const { return eval_node(gb_, *f.root(), z); }

PointwiseFunction AnalyticEngine::apply_power(const rep::ConjugatedGenerator& gen, cd sigma, std::array<double, 2> nu,
                                              const PointwiseFunction& f) const {
    const double b = parameter().b();
    const double Q = parameter().Q();
    const cd zeta = parameter().zeta();
    // g_b(W)(x) = conj(zeta) / G_b(Q/2 - i log W(x) / (2 pi b)) for W = e^{i pi theta} e^{pi b (a x + n.nu)}
    PointwiseFunction left, right;
    for (const auto& w : gen.prefix) {
        const UForm uf = u_form(w, b, nu, "apply_power");
        if (uf.d != 0.0) throw std::invalid_argument("apply_power: prefix arguments must be multiplication operators");
        const cd slope = -kI * uf.a / 2.0;
        const cd offset = Q / 2 + uf.theta / (2 * b) - kI * uf.central / 2.0;
        left = left * PointwiseFunction::scalar(std::conj(zeta)) * PointwiseFunction::gb_factor(-1, slope, offset);
        right = right * PointwiseFunction::scalar(zeta) * PointwiseFunction::gb_factor(1, slope, offset);
    }
    // core^{i sigma} = e^{-pi theta sigma} e^{i sigma pi b (a x + n.nu)} e^{-sigma b d d/dx} e^{-i pi sigma^2 b^2 a d / 2}
    const UForm c = u_form(gen.core, b, nu, "apply_power");
    const cd c0 = -kPi * c.theta * sigma - kI * kPi * sigma * sigma * b * b * c.a * c.d / 2.0 +
                  kI * sigma * kPi * b * c.central;
    const cd c1 = kI * sigma * kPi * b * c.a;
    const cd shift = -sigma * b * c.d;
    PointwiseFunction inner = right * f;
    return left * PointwiseFunction::exp_affine(c0, c1) * (shift == cd{} ? inner : inner.shifted(shift));
}

PointwiseFunction AnalyticEngine::apply_sum(const std::vector<sym::ExpMonomial>& terms, std::array<double, 2> nu,
                                            const PointwiseFunction& f) const {
    const double b = parameter().b();
    // e^{i pi theta} e^{pi b (a x + n.nu) + i b d d/dx} h = e^{i pi theta + i pi b^2 a d / 2 + pi b (a x + n.nu)} h(x + i b d)
    std::optional<PointwiseFunction> sum;
    for (const auto& m : terms) {
        const UForm c = u_form(m, b, nu, "apply_sum");
        const cd c0 = kI * kPi * c.theta + kI * kPi * b * b * c.a * c.d / 2.0 + kPi * b * c.central;
        const cd c1 = kPi * b * c.a;
        PointwiseFunction part = PointwiseFunction::exp_affine(c0, c1) * (c.d == 0.0 ? f : f.shifted(kI * b * c.d));
        sum = sum ? *sum + part : part;
    }
    return sum ? *sum : PointwiseFunction::scalar(0.0);
}

quad::QuadratureResult AnalyticEngine::matrix_element(const PointwiseFunction& f, const std::vector<WordFactor>& word,
                                                      const PointwiseFunction& g, std::array<double, 2> nu,
                                                      const MatrixOptions& opt) const {
    PointwiseFunction h = g;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        if (const auto* p = std::get_if<Power>(&*it))
            h = apply_power(p->gen, p->sigma, nu, h);
        else
            h = std::get<PointwiseFunction>(*it) * h;
    }
    // conj(f(conj z)) continues conj(f) off the real line
    auto integrand = [&](cd z) { return std::conj(eval(f, std::conj(z))) * eval(h, z); };
    quad::LineOptions lo;
    lo.execution = opt.execution;
    lo.abs_tol = opt.abs_tol;
    return quad::integrate_line(integrand, opt.line_shift, opt.tol, lo);
}

cd AnalyticEngine::divided_power_prefactor(cd sigma) const {
    return gb_.eval(-kI * parameter().b() * sigma);
}

void AnalyticEngine::kac_defaults(KacCheckSpec& spec) const {
    const double b = parameter().b();
    // tau = 0 and tau = i min(1, b^-2) are the nearest poles of G_b(i b tau) on the contour side
    if (spec.eps == 0.0) spec.eps = std::min(1.0, 1.0 / (b * b)) / 2;
    // the detour must stay clear of the real poles at tau = -s, -t
    if (spec.radius == 0.0)
        spec.radius = std::min({spec.eps / 2, std::abs(spec.s) / 2, std::abs(spec.t) / 2});
    // After the shift by -b(t + tau) from the F power, G_b(2iu + ib(s+t+tau)) has its poles at
    // Im u >= b Im tau / 2 and the g_b factors have theirs at Im u <= -Q/2 + b Im tau; the u line
    // sits between both sets for every tau on the contour, so the kernel is analytic there.
    if (spec.u_shift == 0.0) spec.u_shift = (-b * spec.radius / 2 + (-parameter().Q() / 2 + b * spec.eps)) / 2;
}

KacReport AnalyticEngine::kac_check(const KacCheckSpec& in) const {
    KacCheckSpec spec = in;
    kac_defaults(spec);
    const double b = parameter().b();
    const double Q = parameter().Q();
    const double s = spec.s, t = spec.t;
    const std::array<double, 2> nu{spec.nu, 0.0};
    if (s == 0.0 || t == 0.0 || s + t == 0.0) throw std::invalid_argument("kac_check: s, t and s+t must be nonzero");

    MatrixOptions inner;
    inner.tol = spec.tol * 1e-2;
    inner.execution = quad::Execution::Serial;

    KacReport r;
    r.eps = spec.eps;
    r.radius = spec.radius;
    r.u_shift = spec.u_shift;
    const cd pre = divided_power_prefactor(s) * divided_power_prefactor(t);
    r.lhs = pre * matrix_element(spec.f, {Power{E_, s}, Power{F_, t}}, spec.g, nu, inner).value;

    MatrixOptions kin = inner;
    kin.line_shift = spec.u_shift;
    auto kernel = [&](cd tau) -> cd {
        const cd ratio_offset1 = kI * b * (s + t + tau);
        const cd ratio_offset2 = kI * b * (s + t + 2.0 * tau);
        PointwiseFunction R = PointwiseFunction::scalar(gb_.eval(kI * b * tau)) *
                              PointwiseFunction::gb_factor(1, 2.0 * kI, ratio_offset1) *
                              PointwiseFunction::gb_factor(-1, 2.0 * kI, ratio_offset2);
        const cd pre_tau =
            std::exp(kPi * b * Q * tau) * divided_power_prefactor(t + tau) * divided_power_prefactor(s + tau);
        // the matrix element only needs absolute accuracy relative to its weight in the tau integral
        MatrixOptions opt = kin;
        opt.abs_tol = inner.tol * std::abs(r.lhs) / std::max(std::abs(pre_tau), 1e-300);
        cd me;
        try {
            me = matrix_element(spec.f, {Power{F_, t + tau}, Power{K_, -tau}, R, Power{E_, s + tau}}, spec.g, nu, opt)
                     .value;
        } catch (const quad::QuadratureError& e) {
            std::ostringstream os;
            os << "kac kernel at tau = " << tau << ": " << e.what();
            throw quad::QuadratureError(os.str());
        }
        return pre_tau * me;
    };

    quad::LineOptions lo;
    quad::ContourSpec cs;
    cs.base_shift = spec.eps;
    cs.detours.push_back({0.0, spec.radius, quad::Side::Below});
    const auto detour = quad::integrate_contour(kernel, cs, spec.tol, lo);
    const auto split = quad::residue_split(kernel, 0.0, quad::Side::Below, spec.eps, spec.radius, spec.tol, lo);
    r.rhs_detour = detour.value;
    r.rhs_split = split.value;
    r.tau_nodes = detour.nodes_used;

    // 2 pi i Res_{tau=0} = (1/b) G_b(-ibs) G_b(-ibt) <f, F^{it} E^{is} g>, since Res_{z=0} G_b = 1/(2 pi)
    const auto line = quad::integrate_line(kernel, spec.eps, spec.tol, lo);
    r.rhs_closed = line.value + pre / b * matrix_element(spec.f, {Power{F_, t}, Power{E_, s}}, spec.g, nu, inner).value;

    r.ratio = r.rhs_detour / r.lhs;
    r.deviation = std::abs(r.lhs - r.rhs_detour) / std::abs(r.lhs);
    r.contour_agreement = std::abs(r.rhs_detour - r.rhs_split) / std::abs(r.rhs_detour);
    return r;
}

cd AnalyticEngine::phi_lambda(double lambda, cd u) const {
    const double Q = parameter().Q();
    return std::exp(kI * kPi * u * u + kPi * Q * u + gb_.log_eval(-kI * u + kI * lambda) +
                    gb_.log_eval(-kI * u - kI * lambda));
}

EigenReport AnalyticEngine::eigenfunction_check(const EigenCheckSpec& in) const {
    const double Q = parameter().Q();
    const cd zb = std::conj(parameter().zeta());
    std::vector<cd> us = in.u_points;
    if (us.empty()) us = {{-0.7, 0.4}, {-0.2, 0.4}, {0.1, 0.4}, {0.5, 0.4}, {1.1, 0.4}};
    const cd w = in.w;
    const double lam = in.lambda;
    auto small_g_pos = [&](cd x) { return zb / gb_.eval(Q / 2 - kI * w + kI * x); };  // g_b(e^{2 pi b w} e^{-2 pi b x})
    auto small_g_neg = [&](cd x) { return zb / gb_.eval(Q / 2 - kI * w - kI * x); };  // g_b(e^{2 pi b w} e^{2 pi b x})
    const cd eigenvalue = zb / gb_.eval(Q / 2 - kI * (lam + w)) * (zb / gb_.eval(Q / 2 - kI * (w - lam)));

    EigenReport r;
    for (cd u : us) {
        // g_b(e^{2 pi b w} e^{i b d/du}) = int dtau e^{pi Q tau + 2 pi i w tau} G_b(-i tau) e^{-tau d/du},
        // on a tau line above the pole at 0 and below the poles of Phi_lambda(u - tau)
        auto integrand = [&](cd tau) {
            return std::exp(kPi * Q * tau + 2.0 * kPi * kI * w * tau + gb_.log_eval(-kI * tau)) *
                   phi_lambda(lam, u - tau) * small_g_neg(u - tau);
        };
        quad::LineOptions lo;
        const cd lhs = small_g_pos(u) * quad::integrate_line(integrand, u.imag() / 2, in.tol, lo).value;
        r.ratios.push_back(lhs / (eigenvalue * phi_lambda(lam, u)));
    }
    cd sum{};
    for (cd x : r.ratios) sum += x;
    r.constant = sum / static_cast<double>(r.ratios.size());
    for (cd x : r.ratios) r.u_spread = std::max(r.u_spread, std::abs(x - r.ratios[0]) / std::abs(r.ratios[0]));
    r.unimodular = std::abs(std::abs(r.constant) - 1.0);
    return r;
}

double AnalyticEngine::measure(double lambda) const {
    const double b = parameter().b();
    return 4 * std::sinh(kPi * b * lambda) * std::sinh(kPi * lambda / b);
}

cd AnalyticEngine::transform(const PointwiseFunction& f, double lambda, const TransformSpec& spec) const {
    // Phi*_lambda(u) = conj(Phi_lambda(conj u)) on the line Im u = -u_shift
    auto integrand = [&](cd u) { return eval(f, u) * std::conj(phi_lambda(lambda, std::conj(u))); };
    quad::LineOptions lo;
    lo.execution = quad::Execution::Serial;
    return quad::integrate_line(integrand, -spec.u_shift, spec.tol * 1e-2, lo).value;
}

IsometryReport AnalyticEngine::isometry_check(const PointwiseFunction& f, const TransformSpec& spec) const {
    IsometryReport r;
    quad::LineOptions lo;
    r.norm_f = quad::integrate_line([&](cd x) { return cd(std::norm(eval(f, x))); }, 0.0, spec.tol, lo).value.real();

    std::mutex mu;
    std::map<double, cd> cache;
    auto F = [&](double lam) {
        {
            std::lock_guard<std::mutex> lock(mu);
            if (auto it = cache.find(lam); it != cache.end()) return it->second;
        }
        const cd v = transform(f, lam, spec);
        std::lock_guard<std::mutex> lock(mu);
        cache.emplace(lam, v);
        return v;
    };
    auto density = [&](cd lam) { return cd(std::norm(F(lam.real())) * measure(lam.real())); };

    // unit segments until |F|^2 mu has decayed to `tail` of its peak
    double peak = 0.0, total = 0.0;
    int k = 0;
    for (; k < 40; ++k) {
        total += quad::integrate_segment(density, double(k), double(k + 1), spec.tol).value.real();
        const double end = density(double(k + 1)).real();
        for (double x = k + 0.25; x <= k + 1.0; x += 0.25) peak = std::max(peak, density(x).real());
        if (end < spec.tail * peak) {
            r.tail = end / peak;
            break;
        }
    }
    if (k == 40) throw quad::QuadratureError("isometry_check: |F|^2 mu did not decay within lambda = 40");
    r.cutoff = k + 1;
    r.norm_F = total;
    r.ratio = r.norm_F / r.norm_f;

    // inverse at fixed eps and eps/2, linearly extrapolated to eps = 0
    const double u0 = spec.inverse_point;
    auto inverse = [&](double eps) {
        auto integrand = [&](cd lam) {
            const double l = lam.real();
            return F(l) * phi_lambda(l, cd(u0, eps)) * measure(l);
        };
        return std::exp(-2 * kPi * eps * u0) * quad::integrate_segment(integrand, 0.0, r.cutoff, spec.tol).value;
    };
    r.f_point = eval(f, u0);
    r.f_roundtrip = 2.0 * inverse(spec.inverse_eps / 2) - inverse(spec.inverse_eps);
    r.roundtrip_error = std::abs(r.f_roundtrip - r.f_point) / std::abs(r.f_point);
    return r;
}

mp::Complex phi_lambda_eval(const GbEvaluator& gb, const mp::Real& lambda, const mp::Complex& u, long prec) {
    mp::PrecisionScope scope(prec + 32);
    const mp::Complex i(mp::Real(0.0), mp::Real(1.0));
    const mp::Real pi = mp::Real::pi();
    const mp::Complex a = gb.eval(-(i * u) + i * mp::Complex(lambda), prec).log_value;
    const mp::Complex c = gb.eval(-(i * u) - i * mp::Complex(lambda), prec).log_value;
    const mp::Complex e = i * pi * u * u + pi * gb.parameter().Q_mp() * u + a + c;
    mp::PrecisionScope out(prec);
    return mp::rebind(mp::exp(e));
}

}  // namespace qgv::an
