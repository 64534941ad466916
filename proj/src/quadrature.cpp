#include "qgv/quadrature.hpp"

#include <omp.h>

#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>

namespace qgv::quad {

namespace {
std::atomic<Execution> g_execution{Execution::Parallel};
constexpr double kPi = M_PI;
const cd kI{0.0, 1.0};

bool finite(cd z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
}  // namespace

void set_default_execution(Execution e) { g_execution = e; }
Execution default_execution() { return g_execution.load(); }

namespace kernels {

void evaluate_serial(const Integrand& f, std::span<const cd> nodes, std::span<cd> out) {
    for (std::size_t i = 0; i < nodes.size(); ++i) out[i] = f(nodes[i]);
}

void evaluate_parallel(const Integrand& f, std::span<const cd> nodes, std::span<cd> out) {
    std::exception_ptr first;
    const long n = static_cast<long>(nodes.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) {
        try {
            out[i] = f(nodes[i]);
        } catch (...) {
#pragma omp critical(qgv_quad_exception)
            if (!first) first = std::current_exception();
        }
    }
    if (first) std::rethrow_exception(first);
}

void evaluate(Execution e, const Integrand& f, std::span<const cd> nodes, std::span<cd> out) {
    // nested regions run serially inside an enclosing parallel kernel
    if (e == Execution::Parallel && !omp_in_parallel())
        evaluate_parallel(f, nodes, out);
    else
        evaluate_serial(f, nodes, out);
}

cd weighted_sum(std::span<const cd> weights, std::span<const cd> values) {
    cd s{0.0, 0.0};
    for (std::size_t i = 0; i < values.size(); ++i) s += weights[i] * values[i];
    return s;
}

}  // namespace kernels

namespace {

std::vector<cd> eval_nodes(Execution e, const Integrand& f, const std::vector<cd>& nodes) {
    std::vector<cd> out(nodes.size());
    kernels::evaluate(e, f, nodes, out);
    for (std::size_t i = 0; i < out.size(); ++i)
        if (!finite(out[i])) {
            std::ostringstream os;
            os << "integrand is not finite at " << nodes[i];
            throw QuadratureError(os.str());
        }
    return out;
}

// Extend one direction in blocks until |f| stays below `floor` for the whole block.
long find_extent(const Integrand& f, double shift, double h, int dir, const LineOptions& opt,
                 double& peak, std::vector<std::pair<long, cd>>& seen) {
    constexpr long kBlock = 16;
    long k = (dir > 0) ? 0 : -1;
    long last_big = k;
    for (;;) {
        std::vector<cd> nodes;
        std::vector<long> idx;
        for (long j = 0; j < kBlock; ++j, k += dir) {
            idx.push_back(k);
            nodes.emplace_back(k * h, shift);
        }
        if (std::abs(nodes.back().real()) > opt.max_extent)
            throw QuadratureError("integrand does not decay within the configured extent");
        auto vals = eval_nodes(opt.execution, f, nodes);
        for (std::size_t j = 0; j < vals.size(); ++j) {
            seen.emplace_back(idx[j], vals[j]);
            peak = std::max(peak, std::abs(vals[j]));
        }
        for (std::size_t j = 0; j < vals.size(); ++j)
            if (std::abs(vals[j]) > 1e-18 * peak) last_big = idx[j];
        if (std::abs(k - dir - last_big) >= kBlock) return last_big + dir * 4;
    }
}

}  // namespace

QuadratureResult integrate_line(const Integrand& f, double shift, double tol, const LineOptions& opt) {
    double h = opt.h0;
    double peak = 0;
    std::vector<std::pair<long, cd>> seen;
    const long k_hi = find_extent(f, shift, h, +1, opt, peak, seen);
    const long k_lo = find_extent(f, shift, h, -1, opt, peak, seen);
    const double x_lo = k_lo * h, x_hi = k_hi * h;

    // level 0 from the extent search, reordered by index
    std::vector<cd> vals(static_cast<std::size_t>(k_hi - k_lo + 1), cd{});
    std::vector<bool> have(vals.size(), false);
    for (auto& [k, v] : seen)
        if (k >= k_lo && k <= k_hi) {
            vals[k - k_lo] = v;
            have[k - k_lo] = true;
        }
    {
        std::vector<cd> nodes;
        std::vector<std::size_t> where;
        for (std::size_t i = 0; i < vals.size(); ++i)
            if (!have[i]) {
                nodes.emplace_back((k_lo + static_cast<long>(i)) * h, shift);
                where.push_back(i);
            }
        auto extra = eval_nodes(opt.execution, f, nodes);
        for (std::size_t i = 0; i < where.size(); ++i) vals[where[i]] = extra[i];
    }
    cd sum{0.0, 0.0};
    double l1 = 0;
    for (auto& v : vals) {
        sum += v;
        l1 += std::abs(v);
    }
    std::size_t used = vals.size();
    cd T = h * sum;
    QuadratureResult res{T, std::abs(T) + l1 * h, used};
    for (int level = 1; level <= opt.max_levels; ++level) {
        const long n = static_cast<long>(std::llround((x_hi - x_lo) / h));
        std::vector<cd> nodes;
        nodes.reserve(static_cast<std::size_t>(n));
        for (long i = 0; i < n; ++i) nodes.emplace_back(x_lo + (i + 0.5) * h, shift);
        auto mid = eval_nodes(opt.execution, f, nodes);
        for (auto& v : mid) {
            sum += v;
            l1 += std::abs(v);
        }
        used += mid.size();
        h *= 0.5;
        cd T_new = h * sum;
        double err = std::abs(T_new - T);
        T = T_new;
        res = {T, err, used};
        // a difference below the rounding level of the sum carries no information
        const double floor = 64 * std::numeric_limits<double>::epsilon() * l1 * h;
        const double abs_tol = std::max(opt.abs_tol >= 0 ? opt.abs_tol : tol * 1e-6 * l1 * h, floor);
        if (level >= 2 && (err <= tol * std::abs(T) || err <= abs_tol)) return res;
    }
    std::ostringstream os;
    os << "trapezoid refinement did not reach tol " << tol << " (last difference " << res.err_estimate << ")";
    throw QuadratureError(os.str());
}

namespace {

// tanh-sinh on [-1, 1] for g(x) (x in (-1,1)); g receives (x, 1 - |x|) for endpoint accuracy.
template <class G>
QuadratureResult tanh_sinh(const G& node_of, const Integrand& f, double tol, Execution e) {
    constexpr long kHalfCount = 7;  // level-0 nodes at k/2, |k| <= 7
    double h = 0.5;
    // node set at level 0: k h for |k h| <= kTmax; refinements add odd multiples
    std::vector<cd> nodes;
    std::vector<double> weights;
    auto push = [&](double t) {
        const double u = kPi / 2 * std::sinh(t);
        const double ch = std::cosh(u);
        const double w = kPi / 2 * std::cosh(t) / (ch * ch);
        const double one_minus = 2.0 / (std::exp(2 * std::abs(u)) + 1.0);  // 1 - |tanh u|
        const double x = std::tanh(u);
        cd dz;
        nodes.push_back(node_of(x, one_minus, dz));
        weights.push_back(w * 1.0);
        return dz;
    };
    std::vector<cd> jac;
    for (long k = -kHalfCount; k <= kHalfCount; ++k) jac.push_back(push(k * h));
    auto vals = eval_nodes(e, f, nodes);
    cd sum{0.0, 0.0};
    for (std::size_t i = 0; i < vals.size(); ++i) sum += weights[i] * jac[i] * vals[i];
    std::size_t used = vals.size();
    cd T = h * sum;
    for (int level = 1; level <= 8; ++level) {
        nodes.clear();
        weights.clear();
        jac.clear();
        const long n = kHalfCount << level;
        for (long k = -n; k < n; ++k) jac.push_back(push((k + 0.5) * h));
        auto mid = eval_nodes(e, f, nodes);
        for (std::size_t i = 0; i < mid.size(); ++i) sum += weights[i] * jac[i] * mid[i];
        used += mid.size();
        h /= 2;
        cd T_new = h * sum;
        double err = std::abs(T_new - T);
        T = T_new;
        if (level >= 2 && err <= tol * std::max(std::abs(T), 1e-300)) return {T, err, used};
        if (level >= 3 && err < 1e-15 * std::max(std::abs(T), 1.0)) return {T, err, used};
    }
    throw QuadratureError("tanh-sinh refinement did not converge");
}

}  // namespace

QuadratureResult integrate_segment(const Integrand& f, cd a, cd b, double tol, Execution e) {
    const cd half = (b - a) / 2.0;
    auto node_of = [&](double x, double one_minus, cd& dz) {
        dz = half;
        return x >= 0 ? b - half * one_minus : a + half * one_minus;
    };
    return tanh_sinh(node_of, f, tol, e);
}

QuadratureResult integrate_arc(const Integrand& f, cd center, double r, double theta0, double theta1,
                               double tol, Execution e) {
    const double mid = (theta0 + theta1) / 2, half = (theta1 - theta0) / 2;
    auto node_of = [&](double x, double, cd& dz) {
        const double th = mid + half * x;
        const cd ph = std::exp(kI * th);
        dz = half * kI * r * ph;
        return center + r * ph;
    };
    return tanh_sinh(node_of, f, tol, e);
}

QuadratureResult integrate_contour(const Integrand& f, const ContourSpec& spec, double tol,
                                   const LineOptions& opt) {
    QuadratureResult out = integrate_line(f, spec.base_shift, tol, opt);
    for (const Detour& d : spec.detours) {
        if (!(d.radius > 0)) throw QuadratureError("detour radius must be positive");
        const double y = spec.base_shift, yc = d.center.imag();
        const cd left_top(d.center.real() - d.radius, y), right_top(d.center.real() + d.radius, y);
        const cd left_mid = d.center - d.radius, right_mid = d.center + d.radius;
        cd extra{0.0, 0.0};
        double err = 0;
        std::size_t used = 0;
        auto acc = [&](const QuadratureResult& r, double sign) {
            extra += sign * r.value;
            err += r.err_estimate;
            used += r.nodes_used;
        };
        if (y != yc) {
            acc(integrate_segment(f, left_top, left_mid, tol, opt.execution), 1);
            acc(integrate_segment(f, right_mid, right_top, tol, opt.execution), 1);
        }
        if (d.side == Side::Below)
            acc(integrate_arc(f, d.center, d.radius, kPi, 2 * kPi, tol, opt.execution), 1);
        else
            acc(integrate_arc(f, d.center, d.radius, kPi, 0.0, tol, opt.execution), 1);
        acc(integrate_segment(f, left_top, right_top, tol, opt.execution), -1);
        out.value += extra;
        out.err_estimate += err;
        out.nodes_used += used;
    }
    return out;
}

QuadratureResult residue(const Integrand& f, cd pole, double radius, double tol, Execution e) {
    cd prev_res{}, prev_a2{};
    std::size_t used = 0;
    for (int n = 16; n <= 4096; n *= 2) {
        std::vector<cd> nodes(static_cast<std::size_t>(n)), ph(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            ph[k] = std::exp(kI * (2 * kPi * (k + 0.5) / n));
            nodes[k] = pole + radius * ph[k];
        }
        auto vals = eval_nodes(e, f, nodes);
        used += vals.size();
        cd res{}, a2{};
        for (int k = 0; k < n; ++k) {
            res += vals[k] * ph[k];
            a2 += vals[k] * ph[k] * ph[k];
        }
        double scale = 0.0;
        for (const auto& v : vals) scale += std::abs(v);
        scale *= radius / n;  // convergence floor, so a vanishing residue still converges
        res *= radius / n;
        a2 *= radius * radius / n;  // coefficient of (t - pole)^{-2}
        const double ref = std::max(std::abs(res), scale);
        if (n > 16 && std::abs(res - prev_res) <= tol * std::max(ref, 1e-300)) {
            if (std::abs(a2) > std::sqrt(tol) * std::max(ref * radius, 1e-300))
                throw QuadratureError("residue extraction non-convergent: pole is not simple");
            return {res, std::abs(res - prev_res), used};
        }
        prev_res = res;
        prev_a2 = a2;
    }
    (void)prev_a2;
    throw QuadratureError("residue extraction non-convergent");
}

QuadratureResult residue_split(const Integrand& f, cd pole, Side side, double shift, double radius,
                               double tol, const LineOptions& opt) {
    QuadratureResult line = integrate_line(f, shift, tol, opt);
    const bool line_above = shift > pole.imag();
    double sign = 0;
    if (side == Side::Below && line_above) sign = +1;
    if (side == Side::Above && !line_above) sign = -1;
    if (sign == 0) return line;
    QuadratureResult r = residue(f, pole, radius, tol, opt.execution);
    line.value += sign * 2.0 * kPi * kI * r.value;
    line.err_estimate += 2 * kPi * r.err_estimate;
    line.nodes_used += r.nodes_used;
    return line;
}

}  // namespace qgv::quad
