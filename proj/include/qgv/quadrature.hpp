// Contour quadrature for integrands analytic near the real axis.
//
// Infinite lines use the trapezoid rule with step halving (exponentially convergent for
// integrands analytic in a strip and decaying exponentially). Finite pieces of a detour use
// tanh-sinh. Node values are produced by a kernel (serial or OpenMP) and always summed
// serially in index order, so both kernels give bitwise identical results.
#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace qgv::quad {

using cd = std::complex<double>;
using Integrand = std::function<cd(cd)>;

enum class Execution { Serial, Parallel };

// Process-wide default used when options do not override it.
void set_default_execution(Execution e);
Execution default_execution();

namespace kernels {
// out[i] = f(nodes[i]). The parallel version rethrows the first exception raised by f.
void evaluate_serial(const Integrand& f, std::span<const cd> nodes, std::span<cd> out);
void evaluate_parallel(const Integrand& f, std::span<const cd> nodes, std::span<cd> out);
void evaluate(Execution e, const Integrand& f, std::span<const cd> nodes, std::span<cd> out);
// sum_i w[i] * v[i] in index order
cd weighted_sum(std::span<const cd> weights, std::span<const cd> values);
}  // namespace kernels

enum class Side { Below, Above };

struct Detour {
    cd center;
    double radius;
    Side side;
};

struct ContourSpec {
    double base_shift = 0.0;  // the contour follows Im t = base_shift away from detours
    std::vector<Detour> detours;
};

struct LineOptions {
    double h0 = 0.25;          // coarsest trapezoid step
    double max_extent = 400;   // |Re t| beyond this is treated as non-decay
    int max_levels = 10;
    double abs_tol = -1;       // negative: derived from tol and the L1 norm
    Execution execution = default_execution();
};

struct QuadratureResult {
    cd value{0.0, 0.0};
    double err_estimate = 0.0;
    std::size_t nodes_used = 0;
};

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// int_{R + i shift} f(t) dt
QuadratureResult integrate_line(const Integrand& f, double shift, double tol, const LineOptions& opt = {});

// int_a^b f along the straight segment, tanh-sinh
QuadratureResult integrate_segment(const Integrand& f, cd a, cd b, double tol,
                                   Execution e = default_execution());

// Arc z = center + r e^{i theta}, theta from theta0 to theta1, tanh-sinh in theta.
QuadratureResult integrate_arc(const Integrand& f, cd center, double r, double theta0, double theta1,
                               double tol, Execution e = default_execution());

// Line at base_shift deformed around each detour center by a semicircle on the requested side.
QuadratureResult integrate_contour(const Integrand& f, const ContourSpec& spec, double tol,
                                   const LineOptions& opt = {});

// Residue at an isolated simple pole from a circle integral; throws if the pole is not simple.
QuadratureResult residue(const Integrand& f, cd pole, double radius, double tol,
                         Execution e = default_execution());

// Same contour as a single detour around `pole`, realized as the straight line plus
// +-2 pi i Res. A line already on the requested side of the pole needs no correction.
QuadratureResult residue_split(const Integrand& f, cd pole, Side side, double shift, double radius,
                               double tol, const LineOptions& opt = {});

}  // namespace qgv::quad
