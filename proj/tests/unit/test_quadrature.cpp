#include "qgv/quadrature.hpp"
#include "qgv/special_functions.hpp"

#include <doctest.h>

#include <cmath>
#include <cstring>

using namespace qgv::quad;

namespace {
constexpr double kPi = 3.14159265358979323846;
const cd kI(0.0, 1.0);

cd gaussian(cd t) { return std::exp(-kPi * t * t); }
cd pole_gaussian(cd t) { return std::exp(-kPi * t * t) / t; }

bool same_bits(cd a, cd b) { return std::memcmp(&a, &b, sizeof(cd)) == 0; }
}  // namespace

TEST_CASE("Gaussian normalization on shifted lines") {
    for (double shift : {0.0, 0.3, -0.5}) {
        const auto r = integrate_line(gaussian, shift, 1e-13);
        CHECK(std::abs(r.value - 1.0) < 1e-13);
        CHECK(std::isfinite(r.err_estimate));
        CHECK(r.nodes_used > 0);
    }
}

TEST_CASE("segments and arcs") {
    // int_0^1 e^t dt
    const auto s = integrate_segment([](cd t) { return std::exp(t); }, 0.0, 1.0, 1e-14);
    CHECK(std::abs(s.value - (std::exp(1.0) - 1.0)) < 1e-14);
    // full circle around a simple pole
    const auto a = integrate_arc([](cd t) { return 1.0 / t; }, 0.0, 0.5, 0.0, 2 * kPi, 1e-14);
    CHECK(std::abs(a.value - 2 * kPi * kI) < 1e-13);
}

TEST_CASE("detour below a pole: principal value plus pi i Res") {
    ContourSpec spec;
    spec.base_shift = 0.3;
    spec.detours.push_back({0.0, 0.1, Side::Below});
    const auto r = integrate_contour(pole_gaussian, spec, 1e-13);
    // the principal value vanishes by oddness, Res = 1
    CHECK(std::abs(r.value - kPi * kI) < 1e-11);

    const auto split = residue_split(pole_gaussian, 0.0, Side::Below, 0.3, 0.1, 1e-13);
    CHECK(std::abs(split.value - r.value) < 1e-8);

    // passing above the pole gives -pi i; a line already above needs no correction
    const auto above = residue_split(pole_gaussian, 0.0, Side::Above, 0.3, 0.1, 1e-13);
    CHECK(std::abs(above.value + kPi * kI) < 1e-11);
}

TEST_CASE("detour radius does not change a contour integral") {
    ContourSpec a, b;
    a.base_shift = b.base_shift = 0.4;
    a.detours.push_back({0.0, 0.15, Side::Below});
    b.detours.push_back({0.0, 0.075, Side::Below});
    const auto ra = integrate_contour(pole_gaussian, a, 1e-13), rb = integrate_contour(pole_gaussian, b, 1e-13);
    CHECK(std::abs(ra.value - rb.value) < 1e-11);
}

TEST_CASE("pole-free integrand: contour and residue split equal the plain line") {
    ContourSpec spec;
    spec.base_shift = 0.2;
    spec.detours.push_back({0.0, 0.05, Side::Below});
    CHECK(std::abs(integrate_contour(gaussian, spec, 1e-13).value - 1.0) < 1e-12);
    const auto r = residue(gaussian, 0.0, 0.05, 1e-13);
    CHECK(std::abs(r.value) < 1e-13);
    CHECK(std::abs(residue_split(gaussian, 0.0, Side::Below, 0.2, 0.05, 1e-13).value - 1.0) < 1e-12);
}

TEST_CASE("residue of a double pole is rejected") {
    CHECK_THROWS_AS(residue([](cd t) { return 1.0 / (t * t) + 1.0 / t; }, 0.0, 0.1, 1e-12), QuadratureError);
}

TEST_CASE("non-decaying integrands and bad detours are reported") {
    CHECK_THROWS_AS(integrate_line([](cd) { return cd(1.0, 0.0); }, 0.0, 1e-10), QuadratureError);
    ContourSpec spec;
    spec.base_shift = 0.2;
    spec.detours.push_back({0.0, 0.0, Side::Below});
    CHECK_THROWS_AS(integrate_contour(gaussian, spec, 1e-10), QuadratureError);
}

TEST_CASE("serial and parallel kernels give bitwise identical results") {
    const qgv::GbEvaluator gb(qgv::ModularParameter(0.75));
    // Fourier integrand of g_b at x = 1.3
    auto f = [&](cd t) { return std::exp(kI * t * std::log(1.3) / 0.75 + kPi * gb.parameter().Q() * t) * gb.eval(-kI * t); };
    LineOptions serial, parallel;
    serial.execution = Execution::Serial;
    parallel.execution = Execution::Parallel;
    const auto a = integrate_line(f, -0.375, 1e-12, serial);
    gb.clear_cache();
    const auto b = integrate_line(f, -0.375, 1e-12, parallel);
    CHECK(same_bits(a.value, b.value));
    CHECK(a.nodes_used == b.nodes_used);

    const auto sa = integrate_segment(pole_gaussian, cd(-0.1, 0.3), cd(0.1, 0.3), 1e-13, Execution::Serial);
    const auto sb = integrate_segment(pole_gaussian, cd(-0.1, 0.3), cd(0.1, 0.3), 1e-13, Execution::Parallel);
    CHECK(same_bits(sa.value, sb.value));
}

TEST_CASE("parallel kernel propagates integrand exceptions") {
    std::vector<cd> nodes{1.0, 2.0, 3.0};
    std::vector<cd> out(3);
    auto bad = [](cd t) -> cd {
        if (t.real() == 2.0) throw std::runtime_error("boom");
        return t;
    };
    CHECK_THROWS_AS(kernels::evaluate_parallel(bad, nodes, out), std::runtime_error);
}
