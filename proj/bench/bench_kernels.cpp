// Serial reference against the OpenMP kernels on G_b-heavy integrands.
#include "qgv/analytic.hpp"
#include "qgv/quadrature.hpp"
#include "qgv/special_functions.hpp"

#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

using namespace qgv;
using quad::Execution;

namespace {

// 1/G_b along a line inside the strip, damped by a Gaussian. Each call gets a fresh
// evaluator so the timed loop never sees a warm cache.
quad::Integrand integrand() {
    auto gb = std::make_shared<GbEvaluator>(ModularParameter(0.75));
    return [gb](quad::cd t) {
        return std::exp(-3.14159265358979323846 * t * t) / gb->eval(quad::cd(0.6, 0.0) + quad::cd(0, 1) * t);
    };
}

void BM_evaluate(benchmark::State& state, Execution e) {
    std::vector<quad::cd> nodes(static_cast<std::size_t>(state.range(0))), out(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) nodes[k] = quad::cd(-4.0 + 8.0 * k / nodes.size(), 0.05);
    for (auto _ : state) {
        state.PauseTiming();
        const auto f = integrand();
        state.ResumeTiming();
        quad::kernels::evaluate(e, f, nodes, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_integrate_line(benchmark::State& state, Execution e) {
    quad::LineOptions opt;
    opt.execution = e;
    for (auto _ : state) {
        state.PauseTiming();
        const auto f = integrand();
        state.ResumeTiming();
        benchmark::DoNotOptimize(quad::integrate_line(f, 0.05, 1e-12, opt).value);
    }
}

void BM_matrix_element(benchmark::State& state, Execution e) {
    const auto f = an::test_gaussian(0.2, 0.3), g = an::test_gaussian(-0.1, -0.2);
    an::MatrixOptions opt;
    opt.execution = e;
    for (auto _ : state) {
        state.PauseTiming();
        const an::AnalyticEngine engine(ModularParameter(0.75));
        state.ResumeTiming();
        benchmark::DoNotOptimize(engine.matrix_element(f, {an::Power{engine.E(), quad::cd(0, -1)}}, g, {0.4, 0.0}, opt).value);
    }
}

}  // namespace

BENCHMARK_CAPTURE(BM_evaluate, serial, Execution::Serial)->Arg(256)->Arg(4096);
BENCHMARK_CAPTURE(BM_evaluate, parallel, Execution::Parallel)->Arg(256)->Arg(4096);
BENCHMARK_CAPTURE(BM_integrate_line, serial, Execution::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_integrate_line, parallel, Execution::Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_matrix_element, serial, Execution::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_matrix_element, parallel, Execution::Parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
