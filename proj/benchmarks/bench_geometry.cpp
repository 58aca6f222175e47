#include <benchmark/benchmark.h>

#include <vector>

#include "strips/frenet.hpp"
#include "strips/function_spec.hpp"
#include "strips/geometry.hpp"
#include "strips/quadrature.hpp"

namespace {

void BM_metric_eval(benchmark::State& state) {
  const strips::StripGeometry g(0.5, strips::FunctionSpec::gaussian_bump(0.4, 0.0, 1.5),
                                strips::FunctionSpec::gaussian_bump(1.0, 1.0, 2.0),
                                strips::FunctionSpec::constant(0.3));
  double s = -5.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(strips::eval_h(g, s, 0.25));
    s += 1e-4;
    if (s > 5.0) s = -5.0;
  }
}
BENCHMARK(BM_metric_eval);

void BM_frenet_integration(benchmark::State& state) {
  std::vector<double> grid;
  for (int i = 0; i <= 100; ++i) grid.push_back(0.1 * i);
  const auto kappa = strips::FunctionSpec::constant(1.0);
  const auto tau = strips::FunctionSpec::constant(0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(strips::integrate_frenet(kappa, tau, grid));
  }
}
BENCHMARK(BM_frenet_integration)->Unit(benchmark::kMillisecond);

void BM_gauss_legendre_panel(benchmark::State& state) {
  const auto breaks = strips::uniform_breaks(-10.0, 10.0, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(strips::integrate_panels(
        breaks, 16, [](double x) { return std::exp(-x * x); }));
  }
}
BENCHMARK(BM_gauss_legendre_panel);

}  // namespace

BENCHMARK_MAIN();
