#include <benchmark/benchmark.h>

#include "strips/function_spec.hpp"
#include "strips/geometry.hpp"
#include "strips/hardy.hpp"
#include "strips/transverse.hpp"

namespace {

void BM_transverse_gap(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(strips::lambda_sl_for(0.5, 1.0, n));
  }
}
BENCHMARK(BM_transverse_gap)->Arg(512)->Arg(2048)->Arg(8192);

void BM_gap_interpolant_build(benchmark::State& state) {
  for (auto _ : state) {
    strips::LambdaInterpolant tab(0.5, 1.0, 65, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(tab(0.37));
  }
}
BENCHMARK(BM_gap_interpolant_build)->Arg(512)->Arg(2048);

void BM_certificate(benchmark::State& state) {
  const strips::StripGeometry g(0.5, strips::FunctionSpec::constant(0.0),
                                strips::FunctionSpec::gaussian_bump(1.0, 0.0, 1.5),
                                strips::FunctionSpec::constant(0.0));
  strips::CertificateSearch search;
  search.transverse_n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(strips::build_certificate(g, search));
  }
}
BENCHMARK(BM_certificate)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

}  // namespace
