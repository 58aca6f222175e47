#include <benchmark/benchmark.h>

#include "strips/assemble.hpp"
#include "strips/eigensolver.hpp"
#include "strips/function_spec.hpp"
#include "strips/geometry.hpp"
#include "strips/grid.hpp"

namespace {

strips::StripGeometry bench_geometry() {
  return strips::StripGeometry(0.5, strips::FunctionSpec::gaussian_bump(0.3, 0.0, 2.0),
                               strips::FunctionSpec::constant(1.0),
                               strips::FunctionSpec::constant(0.0));
}

void BM_assemble_stiffness(benchmark::State& state) {
  const auto g = bench_geometry();
  const strips::Grid2D grid(12.0, 0.5, static_cast<int>(state.range(0)), 60);
  for (auto _ : state) {
    benchmark::DoNotOptimize(strips::assemble_stiffness(g, grid));
  }
}
BENCHMARK(BM_assemble_stiffness)->Arg(300)->Arg(600)->Unit(benchmark::kMillisecond);

void BM_smallest_eig_2d(benchmark::State& state) {
  const auto g = bench_geometry();
  const strips::Grid2D grid(12.0, 0.5, static_cast<int>(state.range(0)), 60);
  const auto A = strips::assemble_stiffness(g, grid);
  const auto B = strips::assemble_mass(g, grid);
  strips::EigOptions opt;
  opt.tol = 1e-8;
  opt.max_iter = 2000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(strips::smallest_eig(A, B, opt).value);
  }
}
BENCHMARK(BM_smallest_eig_2d)->Arg(300)->Arg(600)->Unit(benchmark::kMillisecond);

}  // namespace
