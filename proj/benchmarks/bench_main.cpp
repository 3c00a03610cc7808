#include <benchmark/benchmark.h>

#include "cpdirac/hamiltonian.hpp"
#include "cpdirac/potential.hpp"
#include "cpdirac/solver.hpp"
#include "cpdirac/spectrum.hpp"
#include "cpdirac/symmetry.hpp"
#include "cpdirac/verify.hpp"

using namespace cpdirac;

static void BM_AssembleCpClass(benchmark::State& state) {
  const auto p = default_instance(Family::Exp);
  const GridSpec grid = build_grid(10.0, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_cp_class(grid, 1.0, p));
  }
}
BENCHMARK(BM_AssembleCpClass)->Arg(200)->Arg(400)->Arg(800);

static void BM_SymmetryReport(benchmark::State& state) {
  const auto p = default_instance(Family::Exp);
  const GridSpec grid = build_grid(10.0, static_cast<int>(state.range(0)));
  const auto op = build_cp_class(grid, 1.0, p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(symmetry_report(op));
  }
}
BENCHMARK(BM_SymmetryReport)->Arg(200)->Arg(400);

static void BM_DenseSpectrum(benchmark::State& state) {
  const auto p = default_instance(Family::OddPower);
  const GridSpec grid = build_grid(8.0, static_cast<int>(state.range(0)));
  const auto op = build_cp_class(grid, 1.0, p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(spectrum(op));
  }
}
BENCHMARK(BM_DenseSpectrum)->Arg(100)->Arg(200)->Arg(400)
    ->Unit(benchmark::kMillisecond);

static void BM_FirstOrderSolve(benchmark::State& state) {
  const auto p = default_instance(Family::Exp);
  const double window = verification_window(p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_first_order(p, 1.0, 2.0, {}, window));
  }
}
BENCHMARK(BM_FirstOrderSolve)->Unit(benchmark::kMillisecond);

static void BM_PhiFormSolve(benchmark::State& state) {
  const auto p = default_instance(Family::Exp);
  const double window = verification_window(p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_phi_form(p, 1.0, 2.0, {}, window));
  }
}
BENCHMARK(BM_PhiFormSolve)->Unit(benchmark::kMillisecond);

static void BM_RhoQuadrature(benchmark::State& state) {
  const auto p = default_instance(Family::X2Exp);
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(p.rho_from_quadrature(x));
    x = x < 2.4 ? x + 0.1 : 0.5;
  }
}
BENCHMARK(BM_RhoQuadrature);

BENCHMARK_MAIN();
