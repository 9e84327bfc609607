#include <benchmark/benchmark.h>

#include <cmath>

#include "wfdrift/grid.hpp"
#include "wfdrift/integrator.hpp"
#include "wfdrift/linear_solver.hpp"
#include "wfdrift/schemes.hpp"
#include "wfdrift/viscosity.hpp"
#include "wfdrift/wright_fisher.hpp"

namespace wfdrift {
namespace {

void BM_Step(benchmark::State& state) {
  const auto kind = static_cast<SchemeKind>(state.range(0));
  const Grid grid(static_cast<int>(state.range(1)));
  const SchemeOperator op = assemble_operator(kind, grid, 1e-4);
  State s = gaussian_initial(grid, {0.4, 0.01, false});
  for (auto _ : state) {
    s = step(s, op);
    benchmark::DoNotOptimize(s.f.data());
  }
  state.SetItemsProcessed(state.iterations());
  state.SetLabel(std::string(to_string(kind)));
}
BENCHMARK(BM_Step)
    ->ArgsProduct({{static_cast<int>(SchemeKind::Upwind), static_cast<int>(SchemeKind::CentralSplit),
                    static_cast<int>(SchemeKind::CentralWhole)},
                   {100, 1000, 10000}});

void BM_Assemble(benchmark::State& state) {
  const Grid grid(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_operator(SchemeKind::CentralWhole, grid, 1e-4));
  }
}
BENCHMARK(BM_Assemble)->Arg(1000)->Arg(10000);

void BM_SolveTridiagonal(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  TridiagonalSystem sys{TridiagonalMatrix(n), std::vector<double>(n, 1.0)};
  sys.matrix.diag.assign(n, 4.0);
  sys.matrix.sub.assign(n - 1, -1.0);
  sys.matrix.super.assign(n - 1, -1.0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_tridiagonal(sys));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveTridiagonal)->RangeMultiplier(10)->Range(100, 100000)->Complexity();

void BM_Pairing(benchmark::State& state) {
  const ViscosityProfile profile(std::pow(10.0, -static_cast<double>(state.range(0))));
  const TestFunction phi = make_test_function(TestFunctionKind::Bump0);
  for (auto _ : state) benchmark::DoNotOptimize(pair_with_test_function(profile, phi));
}
BENCHMARK(BM_Pairing)->DenseRange(2, 8, 3);

void BM_WfStep(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  Rng rng = trial_rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(wf_step(n, n / 2, rng));
}
BENCHMARK(BM_WfStep)->Arg(100)->Arg(10000)->Arg(1000000);

}  // namespace
}  // namespace wfdrift

BENCHMARK_MAIN();
