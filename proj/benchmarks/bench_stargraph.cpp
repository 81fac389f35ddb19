// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "stargraph/asymptotics.hpp"
#include "stargraph/rootfinder.hpp"
#include "stargraph/secular.hpp"
#include "stargraph/symmetry.hpp"

namespace
{

using stargraph::complex;
using stargraph::make_model;

void BM_EvalReduced(benchmark::State &state)
{
  const auto model = make_model(static_cast<int>(state.range(0)), 1.0, 1.0);
  complex lambda(37.3, 0.4);
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(stargraph::eval_reduced(model, lambda));
    lambda += complex(1e-9, 0.0);
  }
}
BENCHMARK(BM_EvalReduced)->Arg(3)->Arg(8);

void BM_EvalWindow(benchmark::State &state)
{
  const auto model = make_model(5, 1.0, 1.0);
  const int M = static_cast<int>(state.range(0));
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(stargraph::eval_reduced_window(model, M, complex(1e-3, 2e-3)));
  }
}
BENCHMARK(BM_EvalWindow)->Arg(10)->Arg(1000);

void BM_OracleResidual(benchmark::State &state)
{
  const auto model = make_model(static_cast<int>(state.range(0)), 1.0, 1.0);
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(stargraph::oracle_residual(model, complex(33.0, 0.01)));
  }
}
BENCHMARK(BM_OracleResidual)->Arg(3)->Arg(8);

void BM_WindowWinding(benchmark::State &state)
{
  const auto model = make_model(static_cast<int>(state.range(0)), 1.0, 1.0);
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(stargraph::winding_count(model, stargraph::ContourRegion::window(20)));
  }
}
BENCHMARK(BM_WindowWinding)->Arg(3)->Arg(8)->Unit(benchmark::kMicrosecond);

void BM_WindowSearch(benchmark::State &state)
{
  const auto model = make_model(static_cast<int>(state.range(0)), 1.0, 1.0);
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(
        stargraph::find_roots_in_region(model, stargraph::ContourRegion::window(20)));
  }
}
BENCHMARK(BM_WindowSearch)->Arg(3)->Arg(8)->Unit(benchmark::kMicrosecond);

void BM_SolveBranch(benchmark::State &state)
{
  const auto model = make_model(8, 1.0, 1.0);
  const int M = static_cast<int>(state.range(0));
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(stargraph::solve_branch(model, M, 2));
  }
}
BENCHMARK(BM_SolveBranch)->Arg(3)->Arg(30)->Arg(300)->Unit(benchmark::kMicrosecond);

void BM_SecondOrderEstimate(benchmark::State &state)
{
  const auto model = make_model(5, 1.0, complex(1.0, 0.5));
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(stargraph::estimate_second_order(model, 40, 1));
  }
}
BENCHMARK(BM_SecondOrderEstimate);

void BM_RotatedRootMatching(benchmark::State &state)
{
  const auto model = make_model(5, 1.0, 1.0);
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(stargraph::match_rotated_roots(model, 3, 20));
  }
}
BENCHMARK(BM_RotatedRootMatching)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
