#include <benchmark/benchmark.h>

#include "thinfb/diagnostics.hpp"
#include "thinfb/energy.hpp"
#include "thinfb/operators.hpp"
#include "thinfb/scenario.hpp"
#include "thinfb/solver.hpp"

using namespace thinfb;

namespace {

Grid make_grid(int denom, int n = 1) {
  return build_grid(GridSpec::make(n, 0.5, 1.0, 1.0 / denom));
}

void BM_ApplyL(benchmark::State& state) {
  Grid g = make_grid(static_cast<int>(state.range(0)));
  ScalarField u = trivial_solution(g, {1.0, 0.0});
  for (auto _ : state) benchmark::DoNotOptimize(apply_L(g, u));
  state.SetItemsProcessed(state.iterations() * g.spec.node_count());
}
BENCHMARK(BM_ApplyL)->Arg(64)->Arg(128)->Arg(256);

void BM_DirichletSolve(benchmark::State& state) {
  Grid g = make_grid(static_cast<int>(state.range(0)));
  BoundaryTrace bnd = generate_boundary(g, "trivial-trace");
  ThinMask mask(g.spec);
  for (int i = 0; i < g.nt(); ++i)
    mask.states[i] = g.x[i] > 0.0 ? ThinState::POSITIVE : ThinState::ZERO;
  for (auto _ : state) {
    SolveStats st;
    benchmark::DoNotOptimize(dirichlet_solve(g, mask, bnd, &st));
  }
}
BENCHMARK(BM_DirichletSolve)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_WeissDensity(benchmark::State& state) {
  Grid g = make_grid(static_cast<int>(state.range(0)));
  ScalarField u = trivial_solution(g, {1.0, 0.0});
  for (auto _ : state)
    benchmark::DoNotOptimize(weiss_density(g, u, {0.0, 0.0}, 0.5));
}
BENCHMARK(BM_WeissDensity)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_EvalJLocal(benchmark::State& state) {
  Grid g = make_grid(128);
  ScalarField u = trivial_solution(g, {1.0, 0.0});
  for (auto _ : state)
    benchmark::DoNotOptimize(eval_J_local(g, u, {{0.0, 0.0}, 0.6}));
}
BENCHMARK(BM_EvalJLocal)->Unit(benchmark::kMillisecond);

void BM_LambdaDensity(benchmark::State& state) {
  Grid g = make_grid(static_cast<int>(state.range(0)));
  ScalarField u = trivial_solution(g, {1.0, 0.0});
  for (auto _ : state) benchmark::DoNotOptimize(lambda_density(g, u));
}
BENCHMARK(BM_LambdaDensity)->Arg(128)->Arg(512);

void BM_Minimize(benchmark::State& state) {
  Grid g = make_grid(32);
  BoundaryTrace bnd = generate_boundary(g, "random:1");
  for (auto _ : state) benchmark::DoNotOptimize(minimize(g, bnd, {}));
}
BENCHMARK(BM_Minimize)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
