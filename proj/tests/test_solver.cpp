#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "thinfb/scenario.hpp"
#include "thinfb/solver.hpp"

using namespace thinfb;

TEST_CASE("zero boundary data gives the all-zero minimizer") {
  Grid g = build_grid(GridSpec::make(1, 0.5, 1.0, 0.125));
  BoundaryTrace bnd(g.spec);
  SolveResult res = minimize(g, bnd, {});
  CHECK(res.converged);
  CHECK(res.energy.total == doctest::Approx(0.0));
  for (double v : res.field.values) CHECK(v == doctest::Approx(0.0));
  // canonical mask: every slab node is ZERO
  for (ThinState s : res.mask.states) CHECK(s == ThinState::ZERO);
}

TEST_CASE("critical-slope cone trace reproduces the half-line positivity set") {
  // The cone A U with A^2 = 2/pi balances the Dirichlet energy released per
  // unit of free boundary advance against the unit thin-measure cost, so its
  // trace is minimized by the half-line zero set with the interface at 0.
  const double A = std::sqrt(2.0 / 3.14159265358979323846);
  Grid g = build_grid(GridSpec::make(1, 0.5, 1.0, 1.0 / 16.0));
  BoundaryTrace bnd = generate_boundary(g, "trivial-trace");
  for (double& v : bnd.values) v *= A;
  SolveResult res = minimize(g, bnd, {});  // 31 free nodes: iterative path
  CHECK(res.converged);
  for (int i = 0; i < g.nt(); ++i) {
    ThinState expect = g.x[i] > 0.0 ? ThinState::POSITIVE : ThinState::ZERO;
    CHECK(res.mask.states[i] == expect);
  }
  // the solved field stays close to the scaled exact cone
  ScalarField uref = trivial_solution(g, {1.0, 0.0});
  double worst = 0.0;
  for (std::size_t k = 0; k < uref.values.size(); ++k)
    worst = std::max(worst, std::abs(res.field.values[k] - A * uref.values[k]));
  CHECK(worst < 0.05);
}

TEST_CASE("unit-slope cone trace shifts the interface left of the origin") {
  // With unit slope the Dirichlet release rate (pi/2 per unit advance at
  // alpha = 1/2) exceeds the measure cost 1, so the minimizer trades thin
  // measure for Dirichlet energy and parks the interface near x = -1/2.
  Grid g = build_grid(GridSpec::make(1, 0.5, 1.0, 1.0 / 16.0));
  BoundaryTrace bnd = generate_boundary(g, "trivial-trace");
  SolveResult res = minimize(g, bnd, {});
  CHECK(res.converged);
  // single interface: ZERO block then POSITIVE block
  int first_pos = g.nt();
  for (int i = 0; i < g.nt(); ++i)
    if (res.mask.states[i] == ThinState::POSITIVE) { first_pos = i; break; }
  for (int i = first_pos; i < g.nt(); ++i) CHECK(res.mask.states[i] == ThinState::POSITIVE);
  REQUIRE(first_pos < g.nt());
  CHECK(std::abs(g.x[first_pos] - (-0.5 + g.h())) <= 2.0 * g.h() + 1e-12);
}

TEST_CASE("negative boundary data is rejected") {
  Grid g = build_grid(GridSpec::make(1, 0.5, 1.0, 0.25));
  BoundaryTrace bnd(g.spec);
  bnd.values[g.idx(0, 0, 2)] = -0.5;
  CHECK_THROWS_AS(minimize(g, bnd, {}), GridError);
  CHECK_THROWS_AS(brute_force_minimize(g, bnd, {}), GridError);
}

TEST_CASE("free slab nodes excludes the outer ring") {
  Grid g = build_grid(GridSpec::make(1, 0.5, 1.0, 0.25));
  auto free = free_slab_nodes(g);
  CHECK(free.size() == 7);
  Grid g2 = build_grid(GridSpec::make(2, 0.5, 1.0, 0.25));
  CHECK(free_slab_nodes(g2).size() == 49);
}

TEST_CASE("minimize agrees with exhaustive enumeration on small grids") {
  for (double alpha : {0.25, 0.5, 0.75}) {
    Grid g = build_grid(GridSpec::make(1, alpha, 1.0, 0.25));
    for (int seed = 1; seed <= 5; ++seed) {
      BoundaryTrace bnd = generate_boundary(g, "random:" + std::to_string(seed));
      SolveConfig sweeps;
      sweeps.exhaustive_threshold = 0;
      SolveResult a = minimize(g, bnd, sweeps);
      SolveResult b = brute_force_minimize(g, bnd, {});
      CHECK(a.mask.states == b.mask.states);
      CHECK(a.energy.total == doctest::Approx(b.energy.total).epsilon(1e-9));
    }
  }
}

TEST_CASE("default config delegates small grids to enumeration") {
  Grid g = build_grid(GridSpec::make(1, 0.5, 1.0, 0.25));
  BoundaryTrace bnd = generate_boundary(g, "constant:1.0");
  SolveResult res = minimize(g, bnd, {});  // 7 free nodes <= 16
  CHECK(res.converged);
  CHECK(res.iterations == 128);  // 2^7 enumerated states
}

TEST_CASE("flips log records energy decreases") {
  Grid g = build_grid(GridSpec::make(1, 0.5, 1.0, 1.0 / 16.0));
  BoundaryTrace bnd = generate_boundary(g, "random:3");
  SolveResult res = minimize(g, bnd, {});
  CHECK(res.converged);
  for (const auto& [node, de] : res.flips_log) {
    CHECK(node >= 0);
    CHECK(de < 0.0);
  }
}
