#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "thinfb/energy.hpp"

using namespace thinfb;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("closed-form local energy of the trivial solution") {
  Grid g = build_grid(GridSpec::make(1, 0.5, 1.0, 1.0 / 64.0));
  ScalarField u = trivial_solution(g, {1.0, 0.0});
  EnergyBreakdown e = eval_J_local(g, u, {{0.0, 0.0}, 1.0});
  CHECK(e.dirichlet == doctest::Approx(kPi / 2.0).epsilon(0.02));
  CHECK(e.thin_area == doctest::Approx(1.0).epsilon(g.h()));
  CHECK(e.total == doctest::Approx(e.dirichlet + e.thin_area));
}

TEST_CASE("box energy of the zero field is zero") {
  Grid g = build_grid(GridSpec::make(2, 0.3, 1.0, 0.25));
  ScalarField u(g.spec);
  EnergyBreakdown e = eval_J_box(g, u);
  CHECK(e.dirichlet == doctest::Approx(0.0));
  CHECK(e.thin_area == doctest::Approx(0.0));
}

TEST_CASE("box thin area counts the positivity set") {
  Grid g = build_grid(GridSpec::make(1, 0.5, 1.0, 0.25));
  ScalarField u(g.spec);
  for (int i = 0; i < g.nt(); ++i)
    for (int j = 0; j < g.ny(); ++j) u.values[g.idx(i, 0, j)] = 1.0;
  EnergyBreakdown e = eval_J_box(g, u);
  CHECK(e.dirichlet == doctest::Approx(0.0));
  CHECK(e.thin_area == doctest::Approx(2.0));  // whole slab positive
}

TEST_CASE("weiss density of the trivial cone at the origin") {
  Grid g = build_grid(GridSpec::make(1, 0.5, 1.0, 1.0 / 64.0));
  ScalarField u = trivial_solution(g, {1.0, 0.0});
  for (double r : {0.2, 0.4, 0.6})
    CHECK(weiss_density(g, u, {0.0, 0.0}, r) == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("weiss profile of a homogeneous field is flat with zero deficit") {
  Grid g = build_grid(GridSpec::make(1, 0.5, 1.0, 1.0 / 64.0));
  ScalarField u = trivial_solution(g, {1.0, 0.0});
  WeissProfile wp = weiss_profile(g, u, {0.0, 0.0}, {0.15, 0.3, 0.45, 0.6});
  CHECK(wp.psi.size() == 4);
  CHECK(wp.deficit.size() == 3);
  for (double d : wp.deficit) CHECK(std::abs(d) < 5e-3);
  double span = 0.0;
  for (double p : wp.psi) span = std::max(span, std::abs(p - wp.psi[0]));
  CHECK(span < 0.05);
}

TEST_CASE("deficit detects inhomogeneity") {
  Grid g = build_grid(GridSpec::make(1, 0.5, 1.0, 1.0 / 64.0));
  ScalarField u(g.spec);
  for (int i = 0; i < g.nt(); ++i)
    for (int j = 0; j < g.ny(); ++j)
      u.values[g.idx(i, 0, j)] = g.x[i] * g.x[i] + g.y[j] * g.y[j];
  CHECK(weiss_deficit(g, u, {0.0, 0.0}, 0.2, 0.6) > 0.1);
}

TEST_CASE("nonlocal energy basics") {
  Grid g = build_grid(GridSpec::make(1, 0.5, 1.0, 0.125));
  ThinFunction f(g.spec);
  Ball region{{0.0, 0.0}, 0.8};
  // zero function: no Gagliardo mass, no positivity measure
  CHECK(eval_J_nonlocal(g, f, region) == doctest::Approx(0.0));
  // constant: only the positivity measure of the region remains
  for (double& v : f.values) v = 1.0;
  double j = eval_J_nonlocal(g, f, region);
  CHECK(j == doctest::Approx(1.6).epsilon(0.1));
  // a jump adds strictly positive seminorm
  ThinFunction step(g.spec);
  for (int i = 0; i < g.nt(); ++i) step.values[i] = g.x[i] > 0.0 ? 1.0 : 0.0;
  CHECK(eval_J_nonlocal(g, step, region) > 0.8 + 0.1);
}

TEST_CASE("flux identity for the trivial solution") {
  Grid g = build_grid(GridSpec::make(1, 0.5, 1.0, 1.0 / 64.0));
  ScalarField u = trivial_solution(g, {1.0, 0.0});
  FluxIdentity fi = flux_identity_check(g, u, {{0.0, 0.0}, 0.5});
  CHECK(fi.lhs == doctest::Approx(fi.rhs).epsilon(0.1));
}

TEST_CASE("sphere integral matches the shell derivative of the ball integral") {
  Grid g = build_grid(GridSpec::make(1, 0.5, 1.0, 1.0 / 64.0));
  ScalarField u = trivial_solution(g, {1.0, 0.0});
  // For U, int_{dB_r} |y|^beta u^2 = r^{2 alpha + 1} * (value at r=1); check
  // the homogeneity exponent numerically: V(0.6)/V(0.3) = 2^{2 alpha + 1} = 4.
  double v1 = sphere_integral_u2(g, u, {0.0, 0.0}, 0.3);
  double v2 = sphere_integral_u2(g, u, {0.0, 0.0}, 0.6);
  CHECK(v2 / v1 == doctest::Approx(4.0).epsilon(0.05));
}
