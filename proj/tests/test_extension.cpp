#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "thinfb/extension.hpp"

using namespace thinfb;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("normalization constant") {
  // n=1, alpha=1/2: the classical Poisson kernel constant 1/pi.
  ExtensionConfig c = ExtensionConfig::make(1, 0.5);
  CHECK(c.normalization == doctest::Approx(1.0 / kPi).epsilon(1e-12));
  // n=2, alpha=1/2: Gamma(3/2)/(pi Gamma(1/2)) = 1/(2 pi).
  ExtensionConfig c2 = ExtensionConfig::make(2, 0.5);
  CHECK(c2.normalization == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-12));
}

TEST_CASE("kernel mass is essentially one under truncation") {
  for (int n : {1, 2})
    for (double alpha : {0.25, 0.5, 0.75}) {
      ExtensionConfig c = ExtensionConfig::make(n, alpha);
      for (double y : {0.01, 0.1, 1.0}) {
        double m = poisson_kernel_mass(c, y);
        CHECK(m >= 0.999);
        CHECK(m <= 1.0 + 1e-6);
      }
    }
}

TEST_CASE("kernel pointwise value") {
  ExtensionConfig c = ExtensionConfig::make(1, 0.5);
  // P_y(xi) = (1/pi) y / (xi^2 + y^2)
  double v = poisson_kernel(c, {0.3, 0.0}, 0.2);
  CHECK(v == doctest::Approx((1.0 / kPi) * 0.2 / (0.09 + 0.04)).epsilon(1e-12));
  CHECK_THROWS_AS(poisson_kernel(c, {0.3, 0.0}, 0.0), GridError);
}

TEST_CASE("extension of a constant is constant") {
  Grid g = build_grid(GridSpec::make(1, 0.5, 1.0, 0.125));
  ThinFunction f(g.spec);
  for (double& v : f.values) v = 2.5;
  ScalarField u = poisson_extend(ExtensionConfig::make(1, 0.5), f, g);
  for (double v : u.values) CHECK(v == doctest::Approx(2.5).epsilon(2e-3));
}

TEST_CASE("trivial solution values") {
  CHECK(trivial_solution_value(0.0, 1.0, 0.5) == doctest::Approx(std::pow(2.0, -0.5)));
  CHECK(trivial_solution_value(0.0, 1.0, 0.25) == doctest::Approx(std::pow(2.0, -0.25)));
  CHECK(trivial_solution_value(1.0, 0.0, 0.7) == doctest::Approx(1.0));
  CHECK(trivial_solution_value(-0.5, 0.0, 0.5) == doctest::Approx(0.0));
  Grid g = build_grid(GridSpec::make(1, 0.5, 1.0, 0.25));
  CHECK_THROWS_AS(trivial_solution(g, {2.0, 0.0}), GridError);
}

TEST_CASE("extension reproduces the trivial solution from its trace") {
  // U's trace extends (for the weighted operator) to U itself.  The kernel
  // only sees the trace on the computational slab, extended as a constant
  // along outward rays; since U's trace keeps growing like sqrt(x) outside,
  // that far-field clamp contributes an error proportional to the height y
  // (the kernel mass beyond distance d scales like y/d).  The check is tight
  // near the slab and linear-in-y above it.
  Grid g = build_grid(GridSpec::make(1, 0.5, 2.0, 1.0 / 16.0));
  ScalarField uref = trivial_solution(g, {1.0, 0.0});
  ThinFunction tr = restrict_to_slab(g, uref);
  ScalarField u = poisson_extend(ExtensionConfig::make(1, 0.5), tr, g);
  for (int j = 0; j < g.ny(); ++j) {
    if (g.y[j] > 1.0) continue;
    double worst = 0.0;
    for (int i = 0; i < g.nt(); ++i) {
      if (std::abs(g.x[i]) > 1.0) continue;  // away from the box edge
      worst = std::max(worst,
                       std::abs(u.values[g.idx(i, 0, j)] - uref.values[g.idx(i, 0, j)]));
    }
    CHECK(worst <= 0.35 * g.y[j] + 0.01);
    if (g.y[j] <= 0.25) CHECK(worst < 0.08);
  }
}

TEST_CASE("extrapolated vertical trace derivative") {
  // For U with alpha = 1/2, lim y^beta u_y = 0.5 / sqrt(|t|) on the zero phase.
  Grid g = build_grid(GridSpec::make(1, 0.5, 1.0, 1.0 / 128.0));
  ScalarField u = trivial_solution(g, {1.0, 0.0});
  int i = static_cast<int>(std::llround((-0.25 + 1.0) / g.h()));
  double d = frac_laplacian_trace(g, u, i);
  CHECK(d == doctest::Approx(0.5 / std::sqrt(0.25)).epsilon(0.02));
  // On the positivity set there is no y^{1-beta} term: the value vanishes.
  int ip = static_cast<int>(std::llround((0.5 + 1.0) / g.h()));
  CHECK(std::abs(frac_laplacian_trace(g, u, ip)) < 1e-3);
}
