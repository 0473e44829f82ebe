#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "thinfb/grid.hpp"
#include "thinfb/rng.hpp"

using namespace thinfb;

TEST_CASE("spec construction and validation") {
  GridSpec s = GridSpec::make(1, 0.5, 1.0, 0.25);
  CHECK(s.thin_count == 9);
  CHECK(s.vert_count == 5);
  CHECK(s.beta == doctest::Approx(0.0));
  CHECK(s.slab_size() == 9);
  CHECK(s.node_count() == 45);

  GridSpec s2 = GridSpec::make(2, 0.25, 1.0, 0.25);
  CHECK(s2.slab_size() == 81);
  CHECK(s2.node_count() == 405);
  CHECK(s2.beta == doctest::Approx(0.5));

  CHECK_THROWS_AS(GridSpec::make(3, 0.5, 1.0, 0.25), GridError);
  CHECK_THROWS_AS(GridSpec::make(1, 0.01, 1.0, 0.25), GridError);
  CHECK_THROWS_AS(GridSpec::make(1, 0.99, 1.0, 0.25), GridError);
  CHECK_THROWS_AS(GridSpec::make(1, 0.5, 1.0, 0.3), GridError);  // not divisible
  CHECK_THROWS_AS(GridSpec::make(1, 0.5, -1.0, 0.25), GridError);
}

TEST_CASE("weight integral") {
  CHECK(weight_integral(0.0, 1.0, 0.0) == doctest::Approx(1.0));
  CHECK(weight_integral(0.25, 0.75, 0.0) == doctest::Approx(0.5));
  // beta = 0.5: integral of sqrt(t) over [0,1] = 2/3
  CHECK(weight_integral(0.0, 1.0, 0.5) == doctest::Approx(2.0 / 3.0));
  // beta = -0.5 stays integrable at 0: 2*sqrt(1) = 2
  CHECK(weight_integral(0.0, 1.0, -0.5) == doctest::Approx(2.0));
}

TEST_CASE("grid geometry") {
  Grid g = build_grid(GridSpec::make(1, 0.5, 1.0, 0.25));
  CHECK(g.x.front() == doctest::Approx(-1.0));
  CHECK(g.x.back() == doctest::Approx(1.0));
  CHECK(g.y.front() == doctest::Approx(0.0));
  CHECK(g.y.back() == doctest::Approx(1.0));
  CHECK(g.xcell[0] == doctest::Approx(0.125));
  CHECK(g.xcell[1] == doctest::Approx(0.25));
  // slab row dual cell: integral over [0, h/2]
  CHECK(g.ycell[0] == doctest::Approx(weight_integral(0.0, 0.125, 0.0)));
  CHECK(g.yedge[0] == doctest::Approx(weight_integral(0.0, 0.25, 0.0)));
  CHECK(g.on_outer_boundary(0, 0, 0));
  CHECK(g.on_outer_boundary(4, 0, 4));
  CHECK_FALSE(g.on_outer_boundary(4, 0, 0));
  CHECK_FALSE(g.on_outer_boundary(4, 0, 2));
}

TEST_CASE("weighted measure covers the box") {
  Grid g = build_grid(GridSpec::make(1, 0.75, 1.0, 1.0 / 16.0));
  WeightedMeasure m = weighted_measure(g);
  double total = 0.0;
  for (double w : m.cell_weights) total += w;
  // upper-half box mass: 2R * int_0^R y^beta dy
  double expect = 2.0 * weight_integral(0.0, 1.0, g.spec.beta);
  CHECK(total == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("interpolation reproduces multilinear fields") {
  Grid g = build_grid(GridSpec::make(1, 0.5, 1.0, 0.125));
  ScalarField f(g.spec);
  for (int i = 0; i < g.nt(); ++i)
    for (int j = 0; j < g.ny(); ++j)
      f.values[g.idx(i, 0, j)] = 2.0 * g.x[i] + 3.0 * g.y[j] + 1.0;
  CHECK(interpolate(g, f, 0.3, 0.0, 0.45) == doctest::Approx(2.0 * 0.3 + 3.0 * 0.45 + 1.0));
  // node value
  CHECK(interpolate(g, f, g.x[3], 0.0, g.y[2]) ==
        doctest::Approx(f.values[g.idx(3, 0, 2)]));
  // even reflection: value at -y equals value at +y
  CHECK(interpolate(g, f, 0.2, 0.0, -0.3) == doctest::Approx(interpolate(g, f, 0.2, 0.0, 0.3)));
}

TEST_CASE("splitmix64 matches the documented stream") {
  SplitMix64 rng(1);
  CHECK(rng.next_u64() == 0x910a2dec89025cc1ull);
  CHECK(rng.next_u64() == 0xbeeb8da1658eec67ull);
  CHECK(rng.next_u64() == 0xf893a2eefb32555eull);
  SplitMix64 rng2(42);
  CHECK(rng2.next_double() == doctest::Approx(0.7415648787718234).epsilon(1e-15));
}
