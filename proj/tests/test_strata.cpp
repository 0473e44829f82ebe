#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "thinfb/strata.hpp"

using namespace thinfb;

namespace {

PointMeasure three_atoms() {
  PointMeasure mu;
  mu.dim = 2;
  mu.atoms = {{{0.0, 0.0, 0.0}, 1.0}, {{2.0, 0.0, 0.0}, 1.0}, {{1.0, 1.0, 0.0}, 1.0}};
  return mu;
}

}  // namespace

TEST_CASE("hand-computed three-atom beta number") {
  BetaReport rep = beta2(three_atoms(), {{1.0, 1.0 / 3.0, 0.0}, 2.0}, 1);
  CHECK(rep.mass == doctest::Approx(3.0));
  CHECK(rep.center_of_mass[0] == doctest::Approx(1.0));
  CHECK(rep.center_of_mass[1] == doctest::Approx(1.0 / 3.0));
  CHECK(rep.eigenvalues[0] == doctest::Approx(2.0 / 3.0));
  CHECK(rep.eigenvalues[1] == doctest::Approx(2.0 / 9.0));
  CHECK(rep.beta_sq == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
}

TEST_CASE("collinear atoms are beta-flat for k=1") {
  PointMeasure mu;
  mu.dim = 2;
  for (int i = 0; i < 5; ++i) mu.atoms.push_back({{0.3 * i, 0.15 * i, 0.0}, 1.0 + i});
  BetaReport rep = beta2(mu, {{0.6, 0.3, 0.0}, 2.0}, 1);
  CHECK(rep.beta_sq == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(beta2(mu, {{0.6, 0.3, 0.0}, 2.0}, 0).beta_sq > 0.1);
}

TEST_CASE("objective at the eigen-plane equals the beta number") {
  PointMeasure mu = three_atoms();
  BetaBall ball{{1.0, 1.0 / 3.0, 0.0}, 2.0};
  for (int k : {0, 1, 2}) {
    BetaReport rep = beta2(mu, ball, k);
    std::vector<std::array<double, 3>> basis;
    for (int d = 0; d < k; ++d) basis.push_back(rep.eigenvectors[d]);
    CHECK(beta2_objective(mu, ball, k, rep.center_of_mass, basis) ==
          doctest::Approx(rep.beta_sq).epsilon(1e-13));
  }
}

TEST_CASE("bruteforce never beats the eigen-plane") {
  PointMeasure mu = three_atoms();
  BetaBall ball{{1.0, 1.0 / 3.0, 0.0}, 2.0};
  double bf = beta2_bruteforce(mu, ball, 1, 2000);
  double ref = beta2(mu, ball, 1).beta_sq;
  CHECK(bf >= ref - 1e-12);
  CHECK(bf == doctest::Approx(ref).epsilon(1e-10));
}

TEST_CASE("symmetry distances of the trivial cone") {
  Grid g = build_grid(GridSpec::make(1, 0.5, 1.0, 1.0 / 64.0));
  ScalarField u = trivial_solution(g, {1.0, 0.0});
  // homogeneous about the origin: 0-symmetric
  CHECK(ksym_distance(g, u, {0.0, 0.0}, 0.4, 0) < 5e-3);
  // no translation invariance along the thin axis
  CHECK(ksym_distance(g, u, {0.0, 0.0}, 0.4, 1) > 1e-2);
  CHECK_THROWS_AS(ksym_distance(g, u, {0.0, 0.0}, 0.4, 2), GridError);
  CHECK_THROWS_AS(ksym_distance(g, u, {0.9, 0.0}, 0.4, 0), GridError);
}

TEST_CASE("strata membership for the cone at the origin") {
  Grid g = build_grid(GridSpec::make(1, 0.5, 1.0, 1.0 / 64.0));
  ScalarField u = trivial_solution(g, {1.0, 0.0});
  StrataQuery q;
  q.k = 0;
  q.epsilon = 1e-2;
  q.r_min = 0.1;
  q.r_max = 0.4;
  StrataResult res = strata_membership(g, u, q);
  // never 1-symmetric at any scale: the origin lies in the k=0 stratum
  CHECK(res.member);
  CHECK(res.scales.size() == res.distances.size());
  for (double d : res.distances) CHECK(d > q.epsilon);
}

TEST_CASE("packing sums and the discretized double integral") {
  std::vector<BetaBall> line = {{{0.0, 0.0, 0.0}, 0.5},
                                {{2.0, 0.0, 0.0}, 0.5},
                                {{4.0, 0.0, 0.0}, 0.5}};
  PackingReport rep = packing_sum(line, 1);
  CHECK(rep.sum == doctest::Approx(1.5));
  CHECK_FALSE(rep.overlaps);
  CHECK(rep.reifenberg_integral == doctest::Approx(0.0).epsilon(1e-12));

  std::vector<BetaBall> bent = {{{0.0, 0.0, 0.0}, 0.5},
                                {{2.0, 0.0, 0.0}, 0.5},
                                {{3.0, 1.5, 0.0}, 0.5}};
  CHECK(packing_sum(bent, 1).reifenberg_integral > 1e-3);

  std::vector<BetaBall> overlapping = {{{0.0, 0.0, 0.0}, 1.0}, {{1.0, 0.0, 0.0}, 1.0}};
  CHECK(packing_sum(overlapping, 1).overlaps);
}

TEST_CASE("beta versus weiss drop on the cone") {
  Grid g = build_grid(GridSpec::make(1, 0.5, 1.0, 1.0 / 64.0));
  ScalarField u = trivial_solution(g, {1.0, 0.0});
  PointMeasure mu;
  mu.dim = 1;
  mu.atoms = {{{0.0, 0.0, 0.0}, 1.0}};
  BetaWeissDrop d = beta_vs_weiss_drop(g, u, {{0.0, 0.0, 0.0}, 0.15}, mu, 0);
  CHECK(std::abs(d.lhs) < 1e-12);  // single atom: zero second moments
  CHECK(std::abs(d.rhs) < 0.1);    // homogeneous: Weiss density is flat
}
