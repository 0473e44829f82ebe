#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "thinfb/diagnostics.hpp"

using namespace thinfb;

namespace {

struct ConeFixture {
  Grid g;
  ScalarField u;
  ThinMask mask;

  explicit ConeFixture(double h, int n = 1, double alpha = 0.5)
      : g(build_grid(GridSpec::make(n, alpha, 1.0, h))), u(trivial_solution(g, {1.0, 0.0})),
        mask(g.spec) {
    const int n2 = n == 1 ? 1 : g.nt();
    for (int i1 = 0; i1 < g.nt(); ++i1)
      for (int i2 = 0; i2 < n2; ++i2)
        mask.states[g.slab_idx(i1, i2)] =
            u.values[g.idx(i1, i2, 0)] > 0.0 ? ThinState::POSITIVE : ThinState::ZERO;
  }
};

}  // namespace

TEST_CASE("lambda density matches the closed form on the zero phase") {
  ConeFixture f(1.0 / 128.0);
  // density = 4 alpha 4^{-alpha} |t|^{-alpha} = |t|^{-1/2} at alpha = 1/2
  int i = static_cast<int>(std::llround((-0.25 + 1.0) * 128));
  LambdaDensity d = lambda_density(f.g, f.u);
  CHECK(d.density[i] == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("lambda ball growth") {
  ConeFixture f(1.0 / 128.0);
  LambdaDensity d = lambda_density(f.g, f.u);
  for (double r : {0.25, 0.5}) {
    double lam = lambda_ball(f.g, f.u, d, f.mask, {0.0, 0.0}, r);
    CHECK(lam == doctest::Approx(2.0 * std::sqrt(r)).epsilon(0.1));
  }
}

TEST_CASE("free boundary extraction for the half-line mask") {
  ConeFixture f(0.125);
  FreeBoundary fb = extract_free_boundary(f.g, f.mask);
  REQUIRE(fb.points.size() == 2);  // both sides of the single interface
  CHECK(fb.points[0].x[0] == doctest::Approx(0.0));
  CHECK(fb.points[0].state == ThinState::ZERO);
  CHECK(fb.points[1].x[0] == doctest::Approx(0.125));
  CHECK(fb.points[1].state == ThinState::POSITIVE);
}

TEST_CASE("blow-up rescaling of a homogeneous field is the field") {
  ConeFixture f(1.0 / 64.0);
  ScalarField b = rescale_blowup(f.g, f.u, {0.0, 0.0}, 0.5, 1.0 / 32.0);
  Grid tg = build_grid(b.spec);
  ScalarField ref = trivial_solution(tg, {1.0, 0.0});
  double worst = 0.0;
  for (std::size_t k = 0; k < b.values.size(); ++k)
    worst = std::max(worst, std::abs(b.values[k] - ref.values[k]));
  CHECK(worst < 0.02);
  CHECK_THROWS_AS(rescale_blowup(f.g, f.u, {0.9, 0.0}, 0.5, 0.25), GridError);
}

TEST_CASE("homogeneity deviation vanishes for the cone") {
  ConeFixture f(1.0 / 64.0);
  CHECK(homogeneity_deviation(f.g, f.u, {0.0, 0.0}) < 5e-3);
}

TEST_CASE("flatness of the half-line mask is near zero") {
  ConeFixture f(1.0 / 64.0);
  CHECK(flatness(f.g, f.mask, {0.0, 0.0}, 0.5) <= 2.0 * f.g.h() / 0.5);
}

TEST_CASE("classification of the trivial cone") {
  ConeFixture f(1.0 / 128.0);
  ClassifierConfig cfg;
  cfg.blowup_radii = {0.6};
  double psi0 = 0.0;
  CHECK(classify_point(f.g, f.u, {0.0, 0.0}, cfg, &psi0) == PointClass::REGULAR);
  CHECK(psi0 == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("perimeter estimate counts interfaces") {
  ConeFixture f1(0.125);
  CHECK(perimeter_estimate(f1.g, f1.mask, {0.0, 0.0}, 0.5) == doctest::Approx(1.0));
  ConeFixture f2(1.0 / 32.0, 2);
  // the interface is a straight line through the ball: length about 2r
  CHECK(perimeter_estimate(f2.g, f2.mask, {0.0, 0.0}, 0.5) ==
        doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("corkscrew witnesses on both sides") {
  ConeFixture f(1.0 / 32.0);
  CorkscrewResult c = corkscrew_check(f.g, f.mask, {0.0, 0.0}, 0.5);
  CHECK(c.interior.found);
  CHECK(c.exterior.found);
  CHECK(c.interior.c == doctest::Approx(0.5).epsilon(0.15));
  CHECK(c.exterior.c == doctest::Approx(0.5).epsilon(0.15));
  CHECK(c.interior.point[0] > 0.0);
  CHECK(c.exterior.point[0] < 0.0);
}

TEST_CASE("holder constant of the cone is order one") {
  ConeFixture f(1.0 / 64.0);
  FreeBoundary fb = extract_free_boundary(f.g, f.mask);
  HolderReport rep = holder_report(f.g, f.u, fb);
  CHECK(rep.constant > 0.5);
  CHECK(rep.constant < 1.5);
}

TEST_CASE("competitor grid must contain the cutoff support") {
  CHECK_THROWS_AS(competitor_log_cutoff(0.5, 5.0, 0.5, 16.0), GridError);
}
