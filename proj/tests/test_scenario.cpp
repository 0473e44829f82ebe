#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "thinfb/io.hpp"
#include "thinfb/scenario.hpp"

using namespace thinfb;

TEST_CASE("config parsing") {
  Config cfg = Config::parse_text(
      "# comment\n"
      "[grid]\n"
      "n = 1\n"
      "alpha = 0.5   # trailing comment\n"
      "spacing = 0.0625\n"
      "[scenario]\n"
      "generator = random:7\n");
  CHECK(cfg.get_int("grid.n", 0) == 1);
  CHECK(cfg.get_double("grid.alpha", 0.0) == doctest::Approx(0.5));
  CHECK(cfg.get("scenario.generator", "") == "random:7");
  CHECK(cfg.get("scenario.output_dir", "out") == "out");
  CHECK(cfg.has("grid.spacing"));
  CHECK_FALSE(cfg.has("grid.half_extent"));
}

TEST_CASE("config errors carry line diagnostics") {
  CHECK_THROWS_WITH_AS(Config::parse_text("[grid]\nnonsense line\n", "cfg"),
                       doctest::Contains("cfg:2"), ConfigError);
  CHECK_THROWS_AS(Config::parse_text("[grid\nn=1\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse_text("a=1\na=2\n"), ConfigError);
  Config cfg = Config::parse_text("[grid]\nalpha = abc\n");
  CHECK_THROWS_AS(cfg.get_double("grid.alpha", 0.0), ConfigError);
  CHECK_THROWS_AS(cfg.get_int("grid.alpha", 0), ConfigError);
}

TEST_CASE("scenario from config with defaults") {
  Scenario sc = Scenario::from_config(Config::parse_text(""));
  CHECK(sc.grid.n == 1);
  CHECK(sc.grid.alpha == doctest::Approx(0.5));
  CHECK(sc.generator == "trivial-trace");

  Scenario sc2 = Scenario::from_config(Config::parse_text(
      "[grid]\nn=2\nalpha=0.25\nspacing=0.25\n[scenario]\ngenerator=random:99\n"));
  CHECK(sc2.grid.n == 2);
  CHECK(sc2.seed == 99);

  CHECK_THROWS_AS(Scenario::from_config(Config::parse_text("[grid]\nalpha=2.0\n")),
                  ConfigError);
  CHECK_THROWS_AS(Scenario::from_config(Config::parse_text("[grid]\nspacing=0.3\n")),
                  ConfigError);
}

TEST_CASE("scenario hash is canonical and sensitive") {
  Config a = Config::parse_text("[grid]\nn=1\nalpha=0.5\n");
  Config b = Config::parse_text("[grid]\nalpha=0.5\nn=1\n");  // same content, other order
  Config c = Config::parse_text("[grid]\nn=1\nalpha=0.25\n");
  CHECK(scenario_hash(a) == scenario_hash(b));
  CHECK(scenario_hash(a) != scenario_hash(c));
}

TEST_CASE("trivial trace generator matches the cone on the boundary") {
  Grid g = build_grid(GridSpec::make(1, 0.5, 1.0, 0.25));
  BoundaryTrace bnd = generate_boundary(g, "trivial-trace");
  CHECK(bnd.values[g.idx(g.nt() - 1, 0, 0)] == doctest::Approx(1.0));  // U(1, 0) = 1
  CHECK(bnd.values[g.idx(0, 0, 0)] == doctest::Approx(0.0));           // U(-1, 0) = 0
  CHECK(bnd.values[g.idx(4, 0, g.ny() - 1)] ==
        doctest::Approx(std::pow(0.5, 0.5)));  // U(0, 1) = 2^{-1/2}
  // interior slab nodes carry no boundary data
  CHECK(bnd.values[g.idx(4, 0, 0)] == doctest::Approx(0.0));
}

TEST_CASE("constant and random generators") {
  Grid g = build_grid(GridSpec::make(1, 0.5, 1.0, 0.125));
  BoundaryTrace c = generate_boundary(g, "constant:1.5");
  CHECK(c.values[g.idx(0, 0, 3)] == doctest::Approx(1.5));

  BoundaryTrace r1 = generate_boundary(g, "random:11");
  BoundaryTrace r2 = generate_boundary(g, "random:11");
  BoundaryTrace r3 = generate_boundary(g, "random:12");
  CHECK(r1.values == r2.values);  // deterministic
  CHECK(r1.values != r3.values);
  for (double v : r1.values) CHECK(v >= 0.0);
  // seed override wins over the name
  BoundaryTrace r4 = generate_boundary(g, "random:11", 12u);
  CHECK(r4.values == r3.values);

  CHECK_THROWS_AS(generate_boundary(g, "no-such-generator"), ConfigError);
  CHECK_THROWS_AS(generate_boundary(g, "constant:xyz"), ConfigError);
  CHECK_THROWS_AS(generate_boundary(g, "file:/nonexistent.thinph1"), IoError);
}

TEST_CASE("ramp trace is supported on the right half") {
  Grid g = build_grid(GridSpec::make(1, 0.5, 1.0, 1.0 / 32.0));
  BoundaryTrace bnd = generate_boundary(g, "random:1");
  // left wall: ramp max(x - x0, 0) vanishes for x = -1
  for (int j = 0; j < g.ny(); ++j) CHECK(bnd.values[g.idx(0, 0, j)] == doctest::Approx(0.0));
  // right wall strictly positive
  for (int j = 0; j < g.ny(); ++j) CHECK(bnd.values[g.idx(g.nt() - 1, 0, j)] > 0.5);
}
