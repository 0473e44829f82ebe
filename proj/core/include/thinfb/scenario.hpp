#pragma once
// Scenario configuration: flat key=value text with [section] headers,
// seeded boundary-data generators, and the scenario hash recorded in every
// output for reproducibility.

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "thinfb/grid.hpp"
#include "thinfb/operators.hpp"
#include "thinfb/solver.hpp"

namespace thinfb {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parsed config: keys are "section.key".
struct Config {
  std::map<std::string, std::string> entries;

  static Config parse_file(const std::string& path);
  static Config parse_text(const std::string& text, const std::string& origin = "<text>");

  std::string get(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  bool has(const std::string& key) const;
};

struct Scenario {
  GridSpec grid;
  std::string generator = "trivial-trace";  // trivial-trace | constant:c | random:seed | file:path
  SolveConfig solver;
  std::string output_dir = ".";
  std::uint64_t seed = 0;  // from random:seed or --seed override

  static Scenario from_config(const Config& cfg);
};

// FNV-1a 64 over the canonicalized "section.key=value" lines.
std::uint64_t scenario_hash(const Config& cfg);

// Boundary data on the outer box for the named generator.
//   trivial-trace: trace of the trivial solution U (direction e1)
//   constant:c   : the constant c
//   random:seed  : seeded ramp trace A (x1 - x0)_+ with a small trigonometric
//                  perturbation along the boundary path, clamped at 0
//                  (A in [1.8, 2.3], x0 in [0, 0.2] from the seed stream)
//   file:path    : trace read from a THINPH1 field file
BoundaryTrace generate_boundary(const Grid& g, const std::string& generator,
                                std::optional<std::uint64_t> seed_override = {});

}  // namespace thinfb
