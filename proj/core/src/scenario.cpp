#include "thinfb/scenario.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "thinfb/extension.hpp"
#include "thinfb/io.hpp"
#include "thinfb/rng.hpp"

namespace thinfb {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::parse_text(const std::string& text, const std::string& origin) {
  Config cfg;
  std::istringstream is(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty section name");
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
    std::string full = section.empty() ? key : section + "." + key;
    if (cfg.entries.count(full))
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + full + "'");
    cfg.entries[full] = value;
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_text(ss.str(), path);
}

std::string Config::get(const std::string& key, const std::string& fallback) const {
  auto it = entries.find(key);
  return it == entries.end() ? fallback : it->second;
}

bool Config::has(const std::string& key) const { return entries.count(key) > 0; }

double Config::get_double(const std::string& key, double fallback) const {
  auto it = entries.find(key);
  if (it == entries.end()) return fallback;
  try {
    std::size_t pos = 0;
    double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("field '" + key + "': not a number: '" + it->second + "'");
  }
}

int Config::get_int(const std::string& key, int fallback) const {
  auto it = entries.find(key);
  if (it == entries.end()) return fallback;
  try {
    std::size_t pos = 0;
    int v = std::stoi(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("field '" + key + "': not an integer: '" + it->second + "'");
  }
}

Scenario Scenario::from_config(const Config& cfg) {
  Scenario sc;
  int n = cfg.get_int("grid.n", 1);
  double alpha = cfg.get_double("grid.alpha", 0.5);
  double extent = cfg.get_double("grid.half_extent", 1.0);
  double spacing = cfg.get_double("grid.spacing", 1.0 / 64.0);
  try {
    sc.grid = GridSpec::make(n, alpha, extent, spacing);
  } catch (const GridError& e) {
    throw ConfigError(std::string("section [grid]: ") + e.what());
  }
  sc.generator = cfg.get("scenario.generator", "trivial-trace");
  sc.output_dir = cfg.get("scenario.output_dir", ".");
  sc.seed = static_cast<std::uint64_t>(cfg.get_double("scenario.seed", 0.0));
  if (sc.generator.rfind("random:", 0) == 0) {
    try {
      sc.seed = std::stoull(sc.generator.substr(7));
    } catch (const std::exception&) {
      throw ConfigError("field 'scenario.generator': bad seed in '" + sc.generator + "'");
    }
  }
  sc.solver.flip_tolerance = cfg.get_double("solver.flip_tolerance", sc.solver.flip_tolerance);
  sc.solver.max_outer_iters = cfg.get_int("solver.max_outer_iters", sc.solver.max_outer_iters);
  sc.solver.exhaustive_threshold =
      cfg.get_int("solver.exhaustive_threshold", sc.solver.exhaustive_threshold);
  sc.solver.linear.rel_tol = cfg.get_double("solver.rel_tol", sc.solver.linear.rel_tol);
  sc.solver.linear.max_iters = cfg.get_int("solver.max_iters", sc.solver.linear.max_iters);
  return sc;
}

std::uint64_t scenario_hash(const Config& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a 64
  auto mix = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ull;
    }
  };
  for (const auto& [k, v] : cfg.entries) {  // std::map: canonical key order
    mix(k);
    mix("=");
    mix(v);
    mix("\n");
  }
  return h;
}

namespace {

// Visit the outer boundary of the (thin1, vertical) rectangle along the
// closed perimeter path used by the seeded generators, calling
// fn(i, j, path_index).  Nodes on the slab interior (j = 0, 0 < i < last)
// are skipped: they are free, not boundary.
template <class F>
void walk_perimeter(int nt, int ny, F&& fn) {
  int k = 0;
  for (int i = 0; i < nt - 1; ++i, ++k)
    if (i == 0) fn(i, 0, k);
  for (int j = 0; j < ny - 1; ++j, ++k) fn(nt - 1, j, k);
  for (int i = nt - 1; i > 0; --i, ++k) fn(i, ny - 1, k);
  for (int j = ny - 1; j > 0; --j, ++k) fn(0, j, k);
}

BoundaryTrace ramp_trace(const Grid& g, std::uint64_t seed) {
  SplitMix64 rng(seed);
  double u0 = rng.next_double(), u1 = rng.next_double();
  double a[4];
  for (double& c : a) c = 2.0 * rng.next_double() - 1.0;
  const double A = 1.8 + 0.5 * u0;
  const double x0 = 0.2 * u1;

  BoundaryTrace bnd(g.spec);
  const int nt = g.nt(), ny = g.ny();
  const double per = 2.0 * (nt - 1) + 2.0 * (ny - 1);

  auto value = [&](double x, int k) {
    double t = 2.0 * kPi * k / per;
    double p = 1.0 + 0.05 * (a[0] * std::cos(t) + a[1] * std::sin(t) +
                             a[2] * std::cos(2 * t) + a[3] * std::sin(2 * t));
    return std::max(0.0, A * std::max(x - x0, 0.0) * p);
  };

  if (g.spec.n == 1) {
    walk_perimeter(nt, ny, [&](int i, int j, int k) {
      bnd.values[g.idx(i, 0, j)] = value(g.x[i], k);
    });
    return bnd;
  }
  // n = 2: the same ramp in x1, constant in x2; the trigonometric
  // perturbation follows the (x1, y) perimeter position where defined and is
  // omitted on the remaining x2-walls.
  std::vector<int> path_k(static_cast<std::size_t>(nt) * ny, -1);
  walk_perimeter(nt, ny, [&](int i, int j, int k) { path_k[i * ny + j] = k; });
  for (int i1 = 0; i1 < nt; ++i1)
    for (int i2 = 0; i2 < nt; ++i2)
      for (int j = 0; j < ny; ++j) {
        if (!g.on_outer_boundary(i1, i2, j)) continue;
        int k = path_k[i1 * ny + j];
        bnd.values[g.idx(i1, i2, j)] =
            k >= 0 ? value(g.x[i1], k)
                   : std::max(0.0, A * std::max(g.x[i1] - x0, 0.0));
      }
  return bnd;
}

}  // namespace

BoundaryTrace generate_boundary(const Grid& g, const std::string& generator,
                                std::optional<std::uint64_t> seed_override) {
  BoundaryTrace bnd(g.spec);
  const int n2 = g.spec.n == 1 ? 1 : g.nt();

  auto fill = [&](auto&& fn) {
    for (int i1 = 0; i1 < g.nt(); ++i1)
      for (int i2 = 0; i2 < n2; ++i2)
        for (int j = 0; j < g.ny(); ++j)
          if (g.on_outer_boundary(i1, i2, j))
            bnd.values[g.idx(i1, i2, j)] =
                fn(g.x[i1], g.spec.n == 2 ? g.x[i2] : 0.0, g.y[j]);
  };

  if (generator == "trivial-trace") {
    fill([&](double x1, double, double y) {
      return trivial_solution_value(x1, y, g.spec.alpha);
    });
    return bnd;
  }
  if (generator.rfind("constant:", 0) == 0) {
    double c;
    try {
      c = std::stod(generator.substr(9));
    } catch (const std::exception&) {
      throw ConfigError("bad constant in generator '" + generator + "'");
    }
    fill([&](double, double, double) { return c; });
    return bnd;
  }
  if (generator.rfind("random:", 0) == 0) {
    std::uint64_t seed;
    if (seed_override) {
      seed = *seed_override;
    } else {
      try {
        seed = std::stoull(generator.substr(7));
      } catch (const std::exception&) {
        throw ConfigError("bad seed in generator '" + generator + "'");
      }
    }
    return ramp_trace(g, seed);
  }
  if (generator.rfind("file:", 0) == 0) {
    ScalarField f = read_field(generator.substr(5));
    if (f.spec.n != g.spec.n || f.spec.thin_count != g.spec.thin_count ||
        f.spec.vert_count != g.spec.vert_count ||
        std::abs(f.spec.alpha - g.spec.alpha) > 1e-12)
      throw ConfigError("field file grid does not match the scenario grid");
    for (int i1 = 0; i1 < g.nt(); ++i1)
      for (int i2 = 0; i2 < n2; ++i2)
        for (int j = 0; j < g.ny(); ++j)
          if (g.on_outer_boundary(i1, i2, j))
            bnd.values[g.idx(i1, i2, j)] = f.values[g.idx(i1, i2, j)];
    return bnd;
  }
  throw ConfigError("unknown generator '" + generator + "'");
}

}  // namespace thinfb
