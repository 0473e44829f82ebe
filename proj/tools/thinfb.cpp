// Command-line laboratory for the thin one-phase free boundary functional.
//
// Subcommands: solve, diagnose, weiss, strata, competitor, validate.
// Exit codes: 0 success, 1 validation failure, 2 configuration / file error,
// 3 solver non-convergence.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "thinfb/acceptance.hpp"
#include "thinfb/diagnostics.hpp"
#include "thinfb/energy.hpp"
#include "thinfb/io.hpp"
#include "thinfb/operators.hpp"
#include "thinfb/scenario.hpp"
#include "thinfb/solver.hpp"
#include "thinfb/strata.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace thinfb;

namespace {

json grid_json(const GridSpec& s) {
  return {{"n", s.n},
          {"alpha", s.alpha},
          {"half_extent", s.half_extent},
          {"spacing", s.spacing},
          {"thin_count", s.thin_count},
          {"vert_count", s.vert_count}};
}

json meta_json(const GridSpec& s, std::uint64_t hash, std::uint64_t seed) {
  char hex[32];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(hash));
  return {{"tool_version", kToolVersion},
          {"scenario_hash", hex},
          {"seed", seed},
          {"grid", grid_json(s)}};
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os << j.dump(2) << "\n";
}

// Leftmost canonical free boundary node (ZERO with a POSITIVE axis
// neighbor), if any.
std::optional<std::array<double, 2>> find_fb(const Grid& g, const ScalarField& u) {
  ThinMask mask(g.spec);
  const int n2 = g.spec.n == 1 ? 1 : g.nt();
  for (int i1 = 0; i1 < g.nt(); ++i1)
    for (int i2 = 0; i2 < n2; ++i2)
      mask.states[g.slab_idx(i1, i2)] =
          u.values[g.idx(i1, i2, 0)] > 0.0 ? ThinState::POSITIVE : ThinState::ZERO;
  FreeBoundary fb = extract_free_boundary(g, mask);
  for (const auto& p : fb.points)
    if (p.state == ThinState::ZERO) return p.x;
  return std::nullopt;
}

std::vector<double> profile_radii(const GridSpec& spec, const std::array<double, 2>& c) {
  double margin = spec.half_extent - std::max(std::abs(c[0]), std::abs(c[1])) - 4 * spec.spacing;
  double rmax = std::min(0.44 * spec.half_extent, margin - 0.03 * spec.half_extent);
  double rmin = std::max(0.12 * spec.half_extent, 4 * spec.spacing);
  std::vector<double> radii;
  if (rmax <= rmin) {
    radii.push_back(rmin);
    return radii;
  }
  for (int k = 0; k < 5; ++k) radii.push_back(rmin + (rmax - rmin) * k / 4.0);
  return radii;
}

void write_weiss_csv(const fs::path& path, const WeissProfile& wp) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os << "r,psi,deficit_from_prev,identity_gap\n";
  os.precision(17);
  for (std::size_t k = 0; k < wp.radii.size(); ++k) {
    double def = k == 0 ? 0.0 : wp.deficit[k - 1];
    double gap = k == 0 ? 0.0 : std::abs(wp.psi[k] - wp.psi[k - 1] - wp.deficit[k - 1]);
    os << wp.radii[k] << "," << wp.psi[k] << "," << def << "," << gap << "\n";
  }
}

int cmd_solve(const std::string& config_path, const std::string& out_override,
              std::optional<std::uint64_t> seed_override) {
  Config cfg = Config::parse_file(config_path);
  Scenario sc = Scenario::from_config(cfg);
  if (seed_override) sc.seed = *seed_override;
  Grid g = build_grid(sc.grid);
  std::optional<std::uint64_t> gen_seed;
  if (sc.generator.rfind("random:", 0) == 0) gen_seed = sc.seed;
  BoundaryTrace bnd = generate_boundary(g, sc.generator, gen_seed);

  SolveResult res = minimize(g, bnd, sc.solver);

  fs::path out = out_override.empty() ? fs::path(sc.output_dir) : fs::path(out_override);
  fs::create_directories(out);
  write_field((out / "field.thinph1").string(), res.field);
  write_mask((out / "mask.thinph1").string(), res.mask);

  json j = meta_json(sc.grid, scenario_hash(cfg), sc.seed);
  j["generator"] = sc.generator;
  j["converged"] = res.converged;
  j["outer_iterations"] = res.iterations;
  j["flips"] = res.flips_log.size();
  j["energy"] = {{"dirichlet", res.energy.dirichlet},
                 {"thin_area", res.energy.thin_area},
                 {"total", res.energy.total}};
  write_json(out / "solve.json", j);

  if (!res.converged) {
    std::cerr << "solver did not certify a local minimum within the iteration budget\n";
    return 3;
  }
  return 0;
}

int cmd_diagnose(const std::string& field_path, const std::string& out_dir,
                 std::uint64_t seed) {
  ScalarField u = read_field(field_path);
  Grid g = build_grid(u.spec);
  fs::path out = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
  fs::create_directories(out);

  ThinMask mask(g.spec);
  const int n2 = g.spec.n == 1 ? 1 : g.nt();
  for (int i1 = 0; i1 < g.nt(); ++i1)
    for (int i2 = 0; i2 < n2; ++i2)
      mask.states[g.slab_idx(i1, i2)] =
          u.values[g.idx(i1, i2, 0)] > 0.0 ? ThinState::POSITIVE : ThinState::ZERO;

  json j = meta_json(u.spec, scenario_hash(Config{}), seed);
  j["energy_box"] = [&] {
    EnergyBreakdown e = eval_J_box(g, u);
    return json{{"dirichlet", e.dirichlet}, {"thin_area", e.thin_area}, {"total", e.total}};
  }();

  FreeBoundary fb = extract_free_boundary(g, mask);
  json fbj = json::array();
  for (const auto& p : fb.points)
    fbj.push_back({{"x1", p.x[0]},
                   {"x2", p.x[1]},
                   {"state", p.state == ThinState::ZERO ? "ZERO" : "POSITIVE"}});
  j["free_boundary"] = fbj;

  auto center = find_fb(g, u);
  if (center) {
    std::vector<double> radii = profile_radii(u.spec, *center);
    WeissProfile wp = weiss_profile(g, u, *center, radii);
    write_weiss_csv(out / "weiss_profile.csv", wp);
    double psi0 = 0.0;
    ClassifierConfig ccfg;
    ccfg.blowup_radii = {radii.front()};
    PointClass pc = classify_point(g, u, *center, ccfg, &psi0);
    double flat = flatness(g, mask, *center, radii.front());
    LambdaDensity dens = lambda_density(g, u);
    double lam = lambda_ball(g, u, dens, mask, *center, radii.front());
    j["center"] = {{"x1", (*center)[0]}, {"x2", (*center)[1]}};
    j["weiss"] = {{"radii", wp.radii},
                  {"psi", wp.psi},
                  {"max_monotonicity_violation", wp.max_monotonicity_violation},
                  {"max_identity_gap", wp.max_identity_gap}};
    j["classification"] = {{"psi0", psi0},
                           {"class", pc == PointClass::REGULAR   ? "REGULAR"
                                     : pc == PointClass::SINGULAR ? "SINGULAR"
                                                                  : "UNRESOLVED"}};
    j["flatness"] = flat;
    j["lambda_ball"] = lam;
    j["perimeter"] = perimeter_estimate(g, mask, *center, radii.front());
  } else {
    j["free_boundary_empty"] = true;
  }
  write_json(out / "report.json", j);
  return 0;
}

int cmd_weiss(const std::string& field_path, const std::string& out_dir) {
  ScalarField u = read_field(field_path);
  Grid g = build_grid(u.spec);
  fs::path out = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
  fs::create_directories(out);
  std::array<double, 2> center = find_fb(g, u).value_or(std::array<double, 2>{0.0, 0.0});
  WeissProfile wp = weiss_profile(g, u, center, profile_radii(u.spec, center));
  write_weiss_csv(out / "weiss_profile.csv", wp);
  std::cout << "center = (" << center[0] << ", " << center[1] << ")\n";
  for (std::size_t k = 0; k < wp.radii.size(); ++k)
    std::cout << "r=" << wp.radii[k] << "  psi=" << wp.psi[k] << "\n";
  return 0;
}

int cmd_strata(const std::string& field_path, const std::string& out_dir,
               std::uint64_t seed) {
  ScalarField u = read_field(field_path);
  Grid g = build_grid(u.spec);
  fs::path out = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
  fs::create_directories(out);
  std::array<double, 2> center = find_fb(g, u).value_or(std::array<double, 2>{0.0, 0.0});
  double margin = u.spec.half_extent -
                  std::max(std::abs(center[0]), std::abs(center[1]));
  double rmax = std::min(0.4 * u.spec.half_extent, 0.9 * margin);

  json j = meta_json(u.spec, scenario_hash(Config{}), seed);
  j["center"] = {{"x1", center[0]}, {"x2", center[1]}};
  json per_k = json::array();
  for (int k = 0; k <= u.spec.n; ++k) {
    double d = ksym_distance(g, u, center, rmax, k, 8, seed == 0 ? 31 : seed);
    per_k.push_back({{"k", k}, {"radius", rmax}, {"distance", d}});
  }
  j["ksym_distances"] = per_k;
  for (int k = 0; k + 1 <= u.spec.n; ++k) {
    StrataQuery q;
    q.k = k;
    q.point = center;
    q.r_max = rmax;
    q.r_min = std::max(rmax / 4.0, 8 * u.spec.spacing);
    StrataResult res = strata_membership(g, u, q);
    j["strata"][std::to_string(k)] = {
        {"member", res.member}, {"scales", res.scales}, {"distances", res.distances}};
  }
  write_json(out / "strata.json", j);
  std::cout << j["ksym_distances"].dump(2) << "\n";
  return 0;
}

int cmd_competitor(const std::string& config_path, const std::string& out_dir) {
  double alpha = 0.5, spacing = 0.125, extent = 16.0;
  std::vector<double> Rs = {2.0, 4.0};
  Config cfg;
  if (!config_path.empty()) {
    cfg = Config::parse_file(config_path);
    alpha = cfg.get_double("competitor.alpha", alpha);
    spacing = cfg.get_double("competitor.spacing", spacing);
    extent = cfg.get_double("competitor.extent", extent);
  }
  fs::path out = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
  fs::create_directories(out);
  json j = {{"tool_version", kToolVersion},
            {"alpha", alpha},
            {"spacing", spacing},
            {"extent", extent}};
  json runs = json::array();
  for (double R : Rs) {
    CompetitorResult res = competitor_log_cutoff(alpha, R, spacing, extent);
    runs.push_back({{"R", R},
                    {"delta_energy", res.delta_energy},
                    {"bound", res.bound},
                    {"delta_dirichlet", res.delta_dirichlet},
                    {"delta_area", res.delta_area}});
    std::cout << "R=" << R << "  delta=" << res.delta_energy << "  bound=" << res.bound
              << (res.delta_energy <= res.bound ? "  (holds)" : "  (violated)") << "\n";
  }
  j["runs"] = runs;
  write_json(out / "competitor.json", j);
  return 0;
}

int cmd_validate(const std::string& filter) {
  std::vector<CriterionOutcome> outcomes = run_acceptance(filter, std::cout);
  bool all = true;
  for (const auto& oc : outcomes) all = all && oc.pass;
  std::cout << (all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAILED") << "\n";
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"thin one-phase free boundary laboratory"};
  app.require_subcommand(1);

  std::string config_path, field_path, out_dir, filter;
  std::uint64_t seed = 0;
  bool seed_given = false;

  auto add_common = [&](CLI::App* sub, bool needs_config, bool needs_field) {
    auto* c = sub->add_option("--config", config_path, "scenario config file");
    if (needs_config) c->required();
    auto* f = sub->add_option("--field", field_path, "THINPH1 field file");
    if (needs_field) f->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "seed override")->each([&](const std::string&) {
      seed_given = true;
    });
    sub->add_option("--filter", filter, "criterion name filter");
  };

  CLI::App* solve = app.add_subcommand("solve", "minimize a scenario and write results");
  add_common(solve, true, false);
  CLI::App* diagnose = app.add_subcommand("diagnose", "full diagnostics for a field file");
  add_common(diagnose, false, true);
  CLI::App* weiss = app.add_subcommand("weiss", "Weiss density profile CSV");
  add_common(weiss, false, true);
  CLI::App* strata = app.add_subcommand("strata", "symmetry distances and strata membership");
  add_common(strata, false, true);
  CLI::App* competitor = app.add_subcommand("competitor", "logarithmic-cutoff competitor bound");
  add_common(competitor, false, false);
  CLI::App* validate = app.add_subcommand("validate", "run the acceptance suite");
  add_common(validate, false, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed())
      return cmd_solve(config_path, out_dir,
                       seed_given ? std::optional<std::uint64_t>(seed) : std::nullopt);
    if (diagnose->parsed()) return cmd_diagnose(field_path, out_dir, seed);
    if (weiss->parsed()) return cmd_weiss(field_path, out_dir);
    if (strata->parsed()) return cmd_strata(field_path, out_dir, seed);
    if (competitor->parsed()) return cmd_competitor(config_path, out_dir);
    if (validate->parsed()) return cmd_validate(filter);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "file error: " << e.what() << "\n";
    return 2;
  } catch (const GridError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
