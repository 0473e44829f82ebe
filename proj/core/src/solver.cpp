#include "thinfb/solver.hpp"

#include <algorithm>
#include <cmath>

namespace thinfb {

namespace {

// Slab nodes fixed by the boundary trace keep the phase of their data; free
// nodes are the interior slab nodes.
bool slab_fixed(const Grid& g, int i1, int i2) { return g.on_outer_boundary(i1, i2, 0); }

void seed_boundary_mask(const Grid& g, const BoundaryTrace& bnd, ThinMask& mask) {
  const int n2 = g.spec.n == 1 ? 1 : g.nt();
  for (int i1 = 0; i1 < g.nt(); ++i1)
    for (int i2 = 0; i2 < n2; ++i2)
      if (slab_fixed(g, i1, i2))
        mask.states[g.slab_idx(i1, i2)] =
            bnd.values[g.idx(i1, i2, 0)] > 0.0 ? ThinState::POSITIVE : ThinState::ZERO;
}

// Clamp solver noise, rebuild the canonical mask (POSITIVE iff value > 0),
// and re-evaluate the energy of the final field.
void finalize(const Grid& g, ScalarField& u, ThinMask& mask, EnergyBreakdown& energy) {
  for (double& v : u.values)
    if (v < 0.0 && v > -1e-9) v = 0.0;
  const int n2 = g.spec.n == 1 ? 1 : g.nt();
  for (int i1 = 0; i1 < g.nt(); ++i1)
    for (int i2 = 0; i2 < n2; ++i2) {
      double& v = u.values[g.idx(i1, i2, 0)];
      mask.states[g.slab_idx(i1, i2)] = v > 0.0 ? ThinState::POSITIVE : ThinState::ZERO;
      if (v <= 0.0) v = 0.0;
    }
  energy = eval_J_box(g, u);
}

std::vector<std::int64_t> canonical_zero_list(const Grid& g, const ScalarField& u) {
  std::vector<std::int64_t> zeros;
  const int n2 = g.spec.n == 1 ? 1 : g.nt();
  for (int i1 = 0; i1 < g.nt(); ++i1)
    for (int i2 = 0; i2 < n2; ++i2)
      if (u.values[g.idx(i1, i2, 0)] <= 0.0) zeros.push_back(g.slab_idx(i1, i2));
  return zeros;
}

// One-node energy change estimate for flipping a slab node with every other
// value frozen (gate only; a full re-solve decides each commit).
double local_flip_gain(const Grid& g, const ScalarField& u, const ThinMask& mask,
                       int i1, int i2) {
  const double h = g.h();
  const double inv_h2 = 1.0 / (h * h);
  std::vector<double> nb, wt;
  auto add = [&](double value, double w) { nb.push_back(value); wt.push_back(w); };
  if (g.spec.n == 1) {
    double wside = 2.0 * g.ycell[0] * h * inv_h2;
    if (i1 > 0) add(u.values[g.idx(i1 - 1, 0, 0)], wside);
    if (i1 < g.nt() - 1) add(u.values[g.idx(i1 + 1, 0, 0)], wside);
    add(u.values[g.idx(i1, 0, 1)], 2.0 * g.xcell[i1] * g.yedge[0] * inv_h2);
  } else {
    if (i1 > 0) add(u.values[g.idx(i1 - 1, i2, 0)], 2.0 * h * g.xcell[i2] * g.ycell[0] * inv_h2);
    if (i1 < g.nt() - 1)
      add(u.values[g.idx(i1 + 1, i2, 0)], 2.0 * h * g.xcell[i2] * g.ycell[0] * inv_h2);
    if (i2 > 0) add(u.values[g.idx(i1, i2 - 1, 0)], 2.0 * g.xcell[i1] * h * g.ycell[0] * inv_h2);
    if (i2 < g.nt() - 1)
      add(u.values[g.idx(i1, i2 + 1, 0)], 2.0 * g.xcell[i1] * h * g.ycell[0] * inv_h2);
    add(u.values[g.idx(i1, i2, 1)], 2.0 * g.xcell[i1] * g.xcell[i2] * g.yedge[0] * inv_h2);
  }
  double area = g.spec.n == 1 ? g.xcell[i1] : g.xcell[i1] * g.xcell[i2];
  auto quad = [&](double t) {
    double e = 0.0;
    for (std::size_t k = 0; k < nb.size(); ++k) e += wt[k] * (t - nb[k]) * (t - nb[k]);
    return e;
  };
  if (mask.states[g.slab_idx(i1, i2)] == ThinState::ZERO) {
    double wsum = 0.0, wavg = 0.0;
    for (std::size_t k = 0; k < nb.size(); ++k) { wsum += wt[k]; wavg += wt[k] * nb[k]; }
    double tstar = wavg / wsum;
    return quad(tstar) - quad(0.0) + area;
  }
  return quad(0.0) - quad(u.values[g.idx(i1, i2, 0)]) - area;
}

}  // namespace

std::vector<std::int64_t> free_slab_nodes(const Grid& g) {
  std::vector<std::int64_t> free;
  const int n2 = g.spec.n == 1 ? 1 : g.nt();
  for (int i1 = 0; i1 < g.nt(); ++i1)
    for (int i2 = 0; i2 < n2; ++i2)
      if (!slab_fixed(g, i1, i2)) free.push_back(g.slab_idx(i1, i2));
  return free;
}

SolveResult brute_force_minimize(const Grid& g, const BoundaryTrace& boundary,
                                 const SolveConfig& cfg) {
  for (double v : boundary.values)
    if (v < 0.0) throw GridError("boundary data must be nonnegative");
  std::vector<std::int64_t> free = free_slab_nodes(g);
  if (free.size() > 20) throw GridError("too many free slab nodes for enumeration");

  SolveResult best;
  std::vector<std::int64_t> best_zeros;
  bool have = false;
  ThinMask mask(g.spec);
  seed_boundary_mask(g, boundary, mask);

  for (std::uint32_t bits = 0; bits < (1u << free.size()); ++bits) {
    for (std::size_t b = 0; b < free.size(); ++b)
      mask.states[free[b]] = (bits >> b) & 1u ? ThinState::ZERO : ThinState::POSITIVE;
    ScalarField u = dirichlet_solve(g, mask, boundary, nullptr, nullptr, cfg.linear);
    EnergyBreakdown e = eval_J_box(g, u);
    std::vector<std::int64_t> zeros = canonical_zero_list(g, u);
    bool take = !have || e.total < best.energy.total - 1e-12 ||
                (std::abs(e.total - best.energy.total) <= 1e-12 && zeros < best_zeros);
    if (take) {
      best.field = std::move(u);
      best.energy = e;
      best_zeros = std::move(zeros);
      have = true;
    }
  }
  best.mask = ThinMask(g.spec);
  finalize(g, best.field, best.mask, best.energy);
  best.converged = true;
  best.iterations = static_cast<int>(1u << free.size());
  return best;
}

SolveResult minimize(const Grid& g, const BoundaryTrace& boundary, const SolveConfig& cfg) {
  for (double v : boundary.values)
    if (v < 0.0) throw GridError("boundary data must be nonnegative");
  std::vector<std::int64_t> free = free_slab_nodes(g);
  if (static_cast<int>(free.size()) <= cfg.exhaustive_threshold)
    return brute_force_minimize(g, boundary, cfg);

  SolveResult res;
  ThinMask mask(g.spec);
  seed_boundary_mask(g, boundary, mask);

  // Warm start: unconstrained solve; ZERO where below the median slab value.
  ThinMask all_pos = mask;
  for (std::int64_t p : free) all_pos.states[p] = ThinState::POSITIVE;
  ScalarField u = dirichlet_solve(g, all_pos, boundary, nullptr, nullptr, cfg.linear);
  {
    std::vector<double> slab;
    const int n2 = g.spec.n == 1 ? 1 : g.nt();
    for (int i1 = 0; i1 < g.nt(); ++i1)
      for (int i2 = 0; i2 < n2; ++i2) slab.push_back(u.values[g.idx(i1, i2, 0)]);
    std::vector<double> sorted = slab;
    std::sort(sorted.begin(), sorted.end());
    std::size_t m = sorted.size();
    double median = m % 2 ? sorted[m / 2] : (sorted[m / 2 - 1] + sorted[m / 2]) / 2.0;
    for (std::int64_t p : free)
      mask.states[p] = slab[p] < median ? ThinState::ZERO : ThinState::POSITIVE;
  }

  u = dirichlet_solve(g, mask, boundary, nullptr, &u, cfg.linear);
  double E = eval_J_box(g, u).total;
  const double ftol = cfg.flip_tolerance;

  auto slab_ij = [&](std::int64_t s, int& i1, int& i2) {
    if (g.spec.n == 1) { i1 = static_cast<int>(s); i2 = 0; }
    else { i1 = static_cast<int>(s / g.nt()); i2 = static_cast<int>(s % g.nt()); }
  };

  auto try_flip_set = [&](const std::vector<std::int64_t>& nodes) -> bool {
    ThinMask m2 = mask;
    for (std::int64_t s : nodes)
      m2.states[s] = m2.states[s] == ThinState::ZERO ? ThinState::POSITIVE : ThinState::ZERO;
    ScalarField u2 = dirichlet_solve(g, m2, boundary, nullptr, &u, cfg.linear);
    double E2 = eval_J_box(g, u2).total;
    if (E2 < E - ftol) {
      for (std::int64_t s : nodes) res.flips_log.emplace_back(s, (E2 - E) / nodes.size());
      mask = std::move(m2);
      u = std::move(u2);
      E = E2;
      return true;
    }
    return false;
  };
  auto try_flip = [&](std::int64_t s) -> bool { return try_flip_set({s}); };

  // Maximal connected groups of free nodes sharing a state.  Single-node
  // moves can be blocked by a whole-block barrier (un-zeroing one interior
  // node of a zero block buys little Dirichlet relief but pays full measure);
  // flipping the component as a unit escapes such local minima.
  auto components = [&]() {
    std::vector<std::vector<std::int64_t>> comps;
    std::vector<char> seen(mask.states.size(), 0);
    std::vector<char> is_free(mask.states.size(), 0);
    for (std::int64_t s : free) is_free[s] = 1;
    for (std::int64_t s0 : free) {
      if (seen[s0]) continue;
      std::vector<std::int64_t> comp, stack{s0};
      seen[s0] = 1;
      while (!stack.empty()) {
        std::int64_t s = stack.back();
        stack.pop_back();
        comp.push_back(s);
        int i1, i2;
        slab_ij(s, i1, i2);
        auto visit = [&](int a, int b) {
          if (a < 0 || a >= g.nt() || b < 0 || (g.spec.n == 2 ? b >= g.nt() : b > 0)) return;
          std::int64_t t = g.slab_idx(a, b);
          if (!is_free[t] || seen[t] || mask.states[t] != mask.states[s0]) return;
          seen[t] = 1;
          stack.push_back(t);
        };
        visit(i1 - 1, i2);
        visit(i1 + 1, i2);
        if (g.spec.n == 2) {
          visit(i1, i2 - 1);
          visit(i1, i2 + 1);
        }
      }
      comps.push_back(std::move(comp));
    }
    return comps;
  };

  bool certified = false;
  int outer = 0;
  for (; outer < cfg.max_outer_iters && !certified; ++outer) {
    int flips = 0;
    for (std::int64_t s : free) {
      int i1, i2;
      slab_ij(s, i1, i2);
      if (local_flip_gain(g, u, mask, i1, i2) < -ftol && try_flip(s)) ++flips;
    }
    if (flips == 0) {
      // Certification sweep: full re-solves for every candidate single flip
      // and for every same-state connected component flipped as a unit.
      int cert_flips = 0;
      for (std::int64_t s : free)
        if (try_flip(s)) ++cert_flips;
      for (const std::vector<std::int64_t>& comp : components())
        if (comp.size() > 1 && try_flip_set(comp)) ++cert_flips;
      certified = cert_flips == 0;
    }
  }

  res.field = std::move(u);
  res.mask = ThinMask(g.spec);
  finalize(g, res.field, res.mask, res.energy);
  res.iterations = outer;
  res.converged = certified;
  return res;
}

}  // namespace thinfb
