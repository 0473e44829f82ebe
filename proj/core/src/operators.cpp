#include "thinfb/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace thinfb {

namespace {

// Enumerate the weighted edges of the grid and apply fn(pa, pb, w) where w is
// the full-space (both halves) face weight divided by h^2.  The factor two
// for the reflection is uniform: the y = 0 dual row spans (-h/2, h/2) and
// every other edge has a mirror copy, so the reduced quadratic form is
// exactly twice the upper-half sum.
template <typename Fn>
void for_each_edge(const Grid& g, Fn&& fn) {
  const double h = g.h();
  const double inv_h2 = 1.0 / (h * h);
  const int nt = g.nt(), ny = g.ny();
  if (g.spec.n == 1) {
    for (int i = 0; i + 1 < nt; ++i)
      for (int j = 0; j < ny; ++j)
        fn(g.idx(i, 0, j), g.idx(i + 1, 0, j), 2.0 * g.ycell[j] * h * inv_h2);
    for (int i = 0; i < nt; ++i)
      for (int j = 0; j + 1 < ny; ++j)
        fn(g.idx(i, 0, j), g.idx(i, 0, j + 1), 2.0 * g.xcell[i] * g.yedge[j] * inv_h2);
    return;
  }
  for (int i1 = 0; i1 + 1 < nt; ++i1)
    for (int i2 = 0; i2 < nt; ++i2)
      for (int j = 0; j < ny; ++j)
        fn(g.idx(i1, i2, j), g.idx(i1 + 1, i2, j),
           2.0 * h * g.xcell[i2] * g.ycell[j] * inv_h2);
  for (int i1 = 0; i1 < nt; ++i1)
    for (int i2 = 0; i2 + 1 < nt; ++i2)
      for (int j = 0; j < ny; ++j)
        fn(g.idx(i1, i2, j), g.idx(i1, i2 + 1, j),
           2.0 * g.xcell[i1] * h * g.ycell[j] * inv_h2);
  for (int i1 = 0; i1 < nt; ++i1)
    for (int i2 = 0; i2 < nt; ++i2)
      for (int j = 0; j + 1 < ny; ++j)
        fn(g.idx(i1, i2, j), g.idx(i1, i2, j + 1),
           2.0 * g.xcell[i1] * g.xcell[i2] * g.yedge[j] * inv_h2);
}

}  // namespace

ScalarField apply_L(const Grid& g, const ScalarField& u) {
  ScalarField out(g.spec);
  for_each_edge(g, [&](std::int64_t a, std::int64_t b, double w) {
    double flux = w * (u.values[b] - u.values[a]);
    out.values[a] += flux;
    out.values[b] -= flux;
  });
  return out;
}

ScalarField scaled_residual(const Grid& g, const ScalarField& u) {
  ScalarField raw = apply_L(g, u);
  const double h2 = g.h() * g.h();
  const int n2 = g.spec.n == 1 ? 1 : g.nt();
  for (int i1 = 0; i1 < g.nt(); ++i1)
    for (int i2 = 0; i2 < n2; ++i2)
      for (int j = 0; j < g.ny(); ++j) {
        std::int64_t p = g.idx(i1, i2, j);
        raw.values[p] *= h2 / (2.0 * g.cell_weight(i1, i2, j));
      }
  return raw;
}

namespace {

struct LinearSystem {
  std::vector<std::int64_t> free_nodes;     // flat node -> listed order
  std::vector<std::int64_t> node_to_free;   // -1 for fixed
  // CSR-style adjacency over free unknowns plus rhs from fixed values.
  std::vector<double> diag;
  std::vector<std::vector<std::pair<std::int32_t, double>>> offdiag;
  std::vector<double> rhs;
};

LinearSystem build_system(const Grid& g, const ThinMask& zero_set, const BoundaryTrace& boundary,
                          std::vector<double>& full_values) {
  const std::int64_t total = g.spec.node_count();
  std::vector<char> fixed(total, 0);
  full_values.assign(total, 0.0);

  const int nt = g.nt(), ny = g.ny();
  const int n2 = g.spec.n == 1 ? 1 : nt;
  for (int i1 = 0; i1 < nt; ++i1)
    for (int i2 = 0; i2 < n2; ++i2) {
      for (int j = 0; j < ny; ++j) {
        std::int64_t p = g.idx(i1, i2, j);
        if (g.on_outer_boundary(i1, i2, j)) {
          fixed[p] = 1;
          full_values[p] = boundary.values[p];
        }
      }
      std::int64_t p0 = g.idx(i1, i2, 0);
      if (zero_set.states[g.slab_idx(i1, i2)] == ThinState::ZERO) {
        fixed[p0] = 1;
        full_values[p0] = 0.0;
      }
    }

  LinearSystem sys;
  sys.node_to_free.assign(total, -1);
  for (std::int64_t p = 0; p < total; ++p)
    if (!fixed[p]) {
      sys.node_to_free[p] = static_cast<std::int64_t>(sys.free_nodes.size());
      sys.free_nodes.push_back(p);
    }
  const std::size_t nfree = sys.free_nodes.size();
  sys.diag.assign(nfree, 0.0);
  sys.offdiag.assign(nfree, {});
  sys.rhs.assign(nfree, 0.0);

  for_each_edge(g, [&](std::int64_t a, std::int64_t b, double w) {
    std::int64_t fa = sys.node_to_free[a], fb = sys.node_to_free[b];
    if (fa >= 0) sys.diag[fa] += w;
    if (fb >= 0) sys.diag[fb] += w;
    if (fa >= 0 && fb >= 0) {
      sys.offdiag[fa].push_back({static_cast<std::int32_t>(fb), -w});
      sys.offdiag[fb].push_back({static_cast<std::int32_t>(fa), -w});
    } else if (fa >= 0) {
      sys.rhs[fa] += w * full_values[b];
    } else if (fb >= 0) {
      sys.rhs[fb] += w * full_values[a];
    }
  });
  return sys;
}

}  // namespace

ScalarField dirichlet_solve(const Grid& g, const ThinMask& zero_set,
                            const BoundaryTrace& boundary, SolveStats* stats,
                            const ScalarField* warm_start, const PcgOptions& opts) {
  std::vector<double> full;
  LinearSystem sys = build_system(g, zero_set, boundary, full);
  const std::size_t nfree = sys.free_nodes.size();

  std::vector<double> xv(nfree, 0.0);
  if (warm_start)
    for (std::size_t k = 0; k < nfree; ++k) xv[k] = warm_start->values[sys.free_nodes[k]];

  auto apply_A = [&](const std::vector<double>& v, std::vector<double>& out) {
    for (std::size_t k = 0; k < nfree; ++k) {
      double acc = sys.diag[k] * v[k];
      for (const auto& [q, w] : sys.offdiag[k]) acc += w * v[q];
      out[k] = acc;
    }
  };

  std::vector<double> r(nfree), z(nfree), p(nfree), Ap(nfree);
  apply_A(xv, r);
  for (std::size_t k = 0; k < nfree; ++k) r[k] = sys.rhs[k] - r[k];

  double rhs_norm = 0.0;
  for (double v : sys.rhs) rhs_norm += v * v;
  rhs_norm = std::sqrt(rhs_norm);
  const double tol = opts.rel_tol * std::max(rhs_norm, 1e-300);

  double rz = 0.0;
  for (std::size_t k = 0; k < nfree; ++k) {
    z[k] = r[k] / sys.diag[k];
    rz += r[k] * z[k];
  }
  p = z;

  double res = std::sqrt(std::inner_product(r.begin(), r.end(), r.begin(), 0.0));
  std::int64_t it = 0;
  while (res > tol && it < opts.max_iters && nfree > 0) {
    apply_A(p, Ap);
    double pAp = std::inner_product(p.begin(), p.end(), Ap.begin(), 0.0);
    if (pAp <= 0) break;
    double a = rz / pAp;
    for (std::size_t k = 0; k < nfree; ++k) {
      xv[k] += a * p[k];
      r[k] -= a * Ap[k];
    }
    double rz_new = 0.0;
    for (std::size_t k = 0; k < nfree; ++k) {
      z[k] = r[k] / sys.diag[k];
      rz_new += r[k] * z[k];
    }
    double beta_cg = rz_new / rz;
    rz = rz_new;
    for (std::size_t k = 0; k < nfree; ++k) p[k] = z[k] + beta_cg * p[k];
    res = std::sqrt(std::inner_product(r.begin(), r.end(), r.begin(), 0.0));
    ++it;
  }

  if (stats) {
    stats->iterations = static_cast<int>(it);
    stats->residual = res;
    stats->converged = res <= tol || rhs_norm == 0.0;
  }

  ScalarField out(g.spec);
  out.values = full;
  for (std::size_t k = 0; k < nfree; ++k) out.values[sys.free_nodes[k]] = xv[k];
  return out;
}

double weighted_ball_mean(const Grid& g, const ScalarField& u,
                          const std::array<double, 2>& center, double r) {
  const double R = g.spec.half_extent;
  if (std::abs(center[0]) + r > R || (g.spec.n == 2 && std::abs(center[1]) + r > R) || r > R)
    throw GridError("ball exits grid");
  double num = 0.0, den = 0.0;
  const int n2 = g.spec.n == 1 ? 1 : g.nt();
  for (int i1 = 0; i1 < g.nt(); ++i1)
    for (int i2 = 0; i2 < n2; ++i2) {
      double dx1 = g.x[i1] - center[0];
      double dx2 = g.spec.n == 2 ? g.x[i2] - center[1] : 0.0;
      double d2 = dx1 * dx1 + dx2 * dx2;
      if (d2 > r * r) continue;
      for (int j = 0; j < g.ny(); ++j) {
        if (d2 + g.y[j] * g.y[j] > r * r) break;
        double w = g.cell_weight(i1, i2, j);
        num += w * u.values[g.idx(i1, i2, j)];
        den += w;
      }
    }
  return num / den;
}

CaccioppoliResult caccioppoli_check(const Grid& g, const ScalarField& u,
                                    const std::array<double, 2>& center, double r) {
  // Sub-cell fraction of an edge midpoint dual cell inside the ball, S=4.
  CaccioppoliResult out;
  const double h = g.h();
  const int S = 4;
  auto frac = [&](double px, double py, double pz, double rr, int dim3) {
    int cnt = 0;
    for (int a = 0; a < S; ++a)
      for (int b = 0; b < S; ++b) {
        double ox = ((a + 0.5) / S - 0.5) * h, oy = ((b + 0.5) / S - 0.5) * h;
        if (dim3) {
          for (int c = 0; c < S; ++c) {
            double oz = ((c + 0.5) / S - 0.5) * h;
            double qx = px + ox, qy = py + oy, qz = pz + oz;
            cnt += (qx * qx + qy * qy + qz * qz <= rr * rr);
          }
        } else {
          double qx = px + ox, qy = pz + oy;
          cnt += (qx * qx + qy * qy <= rr * rr);
        }
      }
    return dim3 ? cnt / double(S * S * S) : cnt / double(S * S);
  };

  const int dim3 = g.spec.n == 2;
  // Dirichlet energy over B_{r/2}: edge quadrature with midpoint fractions.
  for_each_edge(g, [&](std::int64_t a, std::int64_t b, double w) {
    // Recover midpoint coordinates from flat indices.
    auto coords = [&](std::int64_t p, double& cx1, double& cx2, double& cy) {
      int ny = g.ny();
      int j = static_cast<int>(p % ny);
      std::int64_t s = p / ny;
      int n2 = g.spec.n == 1 ? 1 : g.nt();
      int i2 = static_cast<int>(s % n2);
      int i1 = static_cast<int>(s / n2);
      cx1 = g.x[i1] - center[0];
      cx2 = g.spec.n == 2 ? g.x[i2] - center[1] : 0.0;
      cy = g.y[j];
    };
    double ax, ay, az, bx, by, bz;
    coords(a, ax, ay, az);
    coords(b, bx, by, bz);
    double mx = (ax + bx) / 2, my = (ay + by) / 2, mz = (az + bz) / 2;
    double du = u.values[b] - u.values[a];
    double f = frac(mx, my, mz, r / 2, dim3);
    if (f > 0) out.lhs += w * du * du * f;  // w already holds 1/h^2 and the x2
  });

  // Weighted u^2 over the annulus B_r \ B_{r/2}.
  const int n2c = g.spec.n == 1 ? 1 : g.nt();
  for (int i1 = 0; i1 < g.nt(); ++i1)
    for (int i2 = 0; i2 < n2c; ++i2)
      for (int j = 0; j < g.ny(); ++j) {
        double px = g.x[i1] - center[0];
        double py = g.spec.n == 2 ? g.x[i2] - center[1] : 0.0;
        double pz = g.y[j];
        double fr = frac(px, py, pz, r, dim3) - frac(px, py, pz, r / 2, dim3);
        if (fr == 0.0) continue;
        double v = u.values[g.idx(i1, i2, j)];
        out.rhs += 2.0 * g.cell_weight(i1, i2, j) * v * v * fr;
      }
  out.rhs *= 4.0 / (r * r);
  return out;
}

}  // namespace thinfb
