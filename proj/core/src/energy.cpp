#include "thinfb/energy.hpp"

#include <algorithm>
#include <cmath>

namespace thinfb {

namespace {

// Fraction of an axis-aligned cube of side h around `p` (relative to the ball
// center) lying inside the ball of radius r, sampled on an S^dim sub-grid
// with offsets ((k + 0.5)/S - 0.5) h.  Cells that are entirely inside or
// outside by the conservative distance bound short-circuit to exactly 1 or 0,
// which matches the sampled count bit-for-bit.
template <int DIM, int S>
double cube_fraction(const double* p, double h, double r) {
  double d2 = 0.0;
  for (int d = 0; d < DIM; ++d) d2 += p[d] * p[d];
  const double dist = std::sqrt(d2);
  const double offmax = (0.5 - 0.5 / S) * h * std::sqrt(double(DIM));
  if (dist + offmax <= r) return 1.0;
  if (dist - offmax > r) return 0.0;

  int cnt = 0;
  double q[3];
  if constexpr (DIM == 2) {
    for (int a = 0; a < S; ++a) {
      q[0] = p[0] + ((a + 0.5) / S - 0.5) * h;
      for (int b = 0; b < S; ++b) {
        q[1] = p[1] + ((b + 0.5) / S - 0.5) * h;
        cnt += (q[0] * q[0] + q[1] * q[1] <= r * r);
      }
    }
    return cnt / double(S * S);
  } else {
    for (int a = 0; a < S; ++a) {
      q[0] = p[0] + ((a + 0.5) / S - 0.5) * h;
      for (int b = 0; b < S; ++b) {
        q[1] = p[1] + ((b + 0.5) / S - 0.5) * h;
        for (int c = 0; c < S; ++c) {
          q[2] = p[2] + ((c + 0.5) / S - 0.5) * h;
          cnt += (q[0] * q[0] + q[1] * q[1] + q[2] * q[2] <= r * r);
        }
      }
    }
    return cnt / double(S * S * S);
  }
}

void check_ball(const Grid& g, const std::array<double, 2>& center, double r) {
  const double R = g.spec.half_extent;
  bool ok = r > 0 && std::abs(center[0]) + r <= R + 1e-12 && r <= R + 1e-12;
  if (g.spec.n == 2) ok = ok && std::abs(center[1]) + r <= R + 1e-12;
  if (!ok) throw GridError("region exits grid");
}

// Dirichlet energy (both halves) over the ball via edge quadrature.
double dirichlet_ball(const Grid& g, const ScalarField& u,
                      const std::array<double, 2>& c, double r) {
  const double h = g.h();
  double D = 0.0;
  if (g.spec.n == 1) {
    for (int i = 0; i + 1 < g.nt(); ++i)
      for (int j = 0; j < g.ny(); ++j) {
        double p[2] = {(g.x[i] + g.x[i + 1]) / 2 - c[0], g.y[j]};
        double f = cube_fraction<2, 4>(p, h, r);
        if (f == 0.0) continue;
        double du = (u.values[g.idx(i + 1, 0, j)] - u.values[g.idx(i, 0, j)]) / h;
        D += g.ycell[j] * h * du * du * f;
      }
    for (int i = 0; i < g.nt(); ++i)
      for (int j = 0; j + 1 < g.ny(); ++j) {
        double p[2] = {g.x[i] - c[0], (g.y[j] + g.y[j + 1]) / 2};
        double f = cube_fraction<2, 4>(p, h, r);
        if (f == 0.0) continue;
        double du = (u.values[g.idx(i, 0, j + 1)] - u.values[g.idx(i, 0, j)]) / h;
        D += g.xcell[i] * g.yedge[j] * du * du * f;
      }
    return 2.0 * D;
  }
  for (int i1 = 0; i1 + 1 < g.nt(); ++i1)
    for (int i2 = 0; i2 < g.nt(); ++i2)
      for (int j = 0; j < g.ny(); ++j) {
        double p[3] = {(g.x[i1] + g.x[i1 + 1]) / 2 - c[0], g.x[i2] - c[1], g.y[j]};
        double f = cube_fraction<3, 3>(p, h, r);
        if (f == 0.0) continue;
        double du = (u.values[g.idx(i1 + 1, i2, j)] - u.values[g.idx(i1, i2, j)]) / h;
        D += h * g.xcell[i2] * g.ycell[j] * du * du * f;
      }
  for (int i1 = 0; i1 < g.nt(); ++i1)
    for (int i2 = 0; i2 + 1 < g.nt(); ++i2)
      for (int j = 0; j < g.ny(); ++j) {
        double p[3] = {g.x[i1] - c[0], (g.x[i2] + g.x[i2 + 1]) / 2 - c[1], g.y[j]};
        double f = cube_fraction<3, 3>(p, h, r);
        if (f == 0.0) continue;
        double du = (u.values[g.idx(i1, i2 + 1, j)] - u.values[g.idx(i1, i2, j)]) / h;
        D += g.xcell[i1] * h * g.ycell[j] * du * du * f;
      }
  for (int i1 = 0; i1 < g.nt(); ++i1)
    for (int i2 = 0; i2 < g.nt(); ++i2)
      for (int j = 0; j + 1 < g.ny(); ++j) {
        double p[3] = {g.x[i1] - c[0], g.x[i2] - c[1], (g.y[j] + g.y[j + 1]) / 2};
        double f = cube_fraction<3, 3>(p, h, r);
        if (f == 0.0) continue;
        double du = (u.values[g.idx(i1, i2, j + 1)] - u.values[g.idx(i1, i2, j)]) / h;
        D += g.xcell[i1] * g.xcell[i2] * g.yedge[j] * du * du * f;
      }
  return 2.0 * D;
}

// Thin positivity measure inside the ball: exact interval clipping (n=1) or
// S=4 2-D sub-cell fractions (n=2), positivity meaning value > 0 exactly.
double thin_area_ball(const Grid& g, const ScalarField& u,
                      const std::array<double, 2>& c, double r) {
  const double h = g.h();
  double m = 0.0;
  if (g.spec.n == 1) {
    for (int i = 0; i < g.nt(); ++i) {
      if (u.values[g.idx(i, 0, 0)] <= 0.0) continue;
      double a = std::max(g.x[i] - h / 2, c[0] - r);
      double b = std::min(g.x[i] + h / 2, c[0] + r);
      if (b > a) m += b - a;
    }
    return m;
  }
  for (int i1 = 0; i1 < g.nt(); ++i1)
    for (int i2 = 0; i2 < g.nt(); ++i2) {
      if (u.values[g.idx(i1, i2, 0)] <= 0.0) continue;
      double p[2] = {g.x[i1] - c[0], g.x[i2] - c[1]};
      m += cube_fraction<2, 4>(p, h, r) * h * h;
    }
  return m;
}

// Weighted ball integral of u^2 (both halves) with the sphere-quality
// sub-cell resolution (S=8 for n=1, S=3 for n=2).
double ball_integral_u2(const Grid& g, const ScalarField& u,
                        const std::array<double, 2>& c, double r) {
  const double h = g.h();
  double V = 0.0;
  if (g.spec.n == 1) {
    for (int i = 0; i < g.nt(); ++i)
      for (int j = 0; j < g.ny(); ++j) {
        double p[2] = {g.x[i] - c[0], g.y[j]};
        double f = cube_fraction<2, 8>(p, h, r);
        if (f == 0.0) continue;
        double v = u.values[g.idx(i, 0, j)];
        V += g.xcell[i] * g.ycell[j] * v * v * f;
      }
    return 2.0 * V;
  }
  for (int i1 = 0; i1 < g.nt(); ++i1)
    for (int i2 = 0; i2 < g.nt(); ++i2)
      for (int j = 0; j < g.ny(); ++j) {
        double p[3] = {g.x[i1] - c[0], g.x[i2] - c[1], g.y[j]};
        double f = cube_fraction<3, 3>(p, h, r);
        if (f == 0.0) continue;
        double v = u.values[g.idx(i1, i2, j)];
        V += g.xcell[i1] * g.xcell[i2] * g.ycell[j] * v * v * f;
      }
  return 2.0 * V;
}

}  // namespace

double sphere_integral_u2(const Grid& g, const ScalarField& u,
                          const std::array<double, 2>& center, double r) {
  const double h = g.h();
  return (ball_integral_u2(g, u, center, r + h / 2) -
          ball_integral_u2(g, u, center, r - h / 2)) / h;
}

EnergyBreakdown eval_J_box(const Grid& g, const ScalarField& u) {
  EnergyBreakdown e;
  const double h = g.h();
  if (g.spec.n == 1) {
    for (int i = 0; i + 1 < g.nt(); ++i)
      for (int j = 0; j < g.ny(); ++j) {
        double du = (u.values[g.idx(i + 1, 0, j)] - u.values[g.idx(i, 0, j)]) / h;
        e.dirichlet += g.ycell[j] * h * du * du;
      }
    for (int i = 0; i < g.nt(); ++i)
      for (int j = 0; j + 1 < g.ny(); ++j) {
        double du = (u.values[g.idx(i, 0, j + 1)] - u.values[g.idx(i, 0, j)]) / h;
        e.dirichlet += g.xcell[i] * g.yedge[j] * du * du;
      }
    e.dirichlet *= 2.0;
    for (int i = 0; i < g.nt(); ++i)
      if (u.values[g.idx(i, 0, 0)] > 0.0) e.thin_area += g.xcell[i];
  } else {
    for (int i1 = 0; i1 + 1 < g.nt(); ++i1)
      for (int i2 = 0; i2 < g.nt(); ++i2)
        for (int j = 0; j < g.ny(); ++j) {
          double du = (u.values[g.idx(i1 + 1, i2, j)] - u.values[g.idx(i1, i2, j)]) / h;
          e.dirichlet += h * g.xcell[i2] * g.ycell[j] * du * du;
        }
    for (int i1 = 0; i1 < g.nt(); ++i1)
      for (int i2 = 0; i2 + 1 < g.nt(); ++i2)
        for (int j = 0; j < g.ny(); ++j) {
          double du = (u.values[g.idx(i1, i2 + 1, j)] - u.values[g.idx(i1, i2, j)]) / h;
          e.dirichlet += g.xcell[i1] * h * g.ycell[j] * du * du;
        }
    for (int i1 = 0; i1 < g.nt(); ++i1)
      for (int i2 = 0; i2 < g.nt(); ++i2)
        for (int j = 0; j + 1 < g.ny(); ++j) {
          double du = (u.values[g.idx(i1, i2, j + 1)] - u.values[g.idx(i1, i2, j)]) / h;
          e.dirichlet += g.xcell[i1] * g.xcell[i2] * g.yedge[j] * du * du;
        }
    e.dirichlet *= 2.0;
    for (int i1 = 0; i1 < g.nt(); ++i1)
      for (int i2 = 0; i2 < g.nt(); ++i2)
        if (u.values[g.idx(i1, i2, 0)] > 0.0) e.thin_area += g.xcell[i1] * g.xcell[i2];
  }
  e.total = e.dirichlet + e.thin_area;
  return e;
}

EnergyBreakdown eval_J_local(const Grid& g, const ScalarField& u, const Ball& ball) {
  check_ball(g, ball.center, ball.radius);
  EnergyBreakdown e;
  e.dirichlet = dirichlet_ball(g, u, ball.center, ball.radius);
  e.thin_area = thin_area_ball(g, u, ball.center, ball.radius);
  e.total = e.dirichlet + e.thin_area;
  return e;
}

double eval_J_nonlocal(const Grid& g, const ThinFunction& f, const Ball& region) {
  const double h = g.h(), alpha = g.spec.alpha;
  const ExtensionConfig cfg = ExtensionConfig::make(g.spec.n, alpha);
  const double cna = cfg.normalization;
  const int n = g.spec.n;
  const int n2 = n == 1 ? 1 : g.nt();

  // Node list with weights and region membership.
  struct Pt { double x1, x2, w, v; bool in; };
  std::vector<Pt> pts;
  pts.reserve(g.spec.slab_size());
  for (int i1 = 0; i1 < g.nt(); ++i1)
    for (int i2 = 0; i2 < n2; ++i2) {
      Pt p;
      p.x1 = g.x[i1];
      p.x2 = n == 2 ? g.x[i2] : 0.0;
      p.w = n == 1 ? g.xcell[i1] : g.xcell[i1] * g.xcell[i2];
      p.v = f.values[g.slab_idx(i1, i2)];
      double d1 = p.x1 - region.center[0], d2 = n == 2 ? p.x2 - region.center[1] : 0.0;
      p.in = d1 * d1 + d2 * d2 <= region.radius * region.radius;
      pts.push_back(p);
    }

  // Gagliardo term over pairs not both outside the region; each unordered
  // pair once, doubled; diagonal (|x - xi| < h/2) dropped.
  double gag = 0.0;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      if (!pts[a].in && !pts[b].in) continue;
      double d1 = pts[a].x1 - pts[b].x1, d2 = pts[a].x2 - pts[b].x2;
      double dist = std::sqrt(d1 * d1 + d2 * d2);
      if (dist < h / 2) continue;
      double df = pts[a].v - pts[b].v;
      gag += 2.0 * df * df / std::pow(dist, n + 2.0 * alpha) * pts[a].w * pts[b].w;
    }

  double area = 0.0;
  for (const Pt& p : pts)
    if (p.in && p.v > 0.0) area += p.w;
  return cna * gag + area;
}

double weiss_density(const Grid& g, const ScalarField& u,
                     const std::array<double, 2>& center, double r) {
  const int n = g.spec.n;
  EnergyBreakdown e = eval_J_local(g, u, {center, r});
  double s2 = sphere_integral_u2(g, u, center, r);
  return e.total / std::pow(r, n) - g.spec.alpha * s2 / std::pow(r, n + 1);
}

double weiss_deficit(const Grid& g, const ScalarField& u,
                     const std::array<double, 2>& center, double r1, double r2) {
  const double h = g.h(), alpha = g.spec.alpha;
  const int n = g.spec.n;
  double acc = 0.0;

  auto grad1 = [&](int i1, int i2, int j, int axis) {
    // Central differences, one-sided at the thin ends; the vertical
    // derivative on the slab row is 0 by even reflection, one-sided at the top.
    auto v = [&](int a, int b, int c) { return u.values[g.idx(a, b, c)]; };
    if (axis == 0) {
      if (i1 == 0) return (v(1, i2, j) - v(0, i2, j)) / h;
      if (i1 == g.nt() - 1) return (v(i1, i2, j) - v(i1 - 1, i2, j)) / h;
      return (v(i1 + 1, i2, j) - v(i1 - 1, i2, j)) / (2 * h);
    }
    if (axis == 1) {
      if (i2 == 0) return (v(i1, 1, j) - v(i1, 0, j)) / h;
      if (i2 == g.nt() - 1) return (v(i1, i2, j) - v(i1, i2 - 1, j)) / h;
      return (v(i1, i2 + 1, j) - v(i1, i2 - 1, j)) / (2 * h);
    }
    if (j == 0) return 0.0;
    if (j == g.ny() - 1) return (v(i1, i2, j) - v(i1, i2, j - 1)) / h;
    return (v(i1, i2, j + 1) - v(i1, i2, j - 1)) / (2 * h);
  };

  const int n2 = n == 1 ? 1 : g.nt();
  for (int i1 = 0; i1 < g.nt(); ++i1)
    for (int i2 = 0; i2 < n2; ++i2)
      for (int j = 0; j < g.ny(); ++j) {
        double dx1 = g.x[i1] - center[0];
        double dx2 = n == 2 ? g.x[i2] - center[1] : 0.0;
        double yv = g.y[j];
        double fr;
        if (n == 1) {
          double p[2] = {dx1, yv};
          fr = cube_fraction<2, 4>(p, h, r2) - cube_fraction<2, 4>(p, h, r1);
        } else {
          double p[3] = {dx1, dx2, yv};
          fr = cube_fraction<3, 3>(p, h, r2) - cube_fraction<3, 3>(p, h, r1);
        }
        if (fr == 0.0) continue;
        double gx1 = grad1(i1, i2, j, 0);
        double gx2 = n == 2 ? grad1(i1, i2, j, 1) : 0.0;
        double gy = grad1(i1, i2, j, 2);
        double v = u.values[g.idx(i1, i2, j)];
        double radial = dx1 * gx1 + dx2 * gx2 + yv * gy;
        double dist = std::max(std::sqrt(dx1 * dx1 + dx2 * dx2 + yv * yv), 1e-12);
        double dev = alpha * v - radial;
        double integrand = 2.0 * dev * dev / std::pow(dist, n + 2.0);
        acc += g.cell_weight(i1, i2, j) * integrand * fr;
      }
  return 2.0 * acc;
}

WeissProfile weiss_profile(const Grid& g, const ScalarField& u,
                           const std::array<double, 2>& center,
                           const std::vector<double>& radii) {
  WeissProfile w;
  w.center = center;
  w.radii = radii;
  for (double r : radii) w.psi.push_back(weiss_density(g, u, center, r));
  for (std::size_t k = 0; k + 1 < radii.size(); ++k) {
    double def = weiss_deficit(g, u, center, radii[k], radii[k + 1]);
    w.deficit.push_back(def);
    double step = w.psi[k + 1] - w.psi[k];
    w.max_monotonicity_violation = std::max(w.max_monotonicity_violation, -step);
    w.max_identity_gap = std::max(w.max_identity_gap, std::abs(step - def));
  }
  return w;
}

FluxIdentity flux_identity_check(const Grid& g, const ScalarField& u, const Ball& ball) {
  FluxIdentity out;
  out.lhs = eval_J_local(g, u, ball).dirichlet;

  // Shell-averaged weighted flux int_{dB} |y|^beta u (grad u . nu).
  const double h = g.h(), r = ball.radius;
  const int n = g.spec.n;
  const int n2 = n == 1 ? 1 : g.nt();
  double acc = 0.0;
  for (int i1 = 0; i1 < g.nt(); ++i1)
    for (int i2 = 0; i2 < n2; ++i2)
      for (int j = 0; j < g.ny(); ++j) {
        double dx1 = g.x[i1] - ball.center[0];
        double dx2 = n == 2 ? g.x[i2] - ball.center[1] : 0.0;
        double yv = g.y[j];
        double fr;
        if (n == 1) {
          double p[2] = {dx1, yv};
          fr = cube_fraction<2, 8>(p, h, r + h / 2) - cube_fraction<2, 8>(p, h, r - h / 2);
        } else {
          double p[3] = {dx1, dx2, yv};
          fr = cube_fraction<3, 3>(p, h, r + h / 2) - cube_fraction<3, 3>(p, h, r - h / 2);
        }
        if (fr == 0.0) continue;
        auto v = [&](int a, int b, int c) { return u.values[g.idx(a, b, c)]; };
        double gx1 = (i1 == 0) ? (v(1, i2, j) - v(0, i2, j)) / h
                     : (i1 == g.nt() - 1) ? (v(i1, i2, j) - v(i1 - 1, i2, j)) / h
                     : (v(i1 + 1, i2, j) - v(i1 - 1, i2, j)) / (2 * h);
        double gx2 = 0.0;
        if (n == 2)
          gx2 = (i2 == 0) ? (v(i1, 1, j) - v(i1, 0, j)) / h
                : (i2 == g.nt() - 1) ? (v(i1, i2, j) - v(i1, i2 - 1, j)) / h
                : (v(i1, i2 + 1, j) - v(i1, i2 - 1, j)) / (2 * h);
        double gy = (j == 0) ? 0.0
                    : (j == g.ny() - 1) ? (v(i1, i2, j) - v(i1, i2, j - 1)) / h
                    : (v(i1, i2, j + 1) - v(i1, i2, j - 1)) / (2 * h);
        double dist = std::max(std::sqrt(dx1 * dx1 + dx2 * dx2 + yv * yv), 1e-12);
        double flux = (dx1 * gx1 + dx2 * gx2 + yv * gy) / dist;
        acc += g.cell_weight(i1, i2, j) * u.values[g.idx(i1, i2, j)] * flux * fr;
      }
  out.rhs = 2.0 * acc / h;
  return out;
}

}  // namespace thinfb
