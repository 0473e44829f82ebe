#include "thinfb/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "thinfb/rng.hpp"

namespace thinfb {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

LambdaDensity lambda_density(const Grid& g, const ScalarField& u) {
  LambdaDensity d;
  d.spec = g.spec;
  d.density.assign(g.spec.slab_size(), 0.0);
  const int n2 = g.spec.n == 1 ? 1 : g.nt();
  for (int i1 = 0; i1 < g.nt(); ++i1)
    for (int i2 = 0; i2 < n2; ++i2)
      d.density[g.slab_idx(i1, i2)] = 2.0 * frac_laplacian_trace(g, u, i1, i2);
  return d;
}

double lambda_ball(const Grid& g, const ScalarField& u, const LambdaDensity& dens,
                   const ThinMask& mask, const std::array<double, 2>& center, double r) {
  (void)u;
  const double h = g.h();
  double acc = 0.0;
  if (g.spec.n == 1) {
    for (int i = 0; i < g.nt(); ++i) {
      if (mask.states[i] != ThinState::ZERO) continue;
      // Dual cell clipped to the ball and, at a phase interface, to the
      // interface node's own coordinate (the free boundary location proxy).
      double lo = std::max(g.x[i] - h / 2, center[0] - r);
      double hi = std::min(g.x[i] + h / 2, center[0] + r);
      if (i > 0 && mask.states[i - 1] == ThinState::POSITIVE) lo = std::max(lo, g.x[i]);
      if (i + 1 < g.nt() && mask.states[i + 1] == ThinState::POSITIVE) hi = std::min(hi, g.x[i]);
      if (hi > lo) acc += dens.density[i] * (hi - lo);
    }
    return acc;
  }
  const int S = 4;
  for (int i1 = 0; i1 < g.nt(); ++i1)
    for (int i2 = 0; i2 < g.nt(); ++i2) {
      std::int64_t s = g.slab_idx(i1, i2);
      if (mask.states[s] != ThinState::ZERO) continue;
      double lo1 = g.x[i1] - h / 2, hi1 = g.x[i1] + h / 2;
      double lo2 = g.x[i2] - h / 2, hi2 = g.x[i2] + h / 2;
      if (i1 > 0 && mask.states[g.slab_idx(i1 - 1, i2)] == ThinState::POSITIVE) lo1 = g.x[i1];
      if (i1 + 1 < g.nt() && mask.states[g.slab_idx(i1 + 1, i2)] == ThinState::POSITIVE)
        hi1 = g.x[i1];
      if (i2 > 0 && mask.states[g.slab_idx(i1, i2 - 1)] == ThinState::POSITIVE) lo2 = g.x[i2];
      if (i2 + 1 < g.nt() && mask.states[g.slab_idx(i1, i2 + 1)] == ThinState::POSITIVE)
        hi2 = g.x[i2];
      int cnt = 0;
      for (int a = 0; a < S; ++a)
        for (int b = 0; b < S; ++b) {
          double q1 = g.x[i1] + ((a + 0.5) / S - 0.5) * h;
          double q2 = g.x[i2] + ((b + 0.5) / S - 0.5) * h;
          if (q1 < lo1 || q1 > hi1 || q2 < lo2 || q2 > hi2) continue;
          double d1 = q1 - center[0], d2 = q2 - center[1];
          cnt += (d1 * d1 + d2 * d2 <= r * r);
        }
      acc += dens.density[s] * h * h * cnt / double(S * S);
    }
  return acc;
}

FreeBoundary extract_free_boundary(const Grid& g, const ThinMask& mask) {
  FreeBoundary fb;
  const int n2 = g.spec.n == 1 ? 1 : g.nt();
  auto state = [&](int a, int b) { return mask.states[g.slab_idx(a, b)]; };
  for (int i1 = 0; i1 < g.nt(); ++i1)
    for (int i2 = 0; i2 < n2; ++i2) {
      ThinState s = state(i1, i2);
      bool other = false;
      if (i1 > 0 && state(i1 - 1, i2) != s) other = true;
      if (i1 + 1 < g.nt() && state(i1 + 1, i2) != s) other = true;
      if (g.spec.n == 2) {
        if (i2 > 0 && state(i1, i2 - 1) != s) other = true;
        if (i2 + 1 < g.nt() && state(i1, i2 + 1) != s) other = true;
      }
      if (other)
        fb.points.push_back({i1, i2,
                             {g.x[i1], g.spec.n == 2 ? g.x[i2] : 0.0}, s});
    }
  return fb;
}

ScalarField rescale_blowup(const Grid& g, const ScalarField& u,
                           const std::array<double, 2>& center, double rho,
                           double target_spacing) {
  if (std::abs(center[0]) + rho > g.spec.half_extent ||
      (g.spec.n == 2 && std::abs(center[1]) + rho > g.spec.half_extent))
    throw GridError("blow-up window exits grid");
  GridSpec tspec = GridSpec::make(g.spec.n, g.spec.alpha, 1.0, target_spacing);
  Grid tg = build_grid(tspec);
  ScalarField out(tspec);
  const double scale = std::pow(rho, g.spec.alpha);
  const int n2 = tspec.n == 1 ? 1 : tg.nt();
  for (int i1 = 0; i1 < tg.nt(); ++i1)
    for (int i2 = 0; i2 < n2; ++i2)
      for (int j = 0; j < tg.ny(); ++j) {
        double x1 = center[0] + rho * tg.x[i1];
        double x2 = tspec.n == 2 ? center[1] + rho * tg.x[i2] : 0.0;
        out.values[tg.idx(i1, i2, j)] =
            interpolate(g, u, x1, x2, rho * tg.y[j]) / scale;
      }
  return out;
}

double homogeneity_deviation(const Grid& g, const ScalarField& u,
                             const std::array<double, 2>& center) {
  return weiss_deficit(g, u, center, 0.2, 0.8);
}

double flatness(const Grid& g, const ThinMask& mask, const std::array<double, 2>& center,
                double r, int random_directions, std::uint64_t seed) {
  std::vector<std::array<double, 2>> dirs;
  dirs.push_back({1.0, 0.0});
  dirs.push_back({-1.0, 0.0});
  if (g.spec.n == 2) {
    dirs.push_back({0.0, 1.0});
    dirs.push_back({0.0, -1.0});
    SplitMix64 rng(seed);
    for (int k = 0; k < random_directions; ++k) {
      double phi = 2.0 * kPi * rng.next_double();
      dirs.push_back({std::cos(phi), std::sin(phi)});
    }
  }

  double best = std::numeric_limits<double>::infinity();
  const int n2 = g.spec.n == 1 ? 1 : g.nt();
  for (const auto& nu : dirs) {
    double eps = 0.0;
    for (int i1 = 0; i1 < g.nt(); ++i1)
      for (int i2 = 0; i2 < n2; ++i2) {
        double d1 = g.x[i1] - center[0];
        double d2 = g.spec.n == 2 ? g.x[i2] - center[1] : 0.0;
        if (d1 * d1 + d2 * d2 > r * r) continue;
        double proj = d1 * nu[0] + d2 * nu[1];
        if (mask.states[g.slab_idx(i1, i2)] == ThinState::ZERO)
          eps = std::max(eps, proj);   // zero phase must sit in {x.nu <= eps}
        else
          eps = std::max(eps, -proj);  // {x.nu <= -eps} must be all zero
      }
    best = std::min(best, eps / r);
  }
  return best;
}

PointClass classify_point(const Grid& g, const ScalarField& u,
                          const std::array<double, 2>& fb_point, const ClassifierConfig& cfg,
                          double* psi0_out) {
  const double half = g.spec.n == 1 ? 1.0 : kPi / 2.0;  // omega_n / 2
  const double gap = cfg.density_gap > 0 ? cfg.density_gap : 0.1 * half;
  std::vector<double> radii = cfg.blowup_radii;
  if (radii.empty()) radii = {0.9375, 0.75, 0.6};
  double rmin = *std::min_element(radii.begin(), radii.end());
  rmin = std::max(rmin, 4.0 * g.h());
  double psi0 = weiss_density(g, u, fb_point, rmin);
  if (psi0_out) *psi0_out = psi0;
  if (psi0 < half + gap / 2) return PointClass::REGULAR;
  if (psi0 > half + gap) return PointClass::SINGULAR;
  return PointClass::UNRESOLVED;
}

double perimeter_estimate(const Grid& g, const ThinMask& mask,
                          const std::array<double, 2>& center, double r) {
  const double h = g.h();
  auto state = [&](int a, int b) { return mask.states[g.slab_idx(a, b)]; };
  long count = 0;
  if (g.spec.n == 1) {
    for (int i = 0; i + 1 < g.nt(); ++i) {
      double mid = g.x[i] + h / 2 - center[0];
      if (std::abs(mid) > r) continue;
      count += state(i, 0) != state(i + 1, 0);
    }
    return static_cast<double>(count);
  }
  for (int i1 = 0; i1 < g.nt(); ++i1)
    for (int i2 = 0; i2 < g.nt(); ++i2) {
      if (i1 + 1 < g.nt()) {
        double m1 = g.x[i1] + h / 2 - center[0], m2 = g.x[i2] - center[1];
        if (m1 * m1 + m2 * m2 <= r * r) count += state(i1, i2) != state(i1 + 1, i2);
      }
      if (i2 + 1 < g.nt()) {
        double m1 = g.x[i1] - center[0], m2 = g.x[i2] + h / 2 - center[1];
        if (m1 * m1 + m2 * m2 <= r * r) count += state(i1, i2) != state(i1, i2 + 1);
      }
    }
  return count * h;
}

CorkscrewResult corkscrew_check(const Grid& g, const ThinMask& mask,
                                const std::array<double, 2>& fb_point, double r) {
  CorkscrewResult out;
  const int n2 = g.spec.n == 1 ? 1 : g.nt();

  struct Node { double x1, x2; ThinState s; };
  std::vector<Node> nodes;
  for (int i1 = 0; i1 < g.nt(); ++i1)
    for (int i2 = 0; i2 < n2; ++i2)
      nodes.push_back({g.x[i1], g.spec.n == 2 ? g.x[i2] : 0.0,
                       mask.states[g.slab_idx(i1, i2)]});

  auto best_for = [&](ThinState phase) {
    CorkscrewWitness w;
    for (const Node& z : nodes) {
      if (z.s != phase) continue;
      double d1 = z.x1 - fb_point[0], d2 = z.x2 - fb_point[1];
      double dc = std::sqrt(d1 * d1 + d2 * d2);
      if (dc > r) continue;
      double dopp = std::numeric_limits<double>::infinity();
      for (const Node& q : nodes)
        if (q.s != phase) {
          double e1 = q.x1 - z.x1, e2 = q.x2 - z.x2;
          dopp = std::min(dopp, std::sqrt(e1 * e1 + e2 * e2));
        }
      double c = std::min(dopp, r - dc) / r;
      if (c > w.c) {
        w.c = c;
        w.found = c > 0;
        w.point = {z.x1, z.x2};
      }
    }
    return w;
  };
  out.interior = best_for(ThinState::POSITIVE);
  out.exterior = best_for(ThinState::ZERO);
  return out;
}

// ---------------------------------------------------------------------------
// Logarithmic-cutoff competitor (n = 2).

namespace {

double psi_cutoff(double t, double R) {
  if (t <= R) return 1.0;
  if (t >= R * R) return 0.0;
  return 2.0 - std::log(t) / std::log(R);
}

double dpsi2_cutoff(double t, double R) {
  if (t <= R || t >= R * R) return 0.0;
  double d = t * std::log(R);
  return 1.0 / (d * d);
}

}  // namespace

CompetitorResult competitor_log_cutoff(double alpha, double R, double spacing, double extent) {
  if (extent < R * R) throw GridError("grid extent must be at least R^2");
  const double h = spacing;
  const int N = static_cast<int>(std::llround(2.0 * extent / h)) + 1;
  const int Ny = static_cast<int>(std::llround(extent / h)) + 1;
  const double beta = 1.0 - 2.0 * alpha;
  const double rad = R * R;  // the competitor ball radius

  std::vector<double> xs(N), yv(Ny), ycell(Ny), yedge(Ny - 1), xcell(N, h);
  for (int i = 0; i < N; ++i) xs[i] = -extent + h * i;
  for (int j = 0; j < Ny; ++j) {
    yv[j] = h * j;
    double lo = std::max(0.0, (j - 0.5) * h), hi = std::min(extent, (j + 0.5) * h);
    ycell[j] = weight_integral(lo, hi, beta);
  }
  for (int j = 0; j + 1 < Ny; ++j) yedge[j] = weight_integral(yv[j], yv[j + 1], beta);
  xcell.front() = xcell.back() = h / 2;

  auto V0 = [&](double x1, double y) { return trivial_solution_value(x1, y, alpha); };

  // Field values: the cone V, or its +-shift built by 25 fixed-point
  // iterations of the inverse coordinate change x1 -> x1 - sgn psi(|x|).
  auto field_value = [&](int which, double x1, double x2, double y) {
    if (which == 0) return V0(x1, y);
    double sgn = which > 0 ? 1.0 : -1.0;
    double p = x1;
    for (int it = 0; it < 25; ++it) {
      double rr = std::sqrt(p * p + x2 * x2 + y * y);
      p = x1 - sgn * psi_cutoff(rr, R);
    }
    return V0(p, y);
  };

  auto eval_J = [&](int which, double& dirichlet, double& area) {
    std::vector<double> f(static_cast<std::size_t>(N) * N * Ny);
    auto at = [&](int a, int b, int c) -> double& {
      return f[(static_cast<std::size_t>(a) * N + b) * Ny + c];
    };
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b)
        for (int c = 0; c < Ny; ++c) at(a, b, c) = field_value(which, xs[a], xs[b], yv[c]);

    double D = 0.0;
    for (int a = 0; a + 1 < N; ++a)
      for (int b = 0; b < N; ++b)
        for (int c = 0; c < Ny; ++c) {
          double m1 = (xs[a] + xs[a + 1]) / 2, m2 = xs[b], my = yv[c];
          if (m1 * m1 + m2 * m2 + my * my > rad * rad) continue;
          double du = (at(a + 1, b, c) - at(a, b, c)) / h;
          D += h * xcell[b] * ycell[c] * du * du;
        }
    for (int a = 0; a < N; ++a)
      for (int b = 0; b + 1 < N; ++b)
        for (int c = 0; c < Ny; ++c) {
          double m1 = xs[a], m2 = (xs[b] + xs[b + 1]) / 2, my = yv[c];
          if (m1 * m1 + m2 * m2 + my * my > rad * rad) continue;
          double du = (at(a, b + 1, c) - at(a, b, c)) / h;
          D += xcell[a] * h * ycell[c] * du * du;
        }
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b)
        for (int c = 0; c + 1 < Ny; ++c) {
          double m1 = xs[a], m2 = xs[b], my = (yv[c] + yv[c + 1]) / 2;
          if (m1 * m1 + m2 * m2 + my * my > rad * rad) continue;
          double du = (at(a, b, c + 1) - at(a, b, c)) / h;
          D += xcell[a] * xcell[b] * yedge[c] * du * du;
        }
    D *= 2.0;

    double m = 0.0;
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) {
        if (xs[a] * xs[a] + xs[b] * xs[b] > rad * rad) continue;
        if (at(a, b, 0) > 0.0) m += xcell[a] * xcell[b];
      }
    dirichlet = D;
    area = m;
  };

  double Dv, mv, Dp, mp, Dm, mm;
  eval_J(0, Dv, mv);
  eval_J(+1, Dp, mp);
  eval_J(-1, Dm, mm);

  CompetitorResult out;
  out.delta_dirichlet = Dp + Dm - 2.0 * Dv;
  out.delta_area = mp + mm - 2.0 * mv;
  out.delta_energy = out.delta_dirichlet + out.delta_area;

  // Bound: node quadrature of |y|^beta |grad V|^2 psi'(|x|)^2 over B_{R^2}.
  double bound = 0.0;
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < Ny; ++c) {
        double rr = std::sqrt(xs[a] * xs[a] + xs[b] * xs[b] + yv[c] * yv[c]);
        if (rr > rad) continue;
        double dp2 = dpsi2_cutoff(rr, R);
        if (dp2 == 0.0) continue;
        // Central differences in the interior only; the cutoff support stays
        // away from the grid edges, so boundary slices contribute nothing.
        double g1 = (a > 0 && a < N - 1)
                        ? (V0(xs[a + 1], yv[c]) - V0(xs[a - 1], yv[c])) / (2 * h)
                        : 0.0;
        double gy = (c > 0 && c < Ny - 1)
                        ? (V0(xs[a], yv[c + 1]) - V0(xs[a], yv[c - 1])) / (2 * h)
                        : 0.0;
        double grad2 = g1 * g1 + gy * gy;
        bound += xcell[a] * xcell[b] * ycell[c] * grad2 * dp2;
      }
  out.bound = 2.0 * bound;
  return out;
}

HolderReport holder_report(const Grid& g, const ScalarField& u, const FreeBoundary& fb) {
  HolderReport rep;
  const double h = g.h(), alpha = g.spec.alpha, R = g.spec.half_extent;
  const int n2 = g.spec.n == 1 ? 1 : g.nt();
  for (const auto& p : fb.points) {
    double margin = R - std::max(std::abs(p.x[0]), g.spec.n == 2 ? std::abs(p.x[1]) : 0.0);
    double best = 0.0;
    for (double r = 0.5; r >= 4.0 * h; r /= 2.0) {
      if (r > 0.5 * margin) continue;
      double sup = 0.0;
      for (int i1 = 0; i1 < g.nt(); ++i1)
        for (int i2 = 0; i2 < n2; ++i2)
          for (int j = 0; j < g.ny(); ++j) {
            double d1 = g.x[i1] - p.x[0];
            double d2 = g.spec.n == 2 ? g.x[i2] - p.x[1] : 0.0;
            double dist = std::sqrt(d1 * d1 + d2 * d2 + g.y[j] * g.y[j]);
            if (std::abs(dist - r) > h / 2) continue;
            sup = std::max(sup, u.values[g.idx(i1, i2, j)]);
          }
      best = std::max(best, sup / std::pow(r, alpha));
    }
    rep.per_point.push_back(best);
    rep.constant = std::max(rep.constant, best);
  }
  return rep;
}

}  // namespace thinfb
