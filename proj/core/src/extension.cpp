#include "thinfb/extension.hpp"

#include <algorithm>
#include <cmath>

namespace thinfb {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

ExtensionConfig ExtensionConfig::make(int n, double alpha) {
  if (n != 1 && n != 2) throw GridError("n must be 1 or 2");
  ExtensionConfig cfg;
  cfg.n = n;
  cfg.alpha = alpha;
  // Unit-mass constant: Gamma(n/2 + alpha) / (pi^{n/2} Gamma(alpha)).
  cfg.normalization = std::tgamma(n / 2.0 + alpha) /
                      (std::pow(kPi, n / 2.0) * std::tgamma(alpha));
  return cfg;
}

double poisson_kernel(const ExtensionConfig& cfg, const std::array<double, 2>& xi, double y) {
  if (y == 0.0) throw GridError("poisson_kernel requires y != 0");
  double r2 = xi[0] * xi[0] + y * y;
  if (cfg.n == 2) r2 += xi[1] * xi[1];
  double num = cfg.normalization * std::pow(std::abs(y), 2.0 * cfg.alpha);
  return num / std::pow(r2, (cfg.n + 2.0 * cfg.alpha) / 2.0);
}

// The convolution uses the substitution xi = y tan(theta) per thin radius,
// under which P_y(xi) dxi becomes
//   n=1: c cos^{2 alpha - 1}(theta) dtheta                 on (-pi/2, pi/2)
//   n=2: c sin(theta) cos^{2 alpha - 1}(theta) dtheta dphi on (0, pi/2) x (0, 2 pi)
// Midpoint quadrature in theta avoids the integrable endpoint singularity for
// alpha < 1/2 and captures the full heavy tail on a compact interval.

double poisson_kernel_mass(const ExtensionConfig& cfg, double y) {
  // The full-line mass is exactly 1 by the choice of normalization; the
  // truncation removes the tail theta in (tmax, pi/2), where the integrand is
  // cos^{2 alpha - 1} (n=1) resp. sin cos^{2 alpha - 1} (n=2).  The tail is
  // evaluated in closed form to leading order in s0 = pi/2 - tmax (which is
  // ~ y / truncation_radius, far below the quadrature scale), avoiding the
  // endpoint singularity a midpoint rule cannot resolve.
  const double s0 = kPi / 2.0 - std::atan(cfg.truncation_radius / std::abs(y));
  const double a = cfg.alpha;
  double tail;
  if (cfg.n == 1) {
    // int_0^{s0} sin^{2a-1}(s) ds ~ s0^{2a} / (2a); two symmetric tails, and
    // the full integral is B(a, 1/2).
    double full = std::sqrt(kPi) * std::tgamma(a) / std::tgamma(a + 0.5);
    tail = 2.0 * std::pow(s0, 2.0 * a) / (2.0 * a);
    return cfg.normalization * (full - tail);
  }
  // int_0^{s0} cos(s) sin^{2a-1}(s) ds ~ s0^{2a} / (2a); full integral over
  // (0, pi/2) is 1 / (2a).
  tail = std::pow(s0, 2.0 * a) / (2.0 * a);
  return cfg.normalization * 2.0 * kPi * (1.0 / (2.0 * a) - tail);
}

namespace {

// Sample f at a thin point, extending beyond the slab by boundary-ray values
// (clamped linear interpolation along each axis).
double sample_thin(const Grid& g, const ThinFunction& f, double x1, double x2) {
  auto axis = [&](double q, int& i, double& t) {
    double s = (q + g.spec.half_extent) / g.h();
    s = std::clamp(s, 0.0, static_cast<double>(g.nt() - 1));
    i = std::min(static_cast<int>(s), g.nt() - 2);
    t = s - i;
  };
  int i1, i2 = 0;
  double t1, t2 = 0.0;
  axis(x1, i1, t1);
  if (g.spec.n == 2) axis(x2, i2, t2);
  if (g.spec.n == 1)
    return (1 - t1) * f.values[i1] + t1 * f.values[i1 + 1];
  auto v = [&](int a, int b) { return f.values[g.slab_idx(a, b)]; };
  return (1 - t1) * ((1 - t2) * v(i1, i2) + t2 * v(i1, i2 + 1)) +
         t1 * ((1 - t2) * v(i1 + 1, i2) + t2 * v(i1 + 1, i2 + 1));
}

}  // namespace

ThinFunction restrict_to_slab(const Grid& g, const ScalarField& u) {
  ThinFunction f(g.spec);
  const int n2 = g.spec.n == 1 ? 1 : g.nt();
  for (int i1 = 0; i1 < g.nt(); ++i1)
    for (int i2 = 0; i2 < n2; ++i2)
      f.values[g.slab_idx(i1, i2)] = u.values[g.idx(i1, i2, 0)];
  return f;
}

ScalarField poisson_extend(const ExtensionConfig& cfg, const ThinFunction& f, const Grid& g) {
  ScalarField out(g.spec);
  const int M = cfg.quad_points;
  const int n2 = g.spec.n == 1 ? 1 : g.nt();

  for (int j = 0; j < g.ny(); ++j) {
    const double yv = g.y[j];
    if (j == 0) {
      for (int i1 = 0; i1 < g.nt(); ++i1)
        for (int i2 = 0; i2 < n2; ++i2)
          out.values[g.idx(i1, i2, 0)] = f.values[g.slab_idx(i1, i2)];
      continue;
    }
    const double tmax = std::atan(cfg.truncation_radius / yv);
    if (cfg.n == 1) {
      const double dt = 2.0 * tmax / M;
      std::vector<double> w(M), off(M);
      for (int k = 0; k < M; ++k) {
        double th = -tmax + (k + 0.5) * dt;
        w[k] = cfg.normalization * std::pow(std::cos(th), 2.0 * cfg.alpha - 1.0) * dt;
        off[k] = yv * std::tan(th);
      }
      for (int i1 = 0; i1 < g.nt(); ++i1) {
        double acc = 0.0;
        for (int k = 0; k < M; ++k) acc += w[k] * sample_thin(g, f, g.x[i1] - off[k], 0.0);
        out.values[g.idx(i1, 0, j)] = acc;
      }
    } else {
      const int Mr = 256, Mp = 64;  // radial x angular resolution
      const double dt = tmax / Mr, dp = 2.0 * kPi / Mp;
      std::vector<double> w(Mr), rad(Mr);
      for (int k = 0; k < Mr; ++k) {
        double th = (k + 0.5) * dt;
        w[k] = cfg.normalization * std::sin(th) *
               std::pow(std::cos(th), 2.0 * cfg.alpha - 1.0) * dt * dp;
        rad[k] = yv * std::tan(th);
      }
      for (int i1 = 0; i1 < g.nt(); ++i1)
        for (int i2 = 0; i2 < n2; ++i2) {
          double acc = 0.0;
          for (int k = 0; k < Mr; ++k)
            for (int m = 0; m < Mp; ++m) {
              double phi = (m + 0.5) * dp;
              acc += w[k] * sample_thin(g, f, g.x[i1] - rad[k] * std::cos(phi),
                                        g.x[i2] - rad[k] * std::sin(phi));
            }
          out.values[g.idx(i1, i2, j)] = acc;
        }
    }
  }
  return out;
}

double trivial_solution_value(double t, double y, double alpha) {
  double rho = std::sqrt(t * t + y * y);
  double base = (rho + t) / 2.0;
  return base <= 0.0 ? 0.0 : std::pow(base, alpha);
}

ScalarField trivial_solution(const Grid& g, const std::array<double, 2>& direction) {
  double norm = std::sqrt(direction[0] * direction[0] +
                          (g.spec.n == 2 ? direction[1] * direction[1] : 0.0));
  if (std::abs(norm - 1.0) > 1e-9) throw GridError("direction must be a unit vector");
  ScalarField u(g.spec);
  const int n2 = g.spec.n == 1 ? 1 : g.nt();
  for (int i1 = 0; i1 < g.nt(); ++i1)
    for (int i2 = 0; i2 < n2; ++i2) {
      double t = g.x[i1] * direction[0];
      if (g.spec.n == 2) t += g.x[i2] * direction[1];
      for (int j = 0; j < g.ny(); ++j)
        u.values[g.idx(i1, i2, j)] = trivial_solution_value(t, g.y[j], g.spec.alpha);
    }
  return u;
}

double frac_laplacian_trace(const Grid& g, const ScalarField& u, int i1, int i2) {
  if (g.ny() < 3) throw GridError("need at least 3 vertical rows");
  const double h = g.h(), b = g.spec.beta;
  double u0 = u.values[g.idx(i1, i2, 0)];
  double u1 = u.values[g.idx(i1, i2, 1)];
  double u2 = u.values[g.idx(i1, i2, 2)];
  // u = u0 + c y^{1-beta} + O(y^2); the 4:-1 combination cancels the y^2 term.
  double den = 4.0 * std::pow(h, 1.0 - b) - std::pow(2.0 * h, 1.0 - b);
  double c = (4.0 * (u1 - u0) - (u2 - u0)) / den;
  return c * (1.0 - b);
}

}  // namespace thinfb
