#include "thinfb/strata.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "thinfb/rng.hpp"

namespace thinfb {

namespace {

constexpr double kPi = 3.14159265358979323846;

double dist2(const std::array<double, 3>& a, const std::array<double, 3>& b, int dim) {
  double s = 0.0;
  for (int d = 0; d < dim; ++d) s += (a[d] - b[d]) * (a[d] - b[d]);
  return s;
}

}  // namespace

BetaReport beta2(const PointMeasure& mu, const BetaBall& ball, int k) {
  const int dim = mu.dim;
  if (dim < 1 || dim > 3) throw GridError("measure dimension must be 1..3");
  if (k < 0 || k > dim) throw GridError("plane dimension out of range");
  BetaReport rep;
  rep.ball = ball;
  rep.k = k;

  double mass = 0.0;
  std::array<double, 3> com{0, 0, 0};
  for (const Atom& a : mu.atoms) {
    if (dist2(a.x, ball.center, dim) > ball.radius * ball.radius) continue;
    mass += a.mass;
    for (int d = 0; d < dim; ++d) com[d] += a.mass * a.x[d];
  }
  rep.mass = mass;
  if (mass <= 0.0) return rep;
  for (int d = 0; d < dim; ++d) com[d] /= mass;
  rep.center_of_mass = com;

  Eigen::Matrix3d A = Eigen::Matrix3d::Zero();
  for (const Atom& a : mu.atoms) {
    if (dist2(a.x, ball.center, dim) > ball.radius * ball.radius) continue;
    for (int p = 0; p < dim; ++p)
      for (int q = 0; q < dim; ++q)
        A(p, q) += a.mass * (a.x[p] - com[p]) * (a.x[q] - com[q]);
  }
  A /= mass;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A.topLeftCorner(dim, dim));
  // Eigen returns ascending order; store descending.
  for (int d = 0; d < dim; ++d) {
    rep.eigenvalues[d] = es.eigenvalues()(dim - 1 - d);
    for (int q = 0; q < dim; ++q) rep.eigenvectors[d][q] = es.eigenvectors()(q, dim - 1 - d);
  }
  double tail = 0.0;
  for (int d = k; d < dim; ++d) tail += rep.eigenvalues[d];
  rep.beta_sq = mass / std::pow(ball.radius, k) * tail / (ball.radius * ball.radius);
  return rep;
}

double beta2_objective(const PointMeasure& mu, const BetaBall& ball, int k,
                       const std::array<double, 3>& point,
                       const std::vector<std::array<double, 3>>& basis) {
  const int dim = mu.dim;
  if (static_cast<int>(basis.size()) != k) throw GridError("basis size must equal k");
  double acc = 0.0;
  for (const Atom& a : mu.atoms) {
    if (dist2(a.x, ball.center, dim) > ball.radius * ball.radius) continue;
    double d2 = dist2(a.x, point, dim);
    for (const auto& b : basis) {
      double proj = 0.0;
      for (int d = 0; d < dim; ++d) proj += (a.x[d] - point[d]) * b[d];
      d2 -= proj * proj;
    }
    acc += a.mass * std::max(d2, 0.0);
  }
  return acc / std::pow(ball.radius, k + 2);
}

double beta2_bruteforce(const PointMeasure& mu, const BetaBall& ball, int k,
                        int plane_samples, std::uint64_t seed) {
  const int dim = mu.dim;
  BetaReport rep = beta2(mu, ball, k);
  if (rep.mass <= 0.0) return 0.0;

  std::vector<std::array<double, 3>> eigen_basis;
  for (int d = 0; d < k; ++d) eigen_basis.push_back(rep.eigenvectors[d]);
  double best = beta2_objective(mu, ball, k, rep.center_of_mass, eigen_basis);

  SplitMix64 rng(seed);
  auto gaussian = [&]() {
    double u1 = std::max(rng.next_double(), 1e-300), u2 = rng.next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  };
  for (int s = 0; s < plane_samples; ++s) {
    // Random orthonormal k-frame by Gram-Schmidt on Gaussian vectors.
    std::vector<std::array<double, 3>> frame;
    while (static_cast<int>(frame.size()) < k) {
      std::array<double, 3> v{0, 0, 0};
      for (int d = 0; d < dim; ++d) v[d] = gaussian();
      for (const auto& b : frame) {
        double proj = 0.0;
        for (int d = 0; d < dim; ++d) proj += v[d] * b[d];
        for (int d = 0; d < dim; ++d) v[d] -= proj * b[d];
      }
      double norm = std::sqrt(dist2(v, {0, 0, 0}, dim));
      if (norm < 1e-8) continue;
      for (int d = 0; d < dim; ++d) v[d] /= norm;
      frame.push_back(v);
    }
    best = std::min(best, beta2_objective(mu, ball, k, rep.center_of_mass, frame));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Symmetry distance via the constructive candidate family.

namespace {

// alpha-homogenization of u about `center`: radial average of u(c + t sigma)/t^alpha
// sampled at M radii within the ball, re-homogenized to the query point.
class Homogenizer {
 public:
  Homogenizer(const Grid& g, const ScalarField& u, const std::array<double, 2>& center,
              double r)
      : g_(g), u_(u), center_(center), r_(r) {}

  // q = (q1, q2, qy) offset from the center, qy >= 0.
  double operator()(double q1, double q2, double qy) const {
    double rho = std::sqrt(q1 * q1 + q2 * q2 + qy * qy);
    if (rho < 1e-14) return 0.0;
    const int M = 8;
    double s1 = q1 / rho, s2 = q2 / rho, sy = qy / rho;
    double mean = 0.0;
    for (int j = 0; j < M; ++j) {
      double t = r_ * (j + 0.5) / M;
      double v = interpolate(g_, u_, center_[0] + t * s1,
                             g_.spec.n == 2 ? center_[1] + t * s2 : 0.0, t * sy);
      mean += v / std::pow(t, g_.spec.alpha);
    }
    mean /= M;
    return mean * std::pow(rho, g_.spec.alpha);
  }

 private:
  const Grid& g_;
  const ScalarField& u_;
  std::array<double, 2> center_;
  double r_;
};

// Chord average of f along the thin direction d within the ball of radius r:
// the candidate invariant along span(d).
double chord_average(const Homogenizer& f, double q1, double q2, double qy,
                     const std::array<double, 2>& d, double r) {
  double a = q1 * d[0] + q2 * d[1];
  double w1 = q1 - a * d[0], w2 = q2 - a * d[1];
  double perp2 = w1 * w1 + w2 * w2 + qy * qy;
  if (perp2 >= r * r) return f(q1, q2, qy);
  double half = std::sqrt(r * r - perp2);
  const int M = 16;
  double mean = 0.0;
  for (int m = 0; m < M; ++m) {
    double t = -half + (m + 0.5) * (2.0 * half / M);
    mean += f(w1 + t * d[0], w2 + t * d[1], qy);
  }
  return mean / M;
}

// Average over the full thin plane section (invariance along the whole thin
// space): iterated chord averages over a polar sample of the thin disc.
double disc_average(const Homogenizer& f, double qy, double r) {
  if (qy >= r) return f(0.0, 0.0, qy);
  double rad = std::sqrt(r * r - qy * qy);
  const int Mr = 8, Mp = 8;
  double mean = 0.0, wsum = 0.0;
  for (int j = 0; j < Mr; ++j) {
    double t = rad * (j + 0.5) / Mr;
    double w = t;  // polar area element
    for (int m = 0; m < Mp; ++m) {
      double phi = 2.0 * kPi * (m + 0.5) / Mp;
      mean += w * f(t * std::cos(phi), t * std::sin(phi), qy);
      wsum += w;
    }
  }
  return mean / wsum;
}

}  // namespace

double ksym_distance(const Grid& g, const ScalarField& u, const std::array<double, 2>& center,
                     double r, int k, int direction_budget, std::uint64_t seed) {
  const int n = g.spec.n;
  if (k < 0 || k > n) throw GridError("symmetry dimension out of range for the thin space");
  if (std::abs(center[0]) + r > g.spec.half_extent + 1e-12 ||
      (n == 2 && std::abs(center[1]) + r > g.spec.half_extent + 1e-12))
    throw GridError("symmetry ball exits the grid");

  Homogenizer hom(g, u, center, r);

  // Candidate directions for k = 1 (n = 2): axes plus seeded random ones.
  std::vector<std::array<double, 2>> dirs;
  if (k == 1) {
    dirs.push_back({1.0, 0.0});
    if (n == 2) {
      dirs.push_back({0.0, 1.0});
      SplitMix64 rng(seed);
      for (int s = 0; s < direction_budget; ++s) {
        double phi = kPi * rng.next_double();
        dirs.push_back({std::cos(phi), std::sin(phi)});
      }
    }
  }

  const int n2 = n == 1 ? 1 : g.nt();
  struct Node { int i1, i2, j; double q1, q2, qy, w, uval; };
  std::vector<Node> nodes;
  for (int i1 = 0; i1 < g.nt(); ++i1)
    for (int i2 = 0; i2 < n2; ++i2) {
      double q1 = g.x[i1] - center[0];
      double q2 = n == 2 ? g.x[i2] - center[1] : 0.0;
      for (int j = 0; j < g.ny(); ++j) {
        double qy = g.y[j];
        if (q1 * q1 + q2 * q2 + qy * qy > r * r) break;
        nodes.push_back({i1, i2, j, q1, q2, qy, g.cell_weight(i1, i2, j),
                         u.values[g.idx(i1, i2, j)]});
      }
    }

  const double norm = std::pow(r, -(n + 2));
  auto distance = [&](auto&& candidate) {
    double acc = 0.0;
    for (const Node& nd : nodes) {
      double d = nd.uval - candidate(nd.q1, nd.q2, nd.qy);
      acc += nd.w * d * d;
    }
    return norm * 2.0 * acc;  // both vertical halves
  };

  if (k == 0)
    return distance([&](double a, double b, double c) { return hom(a, b, c); });
  if (k >= n)
    return n == 1
               ? distance([&](double a, double b, double c) {
                   return chord_average(hom, a, b, c, {1.0, 0.0}, r);
                 })
               : distance([&](double a, double b, double c) {
                   (void)a; (void)b;
                   return disc_average(hom, c, r);
                 });

  double best = std::numeric_limits<double>::infinity();
  for (const auto& d : dirs)
    best = std::min(best, distance([&](double a, double b, double c) {
             return chord_average(hom, a, b, c, d, r);
           }));
  return best;
}

StrataResult strata_membership(const Grid& g, const ScalarField& u, const StrataQuery& q) {
  StrataResult res;
  res.member = true;
  for (double s = q.r_max; s >= q.r_min * (1.0 - 1e-12); s /= 2.0) {
    double d = ksym_distance(g, u, q.point, s, q.k + 1, q.direction_budget);
    res.scales.push_back(s);
    res.distances.push_back(d);
    if (d <= q.epsilon) res.member = false;
  }
  return res;
}

PackingReport packing_sum(const std::vector<BetaBall>& balls, int k) {
  PackingReport rep;
  if (balls.empty()) return rep;
  double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
  for (const auto& b : balls) {
    rep.sum += std::pow(b.radius, k);
    rmin = std::min(rmin, b.radius);
    rmax = std::max(rmax, b.radius);
  }
  for (std::size_t i = 0; i < balls.size(); ++i)
    for (std::size_t j = i + 1; j < balls.size(); ++j) {
      double d2 = 0.0;
      for (int d = 0; d < 3; ++d)
        d2 += (balls[i].center[d] - balls[j].center[d]) * (balls[i].center[d] - balls[j].center[d]);
      double touch = balls[i].radius + balls[j].radius;
      if (d2 < touch * touch * (1.0 - 1e-12)) rep.overlaps = true;
    }

  // mu = sum r_q^k delta_{c_q}; the Reifenberg-type double integral
  // int int beta^2(x, s) ds/s dmu(x) discretized over dyadic scales with the
  // trapezoid rule in ln s.
  PointMeasure mu;
  mu.dim = 3;
  for (const auto& b : balls) mu.atoms.push_back({b.center, std::pow(b.radius, k)});
  // Scales run dyadically from the configuration diameter (so the largest
  // balls see the whole cloud) down to the smallest ball radius.
  double top = rmax;
  for (std::size_t i = 0; i < balls.size(); ++i)
    for (std::size_t j = i + 1; j < balls.size(); ++j) {
      double d2 = 0.0;
      for (int d = 0; d < 3; ++d)
        d2 += (balls[i].center[d] - balls[j].center[d]) *
              (balls[i].center[d] - balls[j].center[d]);
      top = std::max(top, std::sqrt(d2));
    }
  std::vector<double> scales;
  for (double s = top; s >= rmin * (1.0 - 1e-12); s /= 2.0) scales.push_back(s);
  if (scales.size() == 1) scales.push_back(scales[0] / 2.0);
  for (std::size_t j = 0; j < scales.size(); ++j) {
    double w = std::log(2.0) * ((j == 0 || j + 1 == scales.size()) ? 0.5 : 1.0);
    double layer = 0.0;
    for (const auto& a : mu.atoms)
      layer += a.mass * beta2(mu, {a.x, scales[j]}, k).beta_sq;
    rep.reifenberg_integral += w * layer;
  }
  return rep;
}

BetaWeissDrop beta_vs_weiss_drop(const Grid& g, const ScalarField& u, const BetaBall& ball,
                                 const PointMeasure& mu, int k) {
  BetaWeissDrop out;
  out.lhs = beta2(mu, ball, k).beta_sq;
  const double r = ball.radius;
  double acc = 0.0;
  for (const Atom& a : mu.atoms) {
    double d2 = 0.0;
    for (int d = 0; d < mu.dim; ++d)
      d2 += (a.x[d] - ball.center[d]) * (a.x[d] - ball.center[d]);
    if (d2 > r * r) continue;
    std::array<double, 2> p{a.x[0], mu.dim >= 2 ? a.x[1] : 0.0};
    acc += a.mass * (weiss_density(g, u, p, 4.0 * r) - weiss_density(g, u, p, r));
  }
  out.rhs = acc / std::pow(r, k);
  return out;
}

}  // namespace thinfb
