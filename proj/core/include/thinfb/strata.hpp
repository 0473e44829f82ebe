#pragma once
// Quantitative stratification toolkit: beta-2 numbers of point measures,
// symmetry distances, strata membership, packing sums, and the beta-vs-Weiss
// drop comparison.

#include <array>
#include <cstdint>
#include <vector>

#include "thinfb/energy.hpp"
#include "thinfb/grid.hpp"

namespace thinfb {

struct Atom {
  std::array<double, 3> x{0.0, 0.0, 0.0};  // location (first `dim` coords used)
  double mass = 0.0;
};

struct PointMeasure {
  int dim = 2;  // ambient dimension of the atoms (1..3)
  std::vector<Atom> atoms;
};

struct BetaBall {
  std::array<double, 3> center{0.0, 0.0, 0.0};
  double radius = 0.0;
};

struct BetaReport {
  BetaBall ball;
  int k = 0;
  double beta_sq = 0.0;
  double mass = 0.0;                               // mu(B)
  std::array<double, 3> eigenvalues{0, 0, 0};      // descending; first dim entries valid
  std::array<double, 3> center_of_mass{0, 0, 0};
  std::array<std::array<double, 3>, 3> eigenvectors{};  // rows, same order
};

// beta^2 = mu(B)/r^k * (lambda_{k+1} + ... + lambda_dim)/r^2 where lambda are
// the eigenvalues of the mass-averaged centered second-moment form over the
// atoms inside the ball.
BetaReport beta2(const PointMeasure& mu, const BetaBall& ball, int k);

// Direct objective r^{-k} int_B dist(z, L)^2 / r^2 dmu at an affine k-plane
// through `point` spanned by the rows of `basis` (orthonormal).
double beta2_objective(const PointMeasure& mu, const BetaBall& ball, int k,
                       const std::array<double, 3>& point,
                       const std::vector<std::array<double, 3>>& basis);

// Minimum of the objective over the eigen-plane plus seeded random affine
// k-planes (each using the in-ball center of mass as its base point).
double beta2_bruteforce(const PointMeasure& mu, const BetaBall& ball, int k,
                        int plane_samples, std::uint64_t seed = 99);

// Upper bound on the scaled weighted-L2 distance from the field, in
// B_r(center), to the constructed family of k-symmetric candidates:
// alpha-homogenization about the center followed by averaging along sampled
// k-subspaces of the thin space (axes plus seeded random directions).
// Normalization: r^{-(n+2)} int_B |y|^beta |u - u~|^2 over both halves.
double ksym_distance(const Grid& g, const ScalarField& u,
                     const std::array<double, 2>& center, double r, int k,
                     int direction_budget = 8, std::uint64_t seed = 31);

struct StrataQuery {
  int k = 0;
  double epsilon = 1e-3;
  double r_min = 0.1;
  double r_max = 0.5;
  std::array<double, 2> point{0.0, 0.0};
  int direction_budget = 8;
};

struct StrataResult {
  bool member = false;  // in S^k: no scale in [r_min, r_max] is (k+1)-symmetric
  std::vector<double> scales;
  std::vector<double> distances;
};

StrataResult strata_membership(const Grid& g, const ScalarField& u, const StrataQuery& q);

struct PackingReport {
  double sum = 0.0;                 // sum of r_q^k
  double reifenberg_integral = 0.0; // dyadic-discretized double integral of beta^2
  bool overlaps = false;
};

PackingReport packing_sum(const std::vector<BetaBall>& balls, int k);

struct BetaWeissDrop {
  double lhs = 0.0;  // beta^2 of mu in B_r
  double rhs = 0.0;  // r^{-k} int (Psi_{4r} - Psi_r) dmu
};

BetaWeissDrop beta_vs_weiss_drop(const Grid& g, const ScalarField& u, const BetaBall& ball,
                                 const PointMeasure& mu, int k);

}  // namespace thinfb
