#pragma once
// Regularity instrumentation: blow-up rescalings, the boundary-flux measure
// lambda, free boundary extraction, flatness, density classification, the
// logarithmic-cutoff competitor, and growth/holder reports.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "thinfb/energy.hpp"
#include "thinfb/extension.hpp"
#include "thinfb/grid.hpp"
#include "thinfb/solver.hpp"

namespace thinfb {

struct LambdaDensity {
  GridSpec spec;
  std::vector<double> density;  // slab map of 2 * lim y^beta u_y
};

// Density map via the extrapolated trace limit at every slab node with at
// least two rows above it; boundary-ring nodes get 0.
LambdaDensity lambda_density(const Grid& g, const ScalarField& u);

// lambda(B_r): slab quadrature of the density over ZERO-phase nodes with the
// dual cell clipped to the zero phase and to the ball (interval clipping for
// n=1, sub-cell fractions for n=2).
double lambda_ball(const Grid& g, const ScalarField& u, const LambdaDensity& dens,
                   const ThinMask& mask, const std::array<double, 2>& center, double r);

struct FreeBoundaryPoint {
  int i1 = 0, i2 = 0;                 // slab node indices
  std::array<double, 2> x{0.0, 0.0};  // thin coordinates
  ThinState state = ThinState::ZERO;
};

struct FreeBoundary {
  std::vector<FreeBoundaryPoint> points;  // nodes with a neighbor of the other phase
};

// Slab nodes adjacent (axis neighbors) to the opposite phase; both the ZERO
// and the POSITIVE side of each interface are listed.
FreeBoundary extract_free_boundary(const Grid& g, const ThinMask& mask);

// Rescaled field u(center + rho x) / rho^alpha resampled on a unit grid
// (half_extent 1) with the given spacing, by multilinear interpolation.
ScalarField rescale_blowup(const Grid& g, const ScalarField& u,
                           const std::array<double, 2>& center, double rho,
                           double target_spacing);

// Weiss deficit integrand integrated over the fixed annulus B_0.8 \ B_0.2
// about the center; zero iff the field is alpha-homogeneous there.
double homogeneity_deviation(const Grid& g, const ScalarField& u,
                             const std::array<double, 2>& center);

// Minimal eps over sampled unit directions nu (axes plus seeded random ones)
// such that, within B_r(center) on the slab,
//   { x . nu <= -eps r } is all ZERO and the POSITIVE phase is in { x . nu <= eps r }.
double flatness(const Grid& g, const ThinMask& mask, const std::array<double, 2>& center,
                double r, int random_directions = 64, std::uint64_t seed = 17);

struct ClassifierConfig {
  double density_gap = 0.0;          // 0 means the default 0.1 * omega_n / 2
  std::vector<double> blowup_radii;  // decreasing geometric radii; smallest is used
};

enum class PointClass { REGULAR, SINGULAR, UNRESOLVED };

// Psi at the smallest reliable radius vs omega_n/2 + gap thresholds.
PointClass classify_point(const Grid& g, const ScalarField& u,
                          const std::array<double, 2>& fb_point, const ClassifierConfig& cfg,
                          double* psi0 = nullptr);

// Count of phase-interface dual faces inside the thin ball, times h^{n-1}.
double perimeter_estimate(const Grid& g, const ThinMask& mask,
                          const std::array<double, 2>& center, double r);

struct CorkscrewWitness {
  bool found = false;
  double c = 0.0;                         // best ball radius as a fraction of r
  std::array<double, 2> point{0.0, 0.0};  // witness center
};

struct CorkscrewResult {
  CorkscrewWitness interior;  // POSITIVE-phase ball
  CorkscrewWitness exterior;  // ZERO-phase ball
};

CorkscrewResult corkscrew_check(const Grid& g, const ThinMask& mask,
                                const std::array<double, 2>& fb_point, double r);

struct CompetitorResult {
  double delta_energy = 0.0;  // J(V+) + J(V-) - 2 J(V) over B_{R^2}
  double bound = 0.0;         // int |y|^beta |grad V|^2 psi'_R(|x|)^2
  double delta_dirichlet = 0.0;
  double delta_area = 0.0;
};

// Logarithmic-cutoff competitor test for the trivial cone, n = 2 only.
// psi_R = 1 on [0,R], 2 - ln t / ln R on [R, R^2], 0 beyond; V+- are the
// e1-shift change of coordinates of the cone V, built by fixed-point
// iteration of the inverse map.  Grid: [-extent, extent]^2 x [0, extent]
// with the given spacing; requires extent >= R^2.
CompetitorResult competitor_log_cutoff(double alpha, double R, double spacing, double extent);

struct HolderReport {
  double constant = 0.0;  // max over fb points and dyadic radii of sup_{dB_r} u / r^alpha
  std::vector<double> per_point;
};

HolderReport holder_report(const Grid& g, const ScalarField& u, const FreeBoundary& fb);

}  // namespace thinfb
