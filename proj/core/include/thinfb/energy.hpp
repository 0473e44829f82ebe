#pragma once
// The local functional J (weighted Dirichlet energy + thin positivity
// measure), the nonlocal Gagliardo form, the Allen-Weiss density and its
// deficit identity, and the flux identity check.

#include <array>
#include <optional>
#include <vector>

#include "thinfb/extension.hpp"
#include "thinfb/grid.hpp"

namespace thinfb {

struct EnergyBreakdown {
  double dirichlet = 0.0;  // int |y|^beta |grad u|^2 over both halves
  double thin_area = 0.0;  // m({u > 0} on the slab), units length^n
  double total = 0.0;      // dirichlet + thin_area
};

// Region: the whole box, or a ball centered on the slab.
struct Ball {
  std::array<double, 2> center{0.0, 0.0};  // thin coordinates (x2 unused for n=1)
  double radius = 0.0;
};

// Evaluate J over the full box (plain weighted sums, no clipping).
EnergyBreakdown eval_J_box(const Grid& g, const ScalarField& u);

// Evaluate J over a ball.  Edge terms are weighted by the sub-cell sampled
// fraction of the dual cell inside the ball (S=4 per axis for n=1, S=3 for
// n=2); the thin area uses exact interval clipping for n=1 and S=4 2-D
// sub-cell fractions for n=2.
EnergyBreakdown eval_J_local(const Grid& g, const ScalarField& u, const Ball& ball);

// Nonlocal energy of a slab function over a thin ball: the Gagliardo double
// sum with the unit-mass kernel constant plus the positivity measure of the
// region.  Pairs closer than h/2 (the diagonal) are dropped.
double eval_J_nonlocal(const Grid& g, const ThinFunction& f, const Ball& region);

// Allen-Weiss density Psi_r = J(u, B_r)/r^n - (alpha/r^{n+1}) * sphere term,
// with the sphere integral of |y|^beta u^2 computed as a shell derivative of
// the ball integral: (V(r + h/2) - V(r - h/2)) / h.
double weiss_density(const Grid& g, const ScalarField& u,
                     const std::array<double, 2>& center, double r);

struct WeissProfile {
  std::array<double, 2> center{0.0, 0.0};
  std::vector<double> radii;
  std::vector<double> psi;
  std::vector<double> deficit;        // annulus integral per consecutive pair
  double max_monotonicity_violation = 0.0;  // max(0, psi[k] - psi[k+1])
  double max_identity_gap = 0.0;            // max |dPsi - deficit|
};

WeissProfile weiss_profile(const Grid& g, const ScalarField& u,
                           const std::array<double, 2>& center,
                           const std::vector<double>& radii);

// Deficit integral over the annulus B_r2 \ B_r1:
//   int |y|^beta 2 |alpha u - (x - x0) . grad u|^2 / |x - x0|^{n+2}.
double weiss_deficit(const Grid& g, const ScalarField& u,
                     const std::array<double, 2>& center, double r1, double r2);

struct FluxIdentity {
  double lhs = 0.0;  // int_B |y|^beta |grad u|^2
  double rhs = 0.0;  // shell-averaged boundary flux int_{dB} |y|^beta u du/dnu
};

FluxIdentity flux_identity_check(const Grid& g, const ScalarField& u, const Ball& ball);

// Shell-derivative sphere integral of |y|^beta u^2 over the sphere of radius
// r (exposed for diagnostics); both halves counted.
double sphere_integral_u2(const Grid& g, const ScalarField& u,
                          const std::array<double, 2>& center, double r);

}  // namespace thinfb
