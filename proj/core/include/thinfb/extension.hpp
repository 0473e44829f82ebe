#pragma once
// Poisson kernel of the degenerate extension, the extension operator itself,
// the closed-form trivial solution, and the fractional Laplacian trace limit.

#include <array>
#include <vector>

#include "thinfb/grid.hpp"

namespace thinfb {

struct ExtensionConfig {
  int n = 1;
  double alpha = 0.5;
  // Kernel normalization: unit mass, c = Gamma(n/2 + alpha) / (pi^{n/2} Gamma(alpha)).
  double normalization = 0.0;
  // Kernel support cutoff |xi| <= truncation_radius for the quadrature.
  double truncation_radius = 1e6;
  // Angular quadrature resolution for the convolution (midpoint rule after
  // the substitution xi = y tan(theta), which absorbs the heavy tail).
  int quad_points = 2048;

  static ExtensionConfig make(int n, double alpha);
};

// Function on the y = 0 slab (trace data).
struct ThinFunction {
  GridSpec spec;
  std::vector<double> values;  // slab layout, thin-axes major

  ThinFunction() = default;
  explicit ThinFunction(const GridSpec& s) : spec(s), values(s.slab_size(), 0.0) {}
};

ThinFunction restrict_to_slab(const Grid& g, const ScalarField& u);

// P(xi, y) = c |y|^{2 alpha} / |(xi, y)|^{n + 2 alpha} with unit mass in xi.
double poisson_kernel(const ExtensionConfig& cfg, const std::array<double, 2>& xi, double y);

// Quadrature of the kernel mass over |xi| <= truncation_radius (should be
// >= 0.999 for a usable configuration; equals 1 up to quadrature error for
// the default cutoff).
double poisson_kernel_mass(const ExtensionConfig& cfg, double y);

// Convolution u(x, y) = (P_y * f)(x) evaluated at every grid node; the trace
// row is f itself.  f is extended beyond the slab by its boundary-ray values.
ScalarField poisson_extend(const ExtensionConfig& cfg, const ThinFunction& f, const Grid& g);

// U(x, y) = rho^alpha cos^{2 alpha}(theta/2) = ((sqrt(t^2+y^2) + t)/2)^alpha
// with t = x . direction; trace (t)_+^alpha.
ScalarField trivial_solution(const Grid& g, const std::array<double, 2>& direction);
double trivial_solution_value(double t, double y, double alpha);

// Richardson-extrapolated lim_{y->0} y^beta u_y at a slab node, using the
// rows y = 0, h, 2h and the expansion u = u(x,0) + c y^{1-beta} + O(y^2).
double frac_laplacian_trace(const Grid& g, const ScalarField& u, int i1, int i2 = 0);

}  // namespace thinfb
