#pragma once
// Weighted discrete calculus on the half-space grid: the degenerate elliptic
// operator L = div(|y|^beta grad .), Dirichlet solves with a clamped thin
// zero set, weighted ball means, and the Caccioppoli inequality check.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "thinfb/grid.hpp"

namespace thinfb {

// Residual of the discrete operator: for each node, the sum over incident
// edges of (face weight) * (difference quotient) / h^2, doubled so that it is
// the gradient of the full-space (both halves) quadratic energy.  On the
// y = 0 row the even reflection makes the vertical flux count twice, which is
// exactly what the overall factor two provides.  Zero on the outer boundary.
ScalarField apply_L(const Grid& g, const ScalarField& u);

// apply_L rescaled to a pointwise consistency residual: value * h^2 divided
// by twice the local cell weight.  Converges to L u at interior nodes.
ScalarField scaled_residual(const Grid& g, const ScalarField& u);

// Boundary trace: values prescribed on the outer box boundary.  Nodes not on
// the outer boundary are ignored.
struct BoundaryTrace {
  GridSpec spec;
  std::vector<double> values;  // full node layout; read only on the boundary

  BoundaryTrace() = default;
  explicit BoundaryTrace(const GridSpec& s) : spec(s), values(s.node_count(), 0.0) {}
};

struct SolveStats {
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

struct PcgOptions {
  double rel_tol = 1e-10;
  std::int64_t max_iters = 100000;
};

// Solve apply_L(u) = 0 on free nodes with u = boundary on the outer box and
// u = 0 clamped on the ZERO slab nodes.  Deterministic Jacobi-preconditioned
// conjugate gradient; optional warm start.
ScalarField dirichlet_solve(const Grid& g, const ThinMask& zero_set,
                            const BoundaryTrace& boundary, SolveStats* stats = nullptr,
                            const ScalarField* warm_start = nullptr,
                            const PcgOptions& opts = {});

// Weighted mean over nodes in B_r(center), both halves via even reflection
// (the reflection cancels: cell weights and values coincide).
double weighted_ball_mean(const Grid& g, const ScalarField& u,
                          const std::array<double, 2>& center, double r);

struct CaccioppoliResult {
  double lhs = 0.0;  // weighted Dirichlet energy over B_{r/2}
  double rhs = 0.0;  // (4/r^2) * weighted L2 mass over B_r \ B_{r/2}
};

CaccioppoliResult caccioppoli_check(const Grid& g, const ScalarField& u,
                                    const std::array<double, 2>& center, double r);

}  // namespace thinfb
