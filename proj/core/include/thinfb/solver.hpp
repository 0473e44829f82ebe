#pragma once
// Minimization of the discrete thin one-phase functional over even
// nonnegative fields with prescribed outer boundary trace, plus an
// exhaustive-enumeration oracle at tiny slab sizes.

#include <cstdint>
#include <utility>
#include <vector>

#include "thinfb/energy.hpp"
#include "thinfb/grid.hpp"
#include "thinfb/operators.hpp"

namespace thinfb {

struct SolveConfig {
  double flip_tolerance = 1e-12;  // minimum energy decrease to accept a flip
  int max_outer_iters = 300;
  int exhaustive_threshold = 16;  // enumerate all masks when free nodes <= this
  PcgOptions linear;
};

struct SolveResult {
  ScalarField field;
  ThinMask mask;
  EnergyBreakdown energy;
  int iterations = 0;
  bool converged = false;
  std::vector<std::pair<std::int64_t, double>> flips_log;  // (slab node, dE)
};

// Alternating minimization: Dirichlet solve against the current ZERO set,
// then deterministic lexicographic sweeps over free slab nodes.  A flip is
// tried when a one-node local energy estimate is favorable and committed only
// if a full re-solve lowers the energy by more than flip_tolerance; a final
// certification sweep re-solves every candidate flip.  When the number of
// free slab nodes is <= exhaustive_threshold the exhaustive oracle runs
// instead.  The returned mask is canonical: POSITIVE iff the solved slab
// value is > 0.
SolveResult minimize(const Grid& g, const BoundaryTrace& boundary, const SolveConfig& cfg = {});

// Exhaustive enumeration of all ZERO/POSITIVE labelings of the free slab
// nodes (requires <= 20 of them).  Ties within 1e-12 in energy are broken by
// the lexicographically smallest sorted list of ZERO node indices, compared
// on canonical masks.
SolveResult brute_force_minimize(const Grid& g, const BoundaryTrace& boundary,
                                 const SolveConfig& cfg = {});

// Slab nodes that may change phase: interior slab nodes (boundary trace nodes
// are fixed by their data).
std::vector<std::int64_t> free_slab_nodes(const Grid& g);

}  // namespace thinfb
