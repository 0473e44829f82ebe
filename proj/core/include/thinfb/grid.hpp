#pragma once
// Half-space tensor grids for the weighted thin free boundary functional.
//
// The computational domain is [-R,R]^n x [0,R] with uniform spacing h; only
// the upper half-space y >= 0 is stored and all quantities account for the
// even reflection u(x',-y) = u(x',y).  The weight |y|^beta, beta = 1-2*alpha,
// is integrated exactly in the vertical direction (cell and face weights),
// never point-sampled, so that the degenerate weight stays integrable for
// every alpha in (0,1).

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace thinfb {

struct GridSpec {
  int n = 1;                    // thin dimension (1 or 2)
  double alpha = 0.5;           // homogeneity exponent in [0.05, 0.95]
  double beta = 0.0;            // weight exponent, always 1 - 2*alpha
  double half_extent = 1.0;     // R
  double spacing = 0.25;        // h
  int thin_count = 0;           // nodes per thin axis: 2R/h + 1 (odd)
  int vert_count = 0;           // vertical nodes: R/h + 1

  static GridSpec make(int n, double alpha, double half_extent, double spacing);
  std::int64_t slab_size() const {
    return n == 1 ? thin_count : std::int64_t(thin_count) * thin_count;
  }
  std::int64_t node_count() const { return slab_size() * vert_count; }
  bool operator==(const GridSpec&) const = default;
};

// Exact integral of t^beta over [a, b], 0 <= a <= b.
inline double weight_integral(double a, double b, double beta) {
  return (std::pow(b, 1.0 + beta) - std::pow(a, 1.0 + beta)) / (1.0 + beta);
}

// Grid with precomputed node coordinates and weighted cell/face measures.
struct Grid {
  GridSpec spec;
  std::vector<double> x;      // thin-axis coordinates, -R + i*h
  std::vector<double> y;      // vertical coordinates, j*h
  std::vector<double> xcell;  // thin dual-cell widths: h, halved at the ends
  std::vector<double> ycell;  // per-row integral of t^beta over the dual cell
  std::vector<double> yedge;  // integral of t^beta over [y_j, y_{j+1}]

  int nt() const { return spec.thin_count; }
  int ny() const { return spec.vert_count; }
  double h() const { return spec.spacing; }

  // Flat node index; for n=1, i2 must be 0.
  std::int64_t idx(int i1, int i2, int j) const {
    int n2 = spec.n == 1 ? 1 : spec.thin_count;
    return (std::int64_t(i1) * n2 + i2) * spec.vert_count + j;
  }
  std::int64_t slab_idx(int i1, int i2) const {
    return spec.n == 1 ? i1 : std::int64_t(i1) * spec.thin_count + i2;
  }
  // Weighted volume of the dual cell around node (i1, i2, j), upper half only.
  double cell_weight(int i1, int i2, int j) const {
    double w = xcell[i1] * ycell[j];
    if (spec.n == 2) w *= xcell[i2];
    return w;
  }
  bool on_outer_boundary(int i1, int i2, int j) const {
    int last = spec.thin_count - 1;
    bool b = i1 == 0 || i1 == last || j == spec.vert_count - 1;
    if (spec.n == 2) b = b || i2 == 0 || i2 == last;
    return b;
  }
};

Grid build_grid(const GridSpec& spec);

// Node-indexed scalar field on the upper half-space, thin-axes major.
struct ScalarField {
  GridSpec spec;
  std::vector<double> values;

  ScalarField() = default;
  explicit ScalarField(const GridSpec& s) : spec(s), values(s.node_count(), 0.0) {}

  double& at(const Grid& g, int i1, int i2, int j) { return values[g.idx(i1, i2, j)]; }
  double at(const Grid& g, int i1, int i2, int j) const { return values[g.idx(i1, i2, j)]; }
};

enum class ThinState : std::uint8_t { ZERO = 0, POSITIVE = 1 };

// Positivity/zero partition of the y = 0 slab.
struct ThinMask {
  GridSpec spec;
  std::vector<ThinState> states;

  ThinMask() = default;
  explicit ThinMask(const GridSpec& s) : spec(s), states(s.slab_size(), ThinState::ZERO) {}
  bool operator==(const ThinMask&) const = default;
};

// Per-node weighted cell volumes (the measure omega = |y|^beta dx).
struct WeightedMeasure {
  GridSpec spec;
  std::vector<double> cell_weights;
};

WeightedMeasure weighted_measure(const Grid& g);

// Multilinear interpolation with even reflection in y.  Clamps to the box in
// the thin axes (constant extension), which callers avoid by staying inside.
double interpolate(const Grid& g, const ScalarField& f, double x1, double x2, double yq);

struct GridError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace thinfb
