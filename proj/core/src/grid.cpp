#include "thinfb/grid.hpp"

#include <algorithm>
#include <cmath>

namespace thinfb {

GridSpec GridSpec::make(int n, double alpha, double half_extent, double spacing) {
  if (n != 1 && n != 2) throw GridError("n must be 1 or 2");
  if (alpha < 0.05 || alpha > 0.95) throw GridError("alpha must lie in [0.05, 0.95]");
  if (spacing <= 0 || half_extent <= 0) throw GridError("extent and spacing must be positive");
  double ratio = half_extent / spacing;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio))
    throw GridError("spacing must divide half_extent exactly");
  GridSpec s;
  s.n = n;
  s.alpha = alpha;
  s.beta = 1.0 - 2.0 * alpha;
  s.half_extent = half_extent;
  s.spacing = spacing;
  int m = static_cast<int>(std::llround(ratio));
  s.thin_count = 2 * m + 1;
  s.vert_count = m + 1;
  return s;
}

Grid build_grid(const GridSpec& spec) {
  Grid g;
  g.spec = spec;
  const double h = spec.spacing, R = spec.half_extent, b = spec.beta;
  const int nt = spec.thin_count, ny = spec.vert_count;

  g.x.resize(nt);
  for (int i = 0; i < nt; ++i) g.x[i] = -R + h * i;
  g.y.resize(ny);
  for (int j = 0; j < ny; ++j) g.y[j] = h * j;

  g.xcell.assign(nt, h);
  g.xcell.front() = g.xcell.back() = h / 2;

  g.ycell.resize(ny);
  for (int j = 0; j < ny; ++j) {
    double lo = std::max(0.0, (j - 0.5) * h);
    double hi = std::min(R, (j + 0.5) * h);
    g.ycell[j] = weight_integral(lo, hi, b);
  }
  g.yedge.resize(ny - 1);
  for (int j = 0; j + 1 < ny; ++j) g.yedge[j] = weight_integral(g.y[j], g.y[j + 1], b);
  return g;
}

WeightedMeasure weighted_measure(const Grid& g) {
  WeightedMeasure m;
  m.spec = g.spec;
  m.cell_weights.resize(g.spec.node_count());
  const int n2 = g.spec.n == 1 ? 1 : g.nt();
  for (int i1 = 0; i1 < g.nt(); ++i1)
    for (int i2 = 0; i2 < n2; ++i2)
      for (int j = 0; j < g.ny(); ++j)
        m.cell_weights[g.idx(i1, i2, j)] = g.cell_weight(i1, i2, j);
  return m;
}

namespace {
// Clamped fractional index along an axis with origin x0 and spacing h.
void locate(double q, double x0, double h, int count, int& i, double& t) {
  double s = (q - x0) / h;
  s = std::clamp(s, 0.0, static_cast<double>(count - 1));
  i = std::min(static_cast<int>(s), count - 2);
  if (count == 1) { i = 0; t = 0.0; return; }
  t = s - i;
}
}  // namespace

double interpolate(const Grid& g, const ScalarField& f, double x1, double x2, double yq) {
  yq = std::abs(yq);  // even reflection
  int i1, i2 = 0, j;
  double t1, t2 = 0.0, tj;
  locate(x1, -g.spec.half_extent, g.h(), g.nt(), i1, t1);
  locate(yq, 0.0, g.h(), g.ny(), j, tj);
  if (g.spec.n == 2) locate(x2, -g.spec.half_extent, g.h(), g.nt(), i2, t2);

  auto val = [&](int a, int b, int c) { return f.values[g.idx(a, b, c)]; };
  if (g.spec.n == 1) {
    double v0 = (1 - t1) * val(i1, 0, j) + t1 * val(i1 + 1, 0, j);
    double v1 = (1 - t1) * val(i1, 0, j + 1) + t1 * val(i1 + 1, 0, j + 1);
    return (1 - tj) * v0 + tj * v1;
  }
  double out = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        double w = (a ? t1 : 1 - t1) * (b ? t2 : 1 - t2) * (c ? tj : 1 - tj);
        out += w * val(i1 + a, i2 + b, j + c);
      }
  return out;
}

}  // namespace thinfb
