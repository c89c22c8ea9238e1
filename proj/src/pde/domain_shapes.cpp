#include "attrlab/pde/domain_shapes.hpp"

#include <cmath>

namespace attrlab {

namespace {

DomainPtr rect_mask(double x0, double x1, double y0, double y1, double spacing,
                    const std::function<bool(const std::array<double, 2>&)>& inside) {
  int nx = static_cast<int>(std::ceil((x1 - x0) / spacing));
  int ny = static_cast<int>(std::ceil((y1 - y0) / spacing));
  return GridDomain::from_predicate(2, {nx, ny}, spacing, {x0, y0}, inside);
}

}  // namespace

DomainPtr make_annulus(double r_inner, double r_outer, double spacing) {
  double half = r_outer + 2.0 * spacing;
  return rect_mask(-half, half, -half, half, spacing, [=](const std::array<double, 2>& x) {
    double r = std::hypot(x[0], x[1]);
    return r > r_inner && r < r_outer;
  });
}

// The strip stands in for a semi-infinite strip [0, inf) x (0, width): the x = 0 end
// and the long walls are real boundary (exterior margin), while the far end is a
// truncation; the mask runs up to the bbox face there, which marks the face as a
// continuation direction for the shift-closure check.
DomainPtr make_strip(double length, double width, double spacing) {
  double m = 2.0 * spacing;
  return rect_mask(-m, length, -m, width + m, spacing, [=](const std::array<double, 2>& x) {
    return x[0] > 0.0 && x[1] > 0.0 && x[1] < width;
  });
}

DomainPtr make_square(double side, double spacing) {
  double m = 2.0 * spacing;
  return rect_mask(-m, side + m, -m, side + m, spacing, [=](const std::array<double, 2>& x) {
    return x[0] > 0.0 && x[0] < side && x[1] > 0.0 && x[1] < side;
  });
}

DomainPtr make_dumbbell(double square_side, double corridor_width, double corridor_length,
                        double spacing) {
  const double W = square_side;
  const double cw = corridor_width;
  const double cl = corridor_length;
  const double ylo = 0.5 * (W - cw);
  const double yhi = 0.5 * (W + cw);
  double m = 2.0 * spacing;
  return rect_mask(-m, 2.0 * W + cl + m, -m, W + m, spacing, [=](const std::array<double, 2>& x) {
    bool left = x[0] > 0.0 && x[0] < W && x[1] > 0.0 && x[1] < W;
    bool right = x[0] > W + cl && x[0] < 2.0 * W + cl && x[1] > 0.0 && x[1] < W;
    bool corridor = x[0] >= W && x[0] <= W + cl && x[1] > ylo && x[1] < yhi;
    return left || right || corridor;
  });
}

DomainPtr make_interval(double length, double spacing) {
  int n = static_cast<int>(std::ceil(length / spacing)) + 4;
  return GridDomain::from_predicate(1, {n}, spacing, {-2.0 * spacing},
                                    [=](const std::array<double, 2>& x) {
                                      return x[0] > 0.0 && x[0] < length;
                                    });
}

std::vector<double> boundary_constant(const GridDomain& dom, double value) {
  std::vector<double> b(static_cast<std::size_t>(dom.value_count()), 0.0);
  for (std::int64_t c = 0; c < dom.cell_count(); ++c)
    if (dom.tag(c) == CellTag::Boundary) b[static_cast<std::size_t>(dom.value_index(c))] = value;
  return b;
}

std::vector<double> boundary_piecewise(const GridDomain& dom, int axis, double threshold,
                                       double low, double high) {
  std::vector<double> b(static_cast<std::size_t>(dom.value_count()), 0.0);
  for (std::int64_t c = 0; c < dom.cell_count(); ++c) {
    if (dom.tag(c) != CellTag::Boundary) continue;
    auto x = dom.center(c);
    b[static_cast<std::size_t>(dom.value_index(c))] =
        x[static_cast<std::size_t>(axis)] < threshold ? low : high;
  }
  return b;
}

std::vector<double> boundary_fourier(const GridDomain& dom, double mean,
                                     const std::vector<std::array<double, 3>>& harmonics,
                                     double lo, double hi) {
  // bbox center
  std::array<double, 2> c{0.0, 0.0};
  for (int a = 0; a < dom.dim(); ++a)
    c[static_cast<std::size_t>(a)] = dom.origin()[static_cast<std::size_t>(a)] +
                                     0.5 * dom.extents()[static_cast<std::size_t>(a)] * dom.spacing();
  std::vector<double> b(static_cast<std::size_t>(dom.value_count()), 0.0);
  double raw_min = std::numeric_limits<double>::infinity();
  double raw_max = -raw_min;
  std::vector<std::pair<std::size_t, double>> raw;
  for (std::int64_t cell = 0; cell < dom.cell_count(); ++cell) {
    if (dom.tag(cell) != CellTag::Boundary) continue;
    auto x = dom.center(cell);
    double th = std::atan2(x[1] - c[1], x[0] - c[0]);
    double v = mean;
    for (const auto& h : harmonics) v += h[1] * std::cos(h[0] * th + h[2]);
    raw.emplace_back(static_cast<std::size_t>(dom.value_index(cell)), v);
    raw_min = std::min(raw_min, v);
    raw_max = std::max(raw_max, v);
  }
  double span = raw_max - raw_min;
  for (auto& [vi, v] : raw)
    b[vi] = span > 0.0 ? lo + (hi - lo) * (v - raw_min) / span : 0.5 * (lo + hi);
  return b;
}

}  // namespace attrlab
