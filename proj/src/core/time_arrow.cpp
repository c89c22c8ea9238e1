#include "attrlab/core/time_arrow.hpp"

#include <algorithm>
#include <cmath>

#include "attrlab/core/distance_transform.hpp"

namespace attrlab {

namespace {

// Quasi-irrational perturbation table for probe spreads; column 0 scales offsets that must
// keep the depth (added to constrained coordinates), columns 1..3 are free-direction factors.
constexpr double kSpread[8][4] = {
    {0.00, +0.37, -0.21, +0.11}, {0.00, -0.37, +0.21, -0.11}, {0.13, +0.74, +0.47, -0.29},
    {0.13, -0.74, -0.47, +0.29}, {0.29, +1.11, -0.83, +0.53}, {0.29, -1.11, +0.83, -0.53},
    {0.47, +1.48, +1.19, +0.79}, {0.47, -1.48, -1.19, -0.79}};

}  // namespace

TimeArrow TimeArrow::whole_cone(Cone c) {
  TimeArrow a;
  a.cone_ = std::move(c);
  a.capacity_ = std::numeric_limits<double>::infinity();
  return a;
}

TimeArrow TimeArrow::domain_arrow(DomainPtr omega) {
  if (!omega->has_boundary())
    throw Error("domain arrow needs a domain with boundary cells");
  if (omega->any_periodic())
    throw Error("domain arrow does not support periodic domains");
  TimeArrow a;
  a.cone_ = Cone::orthant_product(0, omega->dim());
  a.depth_ = boundary_distance_map(*omega);
  a.capacity_ = 0.0;
  for (std::int64_t c = 0; c < omega->cell_count(); ++c) {
    if (omega->tag(c) == CellTag::Exterior) continue;
    double d = a.depth_[static_cast<std::size_t>(c)];
    if (d > a.capacity_) {
      a.capacity_ = d;
      a.argmax_cell_ = c;  // row-major scan = lexicographic tie-break
    }
  }
  a.omega_ = std::move(omega);
  return a;
}

bool TimeArrow::in_sigma(const TimePoint& h) const {
  if (is_whole_cone()) return cone_.contains(h);
  if (h.dim() != omega_->dim()) throw DimensionMismatch("time point/domain dimensions differ");
  std::array<double, 2> x{h[0], h.dim() > 1 ? h[1] : 0.0};
  std::int64_t cell = omega_->cell_at(x);
  return cell >= 0 && omega_->tag(cell) != CellTag::Exterior;
}

double TimeArrow::depth(const TimePoint& h) const {
  if (is_whole_cone()) {
    if (!cone_.contains(h)) throw NotInSigma("time point outside the cone");
    return cone_.boundary_distance(h);
  }
  if (h.dim() != omega_->dim()) throw DimensionMismatch("time point/domain dimensions differ");
  std::array<double, 2> x{h[0], h.dim() > 1 ? h[1] : 0.0};
  std::int64_t cell = omega_->cell_at(x);
  if (cell < 0 || omega_->tag(cell) == CellTag::Exterior)
    throw NotInSigma("time point outside Sigma");
  return depth_[static_cast<std::size_t>(cell)];
}

TimePoint TimeArrow::deep_time(double D) const {
  if (D > capacity_) throw NoDeepTime(D, capacity_);
  if (is_whole_cone()) {
    const int m = cone_.dim();
    TimePoint h = TimePoint::zero(m);
    if (cone_.kind() == Cone::Kind::OrthantProduct) {
      for (int i = 0; i < cone_.nonneg_dims(); ++i) h[i] = D;
      return h;
    }
    return cone_.normal() * D;
  }
  auto c = omega_->coords(argmax_cell_);
  auto x = omega_->center(omega_->index(c));
  TimePoint h = TimePoint::zero(omega_->dim());
  for (int a = 0; a < omega_->dim(); ++a) h[a] = x[static_cast<std::size_t>(a)];
  return h;
}

std::vector<TimePoint> TimeArrow::probe_times(double D, int count) const {
  std::vector<TimePoint> probes;
  probes.push_back(deep_time(D));
  if (count <= 1) return probes;

  if (is_whole_cone()) {
    const int m = cone_.dim();
    const double scale = std::max(1.0, D);
    const TimePoint base = probes.front();
    for (int r = 0; r < count - 1 && r < 8; ++r) {
      TimePoint h = base;
      if (cone_.kind() == Cone::Kind::OrthantProduct) {
        const int p = cone_.nonneg_dims();
        for (int i = 0; i < p; ++i) h[i] += kSpread[r][0] * scale;
        for (int i = p; i < m; ++i) h[i] += kSpread[r][1 + (i - p) % 3] * scale;
      } else {
        // Outward shift keeps depth; tangential components follow the spread table.
        h = h + cone_.normal() * (kSpread[r][0] * scale);
        for (int i = 0; i < m; ++i) h[i] += kSpread[r][1 + i % 3] * scale * 0.5;
        double depth_now = cone_.boundary_distance(h);
        if (depth_now < D) h = h + cone_.normal() * (D - depth_now);
      }
      probes.push_back(h);
    }
    return probes;
  }

  // Domain arrow: walk lexicographic ring offsets around the deepest cell, keeping
  // cells of depth >= D.
  auto base_coords = omega_->coords(argmax_cell_);
  const int dim = omega_->dim();
  int radius = 1;
  while (static_cast<int>(probes.size()) < count && radius <= std::max(omega_->extents()[0], dim > 1 ? omega_->extents()[1] : 1)) {
    for (int di = -radius; di <= radius && static_cast<int>(probes.size()) < count; ++di) {
      for (int dj = -radius; dj <= radius && static_cast<int>(probes.size()) < count; ++dj) {
        if (std::max(std::abs(di), std::abs(dj)) != radius) continue;
        if (dim == 1 && dj != 0) continue;
        std::array<int, 2> c{base_coords[0] + di, base_coords[1] + dj};
        if (c[0] < 0 || c[0] >= omega_->extents()[0]) continue;
        if (dim > 1 && (c[1] < 0 || c[1] >= omega_->extents()[1])) continue;
        std::int64_t cell = omega_->index(c);
        if (omega_->tag(cell) == CellTag::Exterior) continue;
        if (depth_[static_cast<std::size_t>(cell)] < D) continue;
        auto x = omega_->center(cell);
        TimePoint h = TimePoint::zero(dim);
        for (int a = 0; a < dim; ++a) h[a] = x[static_cast<std::size_t>(a)];
        probes.push_back(h);
      }
    }
    ++radius;
  }
  return probes;
}

}  // namespace attrlab
