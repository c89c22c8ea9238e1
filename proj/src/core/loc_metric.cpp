#include "attrlab/core/loc_metric.hpp"

#include <cmath>

#include "attrlab/core/distance_transform.hpp"

namespace attrlab {

LocMetric::LocMetric(DomainPtr dom, std::array<int, 2> center, int num_radii)
    : dom_(std::move(dom)), center_(center), K_(num_radii) {
  if (K_ < 1) throw Error("loc metric needs at least one radius");
  ring_.resize(static_cast<std::size_t>(dom_->value_count()));
  for (std::int64_t vi = 0; vi < dom_->value_count(); ++vi) {
    auto c = dom_->coords(dom_->value_cell(vi));
    double dx = c[0] - center_[0];
    double dy = dom_->dim() > 1 ? c[1] - center_[1] : 0.0;
    double dist = std::sqrt(dx * dx + dy * dy);
    int k = std::max(1, static_cast<int>(std::ceil(dist)));
    ring_[static_cast<std::size_t>(vi)] = std::min(k, K_ + 1);
  }
}

LocMetric LocMetric::covering(DomainPtr dom, std::array<int, 2> center) {
  int nx = dom->extents()[0];
  int ny = dom->dim() > 1 ? dom->extents()[1] : 1;
  double dx = std::max(center[0], nx - 1 - center[0]);
  double dy = dom->dim() > 1 ? std::max(center[1], ny - 1 - center[1]) : 0.0;
  int K = std::max(1, static_cast<int>(std::ceil(std::sqrt(dx * dx + dy * dy))));
  return LocMetric(std::move(dom), center, K);
}

LocMetric LocMetric::default_for(DomainPtr dom) {
  std::array<int, 2> c{dom->extents()[0] / 2, dom->dim() > 1 ? dom->extents()[1] / 2 : 0};
  if (dom->has_boundary()) {
    auto depth = boundary_distance_map(*dom);
    double best = -1.0;
    for (std::int64_t cell = 0; cell < dom->cell_count(); ++cell) {
      if (dom->tag(cell) == CellTag::Exterior) continue;
      if (depth[static_cast<std::size_t>(cell)] > best) {
        best = depth[static_cast<std::size_t>(cell)];
        c = dom->coords(cell);
      }
    }
  }
  return covering(std::move(dom), c);
}

double LocMetric::distance(const Field& u, const Field& v) const {
  require_same_domain(u, v);
  if (!u.domain().same_as(*dom_)) throw DomainMismatch("fields do not live on the metric's domain");

  // Max |u - v| per ring, then running max over nested balls.
  std::vector<double> ring_max(static_cast<std::size_t>(K_) + 2, 0.0);
  const std::int64_t n = u.size();
  for (std::int64_t i = 0; i < n; ++i) {
    double d = std::fabs(u[i] - v[i]);
    std::size_t k = static_cast<std::size_t>(ring_[static_cast<std::size_t>(i)]);
    if (d > ring_max[k]) ring_max[k] = d;
  }
  double total = 0.0;
  double running = 0.0;
  double w = 1.0;
  for (int k = 1; k <= K_; ++k) {
    running = std::max(running, ring_max[static_cast<std::size_t>(k)]);
    w *= 0.5;
    total += w * std::min(1.0, running);
  }
  running = std::max(running, ring_max[static_cast<std::size_t>(K_) + 1]);
  total += w * std::min(1.0, running);  // analytic tail: sum_{k>K} 2^{-k} = 2^{-K}
  return total;
}

}  // namespace attrlab
