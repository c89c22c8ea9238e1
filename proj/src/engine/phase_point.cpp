#include "attrlab/engine/phase_point.hpp"

#include <algorithm>
#include <cmath>

#include "attrlab/core/io.hpp"

namespace attrlab {

double phase_sup_norm(const PhasePoint& p) {
  if (const auto* v = std::get_if<VecState>(&p)) {
    double m = 0.0;
    for (double x : *v) m = std::max(m, std::fabs(x));
    return m;
  }
  return std::get<Field>(p).sup_norm();
}

bool phase_finite(const PhasePoint& p) {
  if (const auto* v = std::get_if<VecState>(&p)) {
    for (double x : *v)
      if (!std::isfinite(x)) return false;
    return true;
  }
  return std::get<Field>(p).finite();
}

double euclidean(const VecState& a, const VecState& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector states differ in dimension");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

PhaseMetric euclidean_metric() {
  return [](const PhasePoint& a, const PhasePoint& b) {
    return euclidean(std::get<VecState>(a), std::get<VecState>(b));
  };
}

PhaseMetric loc_field_metric(LocMetric m) {
  return [m = std::move(m)](const PhasePoint& a, const PhasePoint& b) {
    return m.distance(std::get<Field>(a), std::get<Field>(b));
  };
}

PhaseMetric windowed_sup_metric(DomainPtr dom, std::array<int, 2> center_cell,
                                double radius_units) {
  // Precompute the window's value indices once.
  std::vector<std::int64_t> window;
  const double r_cells = radius_units / dom->spacing();
  const int r = static_cast<int>(std::ceil(r_cells));
  for (int di = -r; di <= r; ++di) {
    for (int dj = -(dom->dim() > 1 ? r : 0); dj <= (dom->dim() > 1 ? r : 0); ++dj) {
      if (di * di + dj * dj > r_cells * r_cells + 1e-12) continue;
      std::array<int, 2> c{center_cell[0] + di, center_cell[1] + dj};
      if (c[0] < 0 || c[0] >= dom->extents()[0]) continue;
      if (dom->dim() > 1 && (c[1] < 0 || c[1] >= dom->extents()[1])) continue;
      std::int64_t cell = dom->index(c);
      if (dom->tag(cell) == CellTag::Exterior) continue;
      window.push_back(dom->value_index(cell));
    }
  }
  if (window.empty()) throw EmptyRegion("windowed sup metric: empty window");
  return [dom = std::move(dom), window = std::move(window)](const PhasePoint& pa,
                                                            const PhasePoint& pb) {
    const Field& a = std::get<Field>(pa);
    const Field& b = std::get<Field>(pb);
    require_same_domain(a, b);
    if (!a.domain().same_as(*dom)) throw DomainMismatch("fields do not live on the metric domain");
    double m = 0.0;
    for (std::int64_t vi : window) m = std::max(m, std::fabs(a[vi] - b[vi]));
    return m;
  };
}

bool phase_less(const PhasePoint& a, const PhasePoint& b) {
  auto values = [](const PhasePoint& p) -> const std::vector<double>& {
    if (const auto* v = std::get_if<VecState>(&p)) return *v;
    return std::get<Field>(p).values();
  };
  const auto& va = values(a);
  const auto& vb = values(b);
  return std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end());
}

nlohmann::json phase_to_json(const PhasePoint& p) {
  if (const auto* v = std::get_if<VecState>(&p)) return nlohmann::json(*v);
  const Field& f = std::get<Field>(p);
  return nlohmann::json{{"domain_hash", hash_hex(f.domain().content_hash())},
                        {"values", f.values()}};
}

}  // namespace attrlab
