#include "attrlab/engine/eps_net.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>

namespace attrlab {

std::vector<PhasePoint> eps_net(std::vector<PhasePoint> points, double eps,
                                const PhaseMetric& metric) {
  if (points.empty()) return {};
  std::sort(points.begin(), points.end(), phase_less);

  const std::size_t n = points.size();
  std::vector<double> dist_to_net(n, std::numeric_limits<double>::infinity());
  std::vector<PhasePoint> net;

  std::size_t next = 0;  // canonical first point
  while (true) {
    net.push_back(points[next]);
    const PhasePoint& center = net.back();
    double far_d = -1.0;
    std::size_t far_i = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (dist_to_net[i] == 0.0) continue;
      double d = metric(points[i], center);
      if (d < dist_to_net[i]) dist_to_net[i] = d;
      if (dist_to_net[i] > far_d) {
        far_d = dist_to_net[i];
        far_i = i;
      }
    }
    if (far_d <= eps * 0.5) break;
    next = far_i;
  }
  return net;
}

double distance_to_set(const PhasePoint& p, const std::vector<PhasePoint>& set,
                       const PhaseMetric& metric) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& q : set) best = std::min(best, metric(p, q));
  return best;
}

double directed_hausdorff(const std::vector<PhasePoint>& from, const std::vector<PhasePoint>& to,
                          const PhaseMetric& metric) {
  double worst = 0.0;
  for (const auto& p : from) worst = std::max(worst, distance_to_set(p, to, metric));
  return worst;
}

double hausdorff(const std::vector<PhasePoint>& a, const std::vector<PhasePoint>& b,
                 const PhaseMetric& metric) {
  return std::max(directed_hausdorff(a, b, metric), directed_hausdorff(b, a, metric));
}

std::vector<PhasePoint> dedup_vec_states(std::vector<PhasePoint> points, double grid_width) {
  if (grid_width <= 0.0 || points.empty() || !std::holds_alternative<VecState>(points.front()))
    return points;
  std::unordered_map<std::uint64_t, std::size_t> keep;
  keep.reserve(points.size());
  auto key_of = [&](const VecState& v) {
    std::uint64_t h = 14695981039346656037ull;
    for (double x : v) {
      auto q = static_cast<std::int64_t>(std::floor(x / grid_width));
      for (int b = 0; b < 8; ++b) {
        h ^= static_cast<unsigned char>(q >> (8 * b));
        h *= 1099511628211ull;
      }
    }
    return h;
  };
  std::vector<PhasePoint> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& v = std::get<VecState>(points[i]);
    auto [it, inserted] = keep.try_emplace(key_of(v), out.size());
    if (inserted) {
      out.push_back(points[i]);
    } else if (phase_less(points[i], out[it->second])) {
      out[it->second] = points[i];  // canonical representative per bucket
    }
  }
  return out;
}

}  // namespace attrlab
