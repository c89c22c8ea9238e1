#pragma once

#include <vector>

#include "attrlab/engine/phase_point.hpp"

namespace attrlab {

// Greedy farthest-point thinning: returns a subset whose points are pairwise > eps/2
// apart and which covers the input within eps/2. Candidates are first sorted by the
// canonical lexicographic key, so the result does not depend on input order.
std::vector<PhasePoint> eps_net(std::vector<PhasePoint> points, double eps,
                                const PhaseMetric& metric);

// Directed and symmetric Hausdorff distances between finite sets.
double directed_hausdorff(const std::vector<PhasePoint>& from, const std::vector<PhasePoint>& to,
                          const PhaseMetric& metric);
double hausdorff(const std::vector<PhasePoint>& a, const std::vector<PhasePoint>& b,
                 const PhaseMetric& metric);

double distance_to_set(const PhasePoint& p, const std::vector<PhasePoint>& set,
                       const PhaseMetric& metric);

// Snap 1D/2D vector states to a grid of the given width keeping the lexicographically
// smallest representative per occupied cell. No-op for width <= 0 or field phases.
std::vector<PhasePoint> dedup_vec_states(std::vector<PhasePoint> points, double grid_width);

}  // namespace attrlab
