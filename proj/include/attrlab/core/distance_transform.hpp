#pragma once

#include <vector>

#include "attrlab/core/grid_domain.hpp"

namespace attrlab {

// Exact multi-source Euclidean distance transform on the bounding box: for every cell,
// the squared distance (in cell units) to the nearest seed cell center.
// Felzenszwalb-Huttenlocher lower-envelope scan per axis; cells are never wrapped.
// Returns +inf everywhere when there are no seeds.
std::vector<double> squared_distance_to_seeds(const GridDomain& dom, const std::vector<char>& seed);

// Distance (coordinate units) from every cell center to the nearest Boundary cell center.
std::vector<double> boundary_distance_map(const GridDomain& dom);

}  // namespace attrlab
