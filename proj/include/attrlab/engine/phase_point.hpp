#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "json.hpp"

#include "attrlab/core/field.hpp"
#include "attrlab/core/loc_metric.hpp"

namespace attrlab {

// A phase point is either a finite-dimensional state or a grid field.
using VecState = std::vector<double>;
using PhasePoint = std::variant<VecState, Field>;

using PhaseMetric = std::function<double(const PhasePoint&, const PhasePoint&)>;

double phase_sup_norm(const PhasePoint& p);
bool phase_finite(const PhasePoint& p);

double euclidean(const VecState& a, const VecState& b);

// Euclidean metric on VecState phase points.
PhaseMetric euclidean_metric();

// Local-topology metric on Field phase points.
PhaseMetric loc_field_metric(LocMetric m);

// Windowed sup distance: sup of |u - v| over the discrete ball of the given radius
// (coordinate units) around a center cell, intersected with non-Exterior cells.
PhaseMetric windowed_sup_metric(DomainPtr dom, std::array<int, 2> center_cell, double radius_units);

// Lexicographic comparison of raw coordinates; canonical order for net construction.
bool phase_less(const PhasePoint& a, const PhasePoint& b);

nlohmann::json phase_to_json(const PhasePoint& p);

}  // namespace attrlab
