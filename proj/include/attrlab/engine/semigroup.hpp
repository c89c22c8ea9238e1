#pragma once

#include "attrlab/core/bornology.hpp"
#include "attrlab/core/time_arrow.hpp"
#include "attrlab/engine/phase_point.hpp"

namespace attrlab {

struct VectorPhase {
  int dim;
};
struct FieldPhase {
  DomainPtr domain;
};
using PhaseKind = std::variant<VectorPhase, FieldPhase>;

// An evaluatable multi-parametric semigroup: apply(h, u) for h in the arrow's cone,
// plus the bornology of admissible seed sets and the metric used for nets/attraction.
struct SemigroupHandle {
  TimeArrow arrow;
  PhaseKind phase;
  Bornology bornology;
  std::function<PhasePoint(const TimePoint&, const PhasePoint&)> apply;
  PhaseMetric metric;
  // Optional residual hook backing Bornology::Constraint::SolvesElliptic.
  std::function<double(const PhasePoint&)> constraint_residual;
};

// Distance between apply(h1+h2, u) and apply(h1, apply(h2, u)) in the handle's metric.
double semigroup_law_defect(const SemigroupHandle& sg, const TimePoint& h1, const TimePoint& h2,
                            const PhasePoint& u);

}  // namespace attrlab
