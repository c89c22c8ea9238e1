#include "attrlab/engine/semigroup.hpp"

namespace attrlab {

double semigroup_law_defect(const SemigroupHandle& sg, const TimePoint& h1, const TimePoint& h2,
                            const PhasePoint& u) {
  if (!sg.arrow.cone().contains(h1) || !sg.arrow.cone().contains(h2))
    throw TimeOutsideCone("semigroup law probe outside the cone");
  PhasePoint direct = sg.apply(h1 + h2, u);
  PhasePoint composed = sg.apply(h1, sg.apply(h2, u));
  return sg.metric(direct, composed);
}

}  // namespace attrlab
