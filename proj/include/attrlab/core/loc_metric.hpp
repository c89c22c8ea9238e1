#pragma once

#include <array>

#include "attrlab/core/field.hpp"

namespace attrlab {

// Local-topology metric on fields: the capped weighted-sup series
//   d(u, v) = sum_{k=1..K} 2^{-k} min(1, sup_{|x - c| <= k cells} |u - v|)
//           + 2^{-K} min(1, sup over the whole domain of |u - v|),
// where the tail term equals the analytic value of the series continued past r_K
// (every larger ball saturates at the global sup). d is a metric bounded by 1.
class LocMetric {
 public:
  LocMetric(DomainPtr dom, std::array<int, 2> center, int num_radii);

  // Radii covering the entire domain from the given center.
  static LocMetric covering(DomainPtr dom, std::array<int, 2> center);

  // Center at the deepest cell of a masked domain, or the middle cell of a periodic box.
  static LocMetric default_for(DomainPtr dom);

  double distance(const Field& u, const Field& v) const;

  int num_radii() const { return K_; }
  const std::array<int, 2>& center() const { return center_; }
  const DomainPtr& domain() const { return dom_; }

 private:
  DomainPtr dom_;
  std::array<int, 2> center_;
  int K_;
  // Smallest ball index containing each value cell (>= 1); K_+1 when beyond r_K.
  std::vector<int> ring_;
};

}  // namespace attrlab
