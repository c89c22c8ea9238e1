#pragma once

#include <memory>
#include <vector>

#include "attrlab/core/cone.hpp"
#include "attrlab/core/grid_domain.hpp"

namespace attrlab {

// Admissible set of times Sigma inside a cone C. Two shapes:
//   WholeCone: Sigma = C, depth(h) = Euclidean distance to the cone boundary;
//   DomainArrow: Sigma = a masked grid domain inside C = R^d, depth read from the
//     boundary distance transform at cell centers.
// "Big time" means depth(h) >= D.
class TimeArrow {
 public:
  // Defaults to the whole half-line R_+.
  TimeArrow() : capacity_(std::numeric_limits<double>::infinity()) {}

  static TimeArrow whole_cone(Cone c);
  static TimeArrow domain_arrow(DomainPtr omega);

  const Cone& cone() const { return cone_; }
  bool is_whole_cone() const { return omega_ == nullptr; }
  const DomainPtr& sigma_domain() const { return omega_; }
  const std::vector<double>& depth_map() const { return depth_; }

  bool in_sigma(const TimePoint& h) const;

  // Euclidean distance from h to the boundary of Sigma. Throws NotInSigma.
  double depth(const TimePoint& h) const;

  // Largest depth available inside Sigma (or its truncation); +inf for whole cones.
  double capacity() const { return capacity_; }

  // Deterministic point of depth >= D (deepest cell, lexicographic tie-break).
  // Throws NoDeepTime carrying the maximal available depth.
  TimePoint deep_time(double D) const;

  // deep_time(D) plus a deterministic spread of distinct probe times of depth >= D.
  std::vector<TimePoint> probe_times(double D, int count) const;

 private:
  Cone cone_ = Cone::orthant_product(1, 0);
  DomainPtr omega_;
  std::vector<double> depth_;   // per bbox cell, coordinate units (DomainArrow only)
  std::int64_t argmax_cell_ = -1;
  double capacity_ = 0.0;
};

}  // namespace attrlab
