#pragma once

#include <cmath>
#include <vector>

#include "attrlab/core/grid_domain.hpp"

namespace attrlab {

// Real-valued function sampled on the non-Exterior cells of a GridDomain.
class Field {
 public:
  explicit Field(DomainPtr dom, double init = 0.0)
      : dom_(std::move(dom)), v_(static_cast<std::size_t>(dom_->value_count()), init) {}

  static Field constant(DomainPtr dom, double value) { return Field(std::move(dom), value); }

  const GridDomain& domain() const { return *dom_; }
  const DomainPtr& domain_ptr() const { return dom_; }

  std::int64_t size() const { return static_cast<std::int64_t>(v_.size()); }

  double operator[](std::int64_t vi) const { return v_[static_cast<std::size_t>(vi)]; }
  double& operator[](std::int64_t vi) { return v_[static_cast<std::size_t>(vi)]; }

  double at_cell(std::int64_t cell) const { return v_[static_cast<std::size_t>(dom_->value_index(cell))]; }

  std::vector<double>& values() { return v_; }
  const std::vector<double>& values() const { return v_; }

  double sup_norm() const {
    double m = 0.0;
    for (double x : v_) m = std::max(m, std::fabs(x));
    return m;
  }

  bool finite() const {
    for (double x : v_)
      if (!std::isfinite(x)) return false;
    return true;
  }

 private:
  DomainPtr dom_;
  std::vector<double> v_;
};

inline void require_same_domain(const Field& a, const Field& b) {
  if (!a.domain().same_as(b.domain())) throw DomainMismatch("fields live on different domains");
}

// Sup-norm of the difference, one pass.
inline double sup_distance(const Field& a, const Field& b) {
  require_same_domain(a, b);
  double m = 0.0;
  for (std::int64_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

}  // namespace attrlab
