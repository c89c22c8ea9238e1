#pragma once

#include <limits>

#include "attrlab/core/time_point.hpp"

namespace attrlab {

// Closed cone C in R^m with non-empty interior. Two families are supported:
//   OrthantProduct(p, q): R_+^p x R^q with the constrained coordinates first (m = p + q);
//   HalfSpace(n): { h : <h, n> >= 0 }.
// Membership uses closed inequalities, evaluated exactly in floating point.
class Cone {
 public:
  enum class Kind { OrthantProduct, HalfSpace };

  static Cone orthant_product(int nonneg, int free_dims);
  static Cone half_space(const TimePoint& normal);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  int nonneg_dims() const { return nonneg_; }

  // Unit normal of a half-space cone.
  const TimePoint& normal() const { return normal_; }

  bool contains(const TimePoint& h) const;

  // Euclidean distance from h (assumed inside) to the boundary of the cone.
  // +inf when the boundary is empty (p = 0 orthant product, i.e. C = R^m).
  double boundary_distance(const TimePoint& h) const;

  bool interior_contains(const TimePoint& h, double margin = 0.0) const;

  // A canonical interior point together with its distance to the boundary.
  TimePoint interior_witness() const { return witness_; }
  double witness_margin() const { return witness_margin_; }

 private:
  Cone() = default;
  void check_dim(const TimePoint& h) const {
    if (h.dim() != dim_) throw DimensionMismatch("cone/time point dimensions differ");
  }

  Kind kind_ = Kind::OrthantProduct;
  int dim_ = 0;
  int nonneg_ = 0;
  TimePoint normal_;
  TimePoint witness_;
  double witness_margin_ = 0.0;
};

}  // namespace attrlab
