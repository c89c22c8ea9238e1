#include "attrlab/core/cone.hpp"

namespace attrlab {

Cone Cone::orthant_product(int nonneg, int free_dims) {
  if (nonneg < 0 || free_dims < 0 || nonneg + free_dims < 1 || nonneg + free_dims > TimePoint::kMaxDim)
    throw DimensionMismatch("orthant product needs 1..4 total dimensions");
  Cone c;
  c.kind_ = Kind::OrthantProduct;
  c.dim_ = nonneg + free_dims;
  c.nonneg_ = nonneg;
  c.witness_ = TimePoint::zero(c.dim_);
  for (int i = 0; i < nonneg; ++i) c.witness_[i] = 1.0;
  c.witness_margin_ = nonneg == 0 ? std::numeric_limits<double>::infinity() : 1.0;
  return c;
}

Cone Cone::half_space(const TimePoint& normal) {
  if (normal.norm() <= 0.0 || !normal.finite())
    throw Error("half-space normal must be finite and nonzero");
  Cone c;
  c.kind_ = Kind::HalfSpace;
  c.dim_ = normal.dim();
  c.normal_ = normal * (1.0 / normal.norm());
  c.witness_ = c.normal_;
  c.witness_margin_ = 1.0;
  return c;
}

bool Cone::contains(const TimePoint& h) const {
  check_dim(h);
  if (!h.finite()) return false;
  if (kind_ == Kind::OrthantProduct) {
    for (int i = 0; i < nonneg_; ++i)
      if (h[i] < 0.0) return false;
    return true;
  }
  return normal_.dot(h) >= 0.0;
}

double Cone::boundary_distance(const TimePoint& h) const {
  check_dim(h);
  if (kind_ == Kind::OrthantProduct) {
    if (nonneg_ == 0) return std::numeric_limits<double>::infinity();
    double d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < nonneg_; ++i) d = std::min(d, h[i]);
    return d;
  }
  return normal_.dot(h);
}

bool Cone::interior_contains(const TimePoint& h, double margin) const {
  if (!contains(h)) return false;
  return boundary_distance(h) > margin;
}

}  // namespace attrlab
