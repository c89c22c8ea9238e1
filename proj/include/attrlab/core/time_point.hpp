#pragma once

#include <array>
#include <cmath>
#include <initializer_list>

#include "attrlab/core/errors.hpp"

namespace attrlab {

// A point of multi-dimensional "time": up to four real components.
// Value type, dimension fixed at construction.
class TimePoint {
 public:
  static constexpr int kMaxDim = 4;

  TimePoint() = default;

  TimePoint(std::initializer_list<double> xs) {
    if (xs.size() < 1 || xs.size() > kMaxDim)
      throw DimensionMismatch("time point dimension must be in 1..4");
    m_ = static_cast<int>(xs.size());
    int i = 0;
    for (double x : xs) c_[static_cast<std::size_t>(i++)] = x;
  }

  static TimePoint zero(int m) {
    if (m < 1 || m > kMaxDim) throw DimensionMismatch("time point dimension must be in 1..4");
    TimePoint h;
    h.m_ = m;
    return h;
  }

  int dim() const { return m_; }

  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }

  bool finite() const {
    for (int i = 0; i < m_; ++i)
      if (!std::isfinite(c_[static_cast<std::size_t>(i)])) return false;
    return true;
  }

  double norm() const {
    double s = 0.0;
    for (int i = 0; i < m_; ++i) s += c_[static_cast<std::size_t>(i)] * c_[static_cast<std::size_t>(i)];
    return std::sqrt(s);
  }

  double dot(const TimePoint& o) const {
    check_dim(o);
    double s = 0.0;
    for (int i = 0; i < m_; ++i) s += c_[static_cast<std::size_t>(i)] * o.c_[static_cast<std::size_t>(i)];
    return s;
  }

  TimePoint operator+(const TimePoint& o) const {
    check_dim(o);
    TimePoint r = *this;
    for (int i = 0; i < m_; ++i) r.c_[static_cast<std::size_t>(i)] += o.c_[static_cast<std::size_t>(i)];
    return r;
  }

  TimePoint operator-(const TimePoint& o) const {
    check_dim(o);
    TimePoint r = *this;
    for (int i = 0; i < m_; ++i) r.c_[static_cast<std::size_t>(i)] -= o.c_[static_cast<std::size_t>(i)];
    return r;
  }

  TimePoint operator*(double s) const {
    TimePoint r = *this;
    for (int i = 0; i < m_; ++i) r.c_[static_cast<std::size_t>(i)] *= s;
    return r;
  }

  friend TimePoint operator*(double s, const TimePoint& h) { return h * s; }

  bool operator==(const TimePoint& o) const {
    if (m_ != o.m_) return false;
    for (int i = 0; i < m_; ++i)
      if (c_[static_cast<std::size_t>(i)] != o.c_[static_cast<std::size_t>(i)]) return false;
    return true;
  }

 private:
  void check_dim(const TimePoint& o) const {
    if (m_ != o.m_) throw DimensionMismatch("time point dimensions differ");
  }

  std::array<double, kMaxDim> c_{0.0, 0.0, 0.0, 0.0};
  int m_ = 0;
};

}  // namespace attrlab
