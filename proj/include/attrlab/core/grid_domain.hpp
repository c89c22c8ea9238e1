#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "json.hpp"

#include "attrlab/core/errors.hpp"

namespace attrlab {

enum class CellTag : unsigned char { Interior = 0, Boundary = 1, Exterior = 2 };

// Masked rectangular lattice in 1 or 2 dimensions. Cell (i[,j]) has its center at
// origin + (i + 0.5) * spacing per axis. Values (fields) live on non-Exterior cells.
//
// Mask invariants, enforced at construction:
//   * every Interior cell's lattice neighbors are Interior or Boundary;
//   * a periodic axis carries no Boundary/Exterior cells.
class GridDomain {
 public:
  GridDomain(int dim, std::vector<int> extents, double spacing, std::vector<double> origin,
             std::vector<CellTag> mask, std::vector<bool> periodic);

  // All-Interior fully periodic box of the given side length.
  static std::shared_ptr<const GridDomain> periodic_box(int dim, int cells_per_axis, double length);

  // Staircase mask from an inside(x) predicate: cells whose center satisfies the predicate
  // form the domain; domain cells with a non-domain (or out-of-box) neighbor become Boundary.
  static std::shared_ptr<const GridDomain> from_predicate(
      int dim, std::vector<int> extents, double spacing, std::vector<double> origin,
      const std::function<bool(const std::array<double, 2>&)>& inside);

  int dim() const { return dim_; }
  double spacing() const { return spacing_; }
  const std::vector<int>& extents() const { return extents_; }
  const std::vector<double>& origin() const { return origin_; }
  bool periodic(int axis) const { return periodic_[static_cast<std::size_t>(axis)]; }
  bool any_periodic() const;

  std::int64_t cell_count() const { return cell_count_; }
  std::int64_t value_count() const { return value_count_; }
  std::int64_t boundary_count() const { return boundary_count_; }
  bool has_boundary() const { return boundary_count_ > 0; }

  CellTag tag(std::int64_t cell) const { return mask_[static_cast<std::size_t>(cell)]; }

  std::int64_t index(const std::array<int, 2>& c) const {
    return dim_ == 1 ? c[0] : static_cast<std::int64_t>(c[0]) * extents_[1] + c[1];
  }
  std::array<int, 2> coords(std::int64_t cell) const {
    if (dim_ == 1) return {static_cast<int>(cell), 0};
    return {static_cast<int>(cell / extents_[1]), static_cast<int>(cell % extents_[1])};
  }
  std::array<double, 2> center(std::int64_t cell) const {
    auto c = coords(cell);
    std::array<double, 2> x{0.0, 0.0};
    for (int a = 0; a < dim_; ++a)
      x[static_cast<std::size_t>(a)] =
          origin_[static_cast<std::size_t>(a)] + (c[static_cast<std::size_t>(a)] + 0.5) * spacing_;
    return x;
  }

  // -1 for Exterior cells; otherwise a dense index over non-Exterior cells in row-major order.
  std::int64_t value_index(std::int64_t cell) const { return value_index_[static_cast<std::size_t>(cell)]; }
  std::int64_t value_cell(std::int64_t vi) const { return value_cell_[static_cast<std::size_t>(vi)]; }

  // Neighbor cell along axis in direction dir (+1/-1); wraps on periodic axes, -1 when
  // stepping outside the box on a non-periodic axis.
  std::int64_t neighbor(std::int64_t cell, int axis, int dir) const;

  // Cell containing coordinate point x, or -1 outside the box.
  std::int64_t cell_at(const std::array<double, 2>& x) const;

  nlohmann::json descriptor() const;
  static std::shared_ptr<const GridDomain> from_descriptor(const nlohmann::json& j);

  std::uint64_t content_hash() const { return hash_; }
  bool same_as(const GridDomain& o) const { return hash_ == o.hash_; }

 private:
  void validate() const;
  void build_value_index();
  void compute_hash();

  int dim_ = 0;
  std::vector<int> extents_;
  double spacing_ = 0.0;
  std::vector<double> origin_;
  std::vector<CellTag> mask_;
  std::vector<bool> periodic_;
  std::int64_t cell_count_ = 0;
  std::int64_t value_count_ = 0;
  std::int64_t boundary_count_ = 0;
  std::vector<std::int64_t> value_index_;
  std::vector<std::int64_t> value_cell_;
  std::uint64_t hash_ = 0;
};

using DomainPtr = std::shared_ptr<const GridDomain>;

}  // namespace attrlab
