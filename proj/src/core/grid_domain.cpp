#include "attrlab/core/grid_domain.hpp"

#include <cmath>

#include "attrlab/core/io.hpp"

namespace attrlab {

GridDomain::GridDomain(int dim, std::vector<int> extents, double spacing,
                       std::vector<double> origin, std::vector<CellTag> mask,
                       std::vector<bool> periodic)
    : dim_(dim),
      extents_(std::move(extents)),
      spacing_(spacing),
      origin_(std::move(origin)),
      mask_(std::move(mask)),
      periodic_(std::move(periodic)) {
  if (dim_ < 1 || dim_ > 2) throw std::invalid_argument("grid domain dimension must be 1 or 2");
  if (static_cast<int>(extents_.size()) != dim_ || static_cast<int>(origin_.size()) != dim_ ||
      static_cast<int>(periodic_.size()) != dim_)
    throw std::invalid_argument("grid domain: extents/origin/periodic size mismatch");
  if (!(spacing_ > 0.0)) throw std::invalid_argument("grid spacing must be positive");
  cell_count_ = 1;
  for (int a = 0; a < dim_; ++a) {
    if (extents_[static_cast<std::size_t>(a)] < 1)
      throw std::invalid_argument("grid extents must be positive");
    cell_count_ *= extents_[static_cast<std::size_t>(a)];
  }
  if (static_cast<std::int64_t>(mask_.size()) != cell_count_)
    throw std::invalid_argument("grid mask size mismatch");
  validate();
  build_value_index();
  compute_hash();
}

std::int64_t GridDomain::neighbor(std::int64_t cell, int axis, int dir) const {
  auto c = coords(cell);
  int n = extents_[static_cast<std::size_t>(axis)];
  int v = c[static_cast<std::size_t>(axis)] + dir;
  if (periodic_[static_cast<std::size_t>(axis)]) {
    v = (v % n + n) % n;
  } else if (v < 0 || v >= n) {
    return -1;
  }
  c[static_cast<std::size_t>(axis)] = v;
  return index(c);
}

std::int64_t GridDomain::cell_at(const std::array<double, 2>& x) const {
  std::array<int, 2> c{0, 0};
  for (int a = 0; a < dim_; ++a) {
    double t = (x[static_cast<std::size_t>(a)] - origin_[static_cast<std::size_t>(a)]) / spacing_;
    int i = static_cast<int>(std::floor(t));
    if (i < 0 || i >= extents_[static_cast<std::size_t>(a)]) return -1;
    c[static_cast<std::size_t>(a)] = i;
  }
  return index(c);
}

bool GridDomain::any_periodic() const {
  for (int a = 0; a < dim_; ++a)
    if (periodic_[static_cast<std::size_t>(a)]) return true;
  return false;
}

void GridDomain::validate() const {
  for (int a = 0; a < dim_; ++a) {
    if (!periodic_[static_cast<std::size_t>(a)]) continue;
    for (std::int64_t cell = 0; cell < cell_count_; ++cell)
      if (mask_[static_cast<std::size_t>(cell)] != CellTag::Interior)
        throw std::invalid_argument("periodic axis must carry Interior cells only");
  }
  for (std::int64_t cell = 0; cell < cell_count_; ++cell) {
    if (mask_[static_cast<std::size_t>(cell)] != CellTag::Interior) continue;
    for (int a = 0; a < dim_; ++a) {
      for (int dir : {-1, +1}) {
        std::int64_t nb = neighbor(cell, a, dir);
        if (nb < 0 || mask_[static_cast<std::size_t>(nb)] == CellTag::Exterior)
          throw std::invalid_argument("Interior cell with Exterior/out-of-box neighbor");
      }
    }
  }
}

void GridDomain::build_value_index() {
  value_index_.assign(static_cast<std::size_t>(cell_count_), -1);
  value_cell_.clear();
  for (std::int64_t cell = 0; cell < cell_count_; ++cell) {
    CellTag t = mask_[static_cast<std::size_t>(cell)];
    if (t == CellTag::Exterior) continue;
    value_index_[static_cast<std::size_t>(cell)] = static_cast<std::int64_t>(value_cell_.size());
    value_cell_.push_back(cell);
    if (t == CellTag::Boundary) ++boundary_count_;
  }
  value_count_ = static_cast<std::int64_t>(value_cell_.size());
  if (value_count_ == 0) throw std::invalid_argument("grid domain has no non-Exterior cells");
}

void GridDomain::compute_hash() {
  hash_ = fnv1a64(descriptor().dump());
}

std::shared_ptr<const GridDomain> GridDomain::periodic_box(int dim, int cells_per_axis,
                                                           double length) {
  if (cells_per_axis < 3) throw std::invalid_argument("periodic box needs >= 3 cells per axis");
  std::vector<int> ext(static_cast<std::size_t>(dim), cells_per_axis);
  std::vector<double> org(static_cast<std::size_t>(dim), 0.0);
  std::int64_t n = 1;
  for (int a = 0; a < dim; ++a) n *= cells_per_axis;
  std::vector<CellTag> mask(static_cast<std::size_t>(n), CellTag::Interior);
  std::vector<bool> per(static_cast<std::size_t>(dim), true);
  return std::make_shared<GridDomain>(dim, ext, length / cells_per_axis, org, mask, per);
}

std::shared_ptr<const GridDomain> GridDomain::from_predicate(
    int dim, std::vector<int> extents, double spacing, std::vector<double> origin,
    const std::function<bool(const std::array<double, 2>&)>& inside) {
  std::int64_t n = 1;
  for (int a = 0; a < dim; ++a) n *= extents[static_cast<std::size_t>(a)];
  std::vector<char> dom(static_cast<std::size_t>(n), 0);

  auto cell_coords = [&](std::int64_t cell) -> std::array<int, 2> {
    if (dim == 1) return {static_cast<int>(cell), 0};
    return {static_cast<int>(cell / extents[1]), static_cast<int>(cell % extents[1])};
  };
  for (std::int64_t cell = 0; cell < n; ++cell) {
    auto c = cell_coords(cell);
    std::array<double, 2> x{0.0, 0.0};
    for (int a = 0; a < dim; ++a)
      x[static_cast<std::size_t>(a)] =
          origin[static_cast<std::size_t>(a)] + (c[static_cast<std::size_t>(a)] + 0.5) * spacing;
    dom[static_cast<std::size_t>(cell)] = inside(x) ? 1 : 0;
  }

  std::vector<CellTag> mask(static_cast<std::size_t>(n), CellTag::Exterior);
  for (std::int64_t cell = 0; cell < n; ++cell) {
    if (!dom[static_cast<std::size_t>(cell)]) continue;
    auto c = cell_coords(cell);
    bool edge = false;
    for (int a = 0; a < dim && !edge; ++a) {
      for (int dir : {-1, +1}) {
        int v = c[static_cast<std::size_t>(a)] + dir;
        if (v < 0 || v >= extents[static_cast<std::size_t>(a)]) {
          edge = true;
          break;
        }
        auto cc = c;
        cc[static_cast<std::size_t>(a)] = v;
        std::int64_t nb = dim == 1 ? cc[0] : static_cast<std::int64_t>(cc[0]) * extents[1] + cc[1];
        if (!dom[static_cast<std::size_t>(nb)]) {
          edge = true;
          break;
        }
      }
    }
    mask[static_cast<std::size_t>(cell)] = edge ? CellTag::Boundary : CellTag::Interior;
  }
  std::vector<bool> per(static_cast<std::size_t>(dim), false);
  return std::make_shared<GridDomain>(dim, std::move(extents), spacing, std::move(origin),
                                      std::move(mask), per);
}

nlohmann::json GridDomain::descriptor() const {
  // Run-length encoded mask: [count, tag] pairs in row-major order.
  nlohmann::json rle = nlohmann::json::array();
  std::int64_t run = 0;
  int cur = -1;
  for (std::int64_t cell = 0; cell < cell_count_; ++cell) {
    int t = static_cast<int>(mask_[static_cast<std::size_t>(cell)]);
    if (t == cur) {
      ++run;
    } else {
      if (run > 0) rle.push_back({run, cur});
      cur = t;
      run = 1;
    }
  }
  if (run > 0) rle.push_back({run, cur});
  return nlohmann::json{{"spacing", spacing_}, {"extents", extents_},   {"origin", origin_},
                        {"mask_rle", rle},     {"periodic", periodic_}};
}

std::shared_ptr<const GridDomain> GridDomain::from_descriptor(const nlohmann::json& j) {
  auto extents = j.at("extents").get<std::vector<int>>();
  auto origin = j.at("origin").get<std::vector<double>>();
  auto periodic = j.at("periodic").get<std::vector<bool>>();
  double spacing = j.at("spacing").get<double>();
  std::vector<CellTag> mask;
  for (const auto& pair : j.at("mask_rle")) {
    std::int64_t run = pair.at(0).get<std::int64_t>();
    int tag = pair.at(1).get<int>();
    if (tag < 0 || tag > 2) throw Error("bad mask tag in descriptor");
    mask.insert(mask.end(), static_cast<std::size_t>(run), static_cast<CellTag>(tag));
  }
  return std::make_shared<GridDomain>(static_cast<int>(extents.size()), extents, spacing, origin,
                                      mask, periodic);
}

}  // namespace attrlab
