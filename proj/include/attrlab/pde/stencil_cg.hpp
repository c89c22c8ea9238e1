#pragma once

#include <cstdint>
#include <vector>

#include "attrlab/core/field.hpp"

namespace attrlab {

// Interior-unknown view of a masked Dirichlet problem. Unknowns are the Interior
// cells in row-major order; boundary cells carry fixed values whose stencil
// contributions are folded into a per-unknown constant.
class InteriorSystem {
 public:
  // boundary_by_value: per value-index vector, read at Boundary cells only.
  InteriorSystem(DomainPtr dom, const std::vector<double>& boundary_by_value);

  std::int64_t size() const { return static_cast<std::int64_t>(cells_.size()); }
  const DomainPtr& domain() const { return dom_; }
  double inv_h2() const { return inv_h2_; }
  int stencil_arms() const { return 2 * dom_->dim(); }

  std::int64_t cell(std::int64_t unknown) const { return cells_[static_cast<std::size_t>(unknown)]; }

  // Fixed boundary contribution (sum of boundary-neighbor values / h^2) per unknown.
  const std::vector<double>& boundary_term() const { return bsum_; }

  // y = (base + 2d/h^2) .* x - (1/h^2) * sum of interior-neighbor x.
  // `base` may be empty (treated as zero), a scalar splat, or per-unknown values.
  void apply(const std::vector<double>& base, double base_scalar, const std::vector<double>& x,
             std::vector<double>& y) const;

  // Discrete residual Lap_h(u) - f_of_u on the unknowns, given full-field values u
  // (by value index) and the reaction evaluated at u.
  void residual(const std::vector<double>& u_by_value, const std::vector<double>& f_at_u,
                std::vector<double>& out) const;

  // Scatter unknowns into a full field (boundary values imposed).
  void to_field(const std::vector<double>& x, Field& u) const;
  void from_field(const Field& u, std::vector<double>& x) const;

  struct CgResult {
    bool converged = false;
    bool indefinite = false;
    int iterations = 0;
    double rel_residual = 0.0;
  };

  // Jacobi-preconditioned conjugate gradients on the operator above. Deterministic;
  // flags negative curvature instead of diverging.
  CgResult cg_solve(const std::vector<double>& base, double base_scalar,
                    const std::vector<double>& rhs, std::vector<double>& x, double rel_tol,
                    int max_iters) const;

 private:
  DomainPtr dom_;
  std::vector<std::int64_t> cells_;
  std::vector<std::int32_t> nbr_;  // 2*dim per unknown; >=0 unknown index, -1 boundary
  std::vector<double> bsum_;
  double inv_h2_ = 0.0;
};

}  // namespace attrlab
