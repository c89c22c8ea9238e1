#include "attrlab/pde/stencil_cg.hpp"

#include <cmath>

namespace attrlab {

InteriorSystem::InteriorSystem(DomainPtr dom, const std::vector<double>& boundary_by_value)
    : dom_(std::move(dom)) {
  const GridDomain& g = *dom_;
  inv_h2_ = 1.0 / (g.spacing() * g.spacing());
  const int arms = 2 * g.dim();

  std::vector<std::int32_t> unk_of_value(static_cast<std::size_t>(g.value_count()), -1);
  for (std::int64_t c = 0; c < g.cell_count(); ++c) {
    if (g.tag(c) != CellTag::Interior) continue;
    unk_of_value[static_cast<std::size_t>(g.value_index(c))] =
        static_cast<std::int32_t>(cells_.size());
    cells_.push_back(c);
  }

  nbr_.assign(cells_.size() * static_cast<std::size_t>(arms), -1);
  bsum_.assign(cells_.size(), 0.0);
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    int slot = 0;
    for (int a = 0; a < g.dim(); ++a) {
      for (int dir : {-1, +1}) {
        std::int64_t nb = g.neighbor(cells_[i], a, dir);
        // mask invariant: interior neighbors are Interior or Boundary
        std::int64_t vi = g.value_index(nb);
        std::int32_t u = unk_of_value[static_cast<std::size_t>(vi)];
        if (u >= 0) {
          nbr_[i * static_cast<std::size_t>(arms) + static_cast<std::size_t>(slot)] = u;
        } else {
          bsum_[i] += boundary_by_value[static_cast<std::size_t>(vi)] * inv_h2_;
        }
        ++slot;
      }
    }
  }
}

void InteriorSystem::apply(const std::vector<double>& base, double base_scalar,
                           const std::vector<double>& x, std::vector<double>& y) const {
  const int arms = stencil_arms();
  const double diag = arms * inv_h2_;
  const std::int64_t n = size();
  y.resize(static_cast<std::size_t>(n));
  const std::int32_t* nb = nbr_.data();
  for (std::int64_t i = 0; i < n; ++i, nb += arms) {
    double s = 0.0;
    for (int k = 0; k < arms; ++k)
      if (nb[k] >= 0) s += x[static_cast<std::size_t>(nb[k])];
    double b = base_scalar + (base.empty() ? 0.0 : base[static_cast<std::size_t>(i)]);
    y[static_cast<std::size_t>(i)] =
        (b + diag) * x[static_cast<std::size_t>(i)] - inv_h2_ * s;
  }
}

void InteriorSystem::residual(const std::vector<double>& u_by_value,
                              const std::vector<double>& f_at_u, std::vector<double>& out) const {
  const GridDomain& g = *dom_;
  const int arms = stencil_arms();
  const double diag = arms * inv_h2_;
  const std::int64_t n = size();
  out.resize(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    std::int64_t c = cells_[static_cast<std::size_t>(i)];
    double s = 0.0;
    for (int a = 0; a < g.dim(); ++a)
      for (int dir : {-1, +1})
        s += u_by_value[static_cast<std::size_t>(g.value_index(g.neighbor(c, a, dir)))];
    std::size_t vi = static_cast<std::size_t>(g.value_index(c));
    out[static_cast<std::size_t>(i)] = inv_h2_ * s - diag * u_by_value[vi] - f_at_u[vi];
  }
}

void InteriorSystem::to_field(const std::vector<double>& x, Field& u) const {
  for (std::int64_t i = 0; i < size(); ++i)
    u[u.domain().value_index(cells_[static_cast<std::size_t>(i)])] =
        x[static_cast<std::size_t>(i)];
}

void InteriorSystem::from_field(const Field& u, std::vector<double>& x) const {
  x.resize(static_cast<std::size_t>(size()));
  for (std::int64_t i = 0; i < size(); ++i)
    x[static_cast<std::size_t>(i)] =
        u[u.domain().value_index(cells_[static_cast<std::size_t>(i)])];
}

InteriorSystem::CgResult InteriorSystem::cg_solve(const std::vector<double>& base,
                                                  double base_scalar,
                                                  const std::vector<double>& rhs,
                                                  std::vector<double>& x, double rel_tol,
                                                  int max_iters) const {
  const std::int64_t n = size();
  CgResult res;
  x.resize(static_cast<std::size_t>(n), 0.0);

  const double diag_lap = stencil_arms() * inv_h2_;
  std::vector<double> r(static_cast<std::size_t>(n)), z(static_cast<std::size_t>(n)),
      p(static_cast<std::size_t>(n)), ap;
  apply(base, base_scalar, x, ap);

  double bnorm2 = 0.0;
  for (double v : rhs) bnorm2 += v * v;
  if (bnorm2 == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    res.converged = true;
    return res;
  }

  auto precond = [&](std::int64_t i) {
    double m = base_scalar + (base.empty() ? 0.0 : base[static_cast<std::size_t>(i)]) + diag_lap;
    return m > 1e-300 ? 1.0 / m : 1.0;
  };

  double rz = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    r[static_cast<std::size_t>(i)] = rhs[static_cast<std::size_t>(i)] - ap[static_cast<std::size_t>(i)];
    z[static_cast<std::size_t>(i)] = precond(i) * r[static_cast<std::size_t>(i)];
    p[static_cast<std::size_t>(i)] = z[static_cast<std::size_t>(i)];
    rz += r[static_cast<std::size_t>(i)] * z[static_cast<std::size_t>(i)];
  }

  const double tol2 = rel_tol * rel_tol * bnorm2;
  for (int it = 0; it < max_iters; ++it) {
    double rr = 0.0;
    for (double v : r) rr += v * v;
    if (rr <= tol2) {
      res.converged = true;
      res.iterations = it;
      res.rel_residual = std::sqrt(rr / bnorm2);
      return res;
    }
    apply(base, base_scalar, p, ap);
    double pap = 0.0;
    for (std::int64_t i = 0; i < n; ++i)
      pap += p[static_cast<std::size_t>(i)] * ap[static_cast<std::size_t>(i)];
    if (!(pap > 0.0)) {
      res.indefinite = true;
      res.iterations = it;
      return res;
    }
    double alpha = rz / pap;
    for (std::int64_t i = 0; i < n; ++i) {
      x[static_cast<std::size_t>(i)] += alpha * p[static_cast<std::size_t>(i)];
      r[static_cast<std::size_t>(i)] -= alpha * ap[static_cast<std::size_t>(i)];
    }
    double rz_new = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
      z[static_cast<std::size_t>(i)] = precond(i) * r[static_cast<std::size_t>(i)];
      rz_new += r[static_cast<std::size_t>(i)] * z[static_cast<std::size_t>(i)];
    }
    double beta = rz_new / rz;
    rz = rz_new;
    for (std::int64_t i = 0; i < n; ++i)
      p[static_cast<std::size_t>(i)] = z[static_cast<std::size_t>(i)] + beta * p[static_cast<std::size_t>(i)];
  }
  double rr = 0.0;
  for (double v : r) rr += v * v;
  res.iterations = max_iters;
  res.rel_residual = std::sqrt(rr / bnorm2);
  return res;
}

}  // namespace attrlab
