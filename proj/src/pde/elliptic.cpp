#include "attrlab/pde/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "attrlab/core/io.hpp"
#include "attrlab/pde/domain_shapes.hpp"

namespace attrlab {

EllipticProblem::EllipticProblem(DomainPtr dom, std::vector<double> boundary_by_value,
                                 Nonlinearity f, std::string id)
    : dom_(std::move(dom)), bvals_(std::move(boundary_by_value)), f_(std::move(f)), id_(std::move(id)) {
  if (!dom_->has_boundary()) throw Error("elliptic problem needs boundary cells");
  if (static_cast<std::int64_t>(bvals_.size()) != dom_->value_count())
    throw Error("boundary data must be indexed by value index");
  f_.validate_superlinearity();
  data_min_ = std::numeric_limits<double>::infinity();
  data_max_ = -data_min_;
  for (std::int64_t c = 0; c < dom_->cell_count(); ++c) {
    if (dom_->tag(c) != CellTag::Boundary) continue;
    double v = bvals_[static_cast<std::size_t>(dom_->value_index(c))];
    if (!std::isfinite(v)) throw Error("boundary data must be finite");
    data_min_ = std::min(data_min_, v);
    data_max_ = std::max(data_max_, v);
  }
}

EllipticProblem EllipticProblem::with_data(
    DomainPtr dom, Nonlinearity f, const std::function<double(const std::array<double, 2>&)>& data,
    std::string id) {
  std::vector<double> b(static_cast<std::size_t>(dom->value_count()), 0.0);
  for (std::int64_t c = 0; c < dom->cell_count(); ++c)
    if (dom->tag(c) == CellTag::Boundary)
      b[static_cast<std::size_t>(dom->value_index(c))] = data(dom->center(c));
  return EllipticProblem(std::move(dom), std::move(b), std::move(f), std::move(id));
}

namespace {

// Impose Dirichlet values on the boundary cells of a field.
void impose_boundary(const EllipticProblem& p, Field& u) {
  const GridDomain& g = *p.domain();
  for (std::int64_t c = 0; c < g.cell_count(); ++c)
    if (g.tag(c) == CellTag::Boundary) {
      std::int64_t vi = g.value_index(c);
      u[vi] = p.boundary_by_value()[static_cast<std::size_t>(vi)];
    }
}

double sup_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

// Residual vector on the unknowns for the current field.
void residual_vec(const EllipticProblem& p, const InteriorSystem& sys, const Field& u,
                  std::vector<double>& f_at_u, std::vector<double>& out) {
  const auto& vals = u.values();
  f_at_u.resize(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) f_at_u[i] = p.nonlinearity()(vals[i]);
  sys.residual(vals, f_at_u, out);
}

Field initial_field(const EllipticProblem& p, const InteriorSystem& sys,
                    const InitStrategy& init, const SolveOptions& opts, SolveInfo* info) {
  Field u(p.domain(), 0.0);
  switch (init.kind) {
    case InitStrategy::Kind::ConstantGuess: {
      for (auto& v : u.values()) v = init.constant;
      break;
    }
    case InitStrategy::Kind::Given: {
      if (!init.given) throw Error("Given init needs a field");
      require_same_domain(*init.given, u);
      u = *init.given;
      break;
    }
    case InitStrategy::Kind::HarmonicExtension: {
      if (p.data_min() == p.data_max()) {
        for (auto& v : u.values()) v = p.data_min();  // harmonic extension of a constant
        break;
      }
      // solve -Lap u = 0 with the Dirichlet data
      std::vector<double> rhs = sys.boundary_term();
      std::vector<double> x(static_cast<std::size_t>(sys.size()), 0.0);
      auto cg = sys.cg_solve({}, 0.0, rhs, x, opts.cg_tol, opts.cg_max_iters);
      if (info) info->cg_iterations += cg.iterations;
      sys.to_field(x, u);
      break;
    }
  }
  impose_boundary(p, u);
  if (!u.finite()) throw NonFiniteState("initial field is not finite", 0);
  return u;
}

}  // namespace

Field solve_elliptic(const EllipticProblem& p, const InitStrategy& init, const SolveOptions& opts,
                     SolveInfo* info) {
  InteriorSystem sys(p.domain(), p.boundary_by_value());
  SolveInfo local;
  SolveInfo& log = info ? *info : local;

  Field u = initial_field(p, sys, init, opts, &log);
  std::vector<double> f_at_u, g, x, rhs, delta;
  sys.from_field(u, x);

  residual_vec(p, sys, u, f_at_u, g);
  double res = sup_norm(g);
  log.history.push_back(res);
  const double res0 = res;
  const double switch_at = std::max(opts.switch_abs, opts.switch_rel * res0);

  // Stage 1: sigma-damped semi-implicit pseudo-time, ((1/dtau+sigma) I - Lap) u+ =
  // (1/dtau+sigma) u - f(u). Matrix-free, so sigma tracks the value range each step.
  long stagnant = 0;
  while (res > switch_at && res > opts.newton_tol && log.pseudo_steps < opts.max_pseudo) {
    double lo = *std::min_element(u.values().begin(), u.values().end());
    double hi = *std::max_element(u.values().begin(), u.values().end());
    double sigma = p.nonlinearity().max_abs_derivative(lo - 0.1, hi + 0.1);
    double alpha = 1.0 / opts.dtau + sigma;

    rhs.resize(static_cast<std::size_t>(sys.size()));
    for (std::int64_t i = 0; i < sys.size(); ++i) {
      std::int64_t vi = p.domain()->value_index(sys.cell(i));
      rhs[static_cast<std::size_t>(i)] =
          alpha * u[vi] - f_at_u[static_cast<std::size_t>(vi)] +
          sys.boundary_term()[static_cast<std::size_t>(i)];
    }
    auto cg = sys.cg_solve({}, alpha, rhs, x, opts.cg_tol, opts.cg_max_iters);
    log.cg_iterations += cg.iterations;
    if (cg.indefinite) throw NoConvergence("pseudo-time matrix lost definiteness", log.history);
    sys.to_field(x, u);
    if (!u.finite()) throw NonFiniteState("pseudo-time step diverged", log.pseudo_steps);

    residual_vec(p, sys, u, f_at_u, g);
    double next = sup_norm(g);
    stagnant = next > 0.999 * res ? stagnant + 1 : 0;
    res = next;
    log.history.push_back(res);
    ++log.pseudo_steps;
    if (stagnant >= 40) break;  // hand over to Newton
  }

  // Stage 2: damped Newton, (diag f'(u) - Lap) delta = residual.
  std::vector<double> base(static_cast<std::size_t>(sys.size()));
  int pseudo_rounds_left = 3;
  while (res > opts.newton_tol) {
    if (log.newton_iters >= opts.max_newton)
      throw NoConvergence("Newton iteration budget exhausted", log.history);

    for (std::int64_t i = 0; i < sys.size(); ++i)
      base[static_cast<std::size_t>(i)] =
          p.nonlinearity().derivative(u[p.domain()->value_index(sys.cell(i))]);

    delta.assign(static_cast<std::size_t>(sys.size()), 0.0);
    double shift = 0.0;
    auto cg = sys.cg_solve(base, shift, g, delta, opts.cg_tol, opts.cg_max_iters);
    log.cg_iterations += cg.iterations;
    while (cg.indefinite && shift < 1e4) {
      shift = shift == 0.0 ? 1.0 + sup_norm(base) * 0.1 : shift * 10.0;
      delta.assign(static_cast<std::size_t>(sys.size()), 0.0);
      cg = sys.cg_solve(base, shift, g, delta, opts.cg_tol, opts.cg_max_iters);
      log.cg_iterations += cg.iterations;
    }
    if (cg.indefinite) throw NoConvergence("Newton system stayed indefinite", log.history);

    // Backtracking on the sup-norm residual.
    sys.from_field(u, x);
    double eta = 1.0;
    double next = res;
    Field trial = u;
    bool accepted = false;
    for (int halving = 0; halving <= opts.max_halvings; ++halving) {
      std::vector<double> xt = x;
      for (std::int64_t i = 0; i < sys.size(); ++i)
        xt[static_cast<std::size_t>(i)] += eta * delta[static_cast<std::size_t>(i)];
      sys.to_field(xt, trial);
      if (trial.finite()) {
        residual_vec(p, sys, trial, f_at_u, g);
        next = sup_norm(g);
        if (next <= (1.0 - 1e-4 * eta) * res) {
          accepted = true;
          break;
        }
      }
      eta *= 0.5;
    }
    if (!accepted) {
      // recompute g for the unmodified iterate and fall back to pseudo-time
      residual_vec(p, sys, u, f_at_u, g);
      if (--pseudo_rounds_left < 0)
        throw NoConvergence("Newton damping stalled", log.history);
      for (long k = 0; k < 50 && res > opts.newton_tol; ++k) {
        double lo = *std::min_element(u.values().begin(), u.values().end());
        double hi = *std::max_element(u.values().begin(), u.values().end());
        double sigma = p.nonlinearity().max_abs_derivative(lo - 0.1, hi + 0.1);
        double alpha = 1.0 / opts.dtau + sigma;
        rhs.resize(static_cast<std::size_t>(sys.size()));
        for (std::int64_t i = 0; i < sys.size(); ++i) {
          std::int64_t vi = p.domain()->value_index(sys.cell(i));
          rhs[static_cast<std::size_t>(i)] =
              alpha * u[vi] - f_at_u[static_cast<std::size_t>(vi)] +
              sys.boundary_term()[static_cast<std::size_t>(i)];
        }
        auto cg2 = sys.cg_solve({}, alpha, rhs, x, opts.cg_tol, opts.cg_max_iters);
        log.cg_iterations += cg2.iterations;
        sys.to_field(x, u);
        residual_vec(p, sys, u, f_at_u, g);
        res = sup_norm(g);
        log.history.push_back(res);
        ++log.pseudo_steps;
      }
      continue;
    }

    u = trial;
    res = next;
    log.history.push_back(res);
    ++log.newton_iters;
  }

  log.residual = res;
  if (!u.finite()) throw NonFiniteState("solution is not finite", log.pseudo_steps);
  return u;
}

double residual_sup(const EllipticProblem& p, const Field& u) {
  InteriorSystem sys(p.domain(), p.boundary_by_value());
  std::vector<double> f_at_u, g;
  residual_vec(p, sys, u, f_at_u, g);
  return sup_norm(g);
}

double verify_residual(const EllipticProblem& p, const Field& u) {
  // Independent of the solver machinery: walks raw cells and tags only.
  const GridDomain& g = *p.domain();
  require_same_domain(u, Field(p.domain()));
  const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
  double worst = 0.0;
  for (std::int64_t c = 0; c < g.cell_count(); ++c) {
    if (g.tag(c) != CellTag::Interior) continue;
    double lap = -2.0 * g.dim() * u.at_cell(c);
    for (int a = 0; a < g.dim(); ++a)
      lap += u.at_cell(g.neighbor(c, a, -1)) + u.at_cell(g.neighbor(c, a, +1));
    double r = lap * inv_h2 - p.nonlinearity()(u.at_cell(c));
    worst = std::max(worst, std::fabs(r));
  }
  return worst;
}

EquilibriumSet EquilibriumSet::from(const Nonlinearity& f) {
  EquilibriumSet k;
  k.values = real_roots(f);
  for (double v : k.values)
    if (std::fabs(f(v)) > 1e-12) throw UnsupportedNonlinearity("equilibrium fails verification");
  return k;
}

namespace {

// Window offsets for the discrete ball of radius ceil(1/spacing) cells.
std::vector<std::array<int, 2>> window_offsets(const GridDomain& dom) {
  const double r = std::ceil(1.0 / dom.spacing());
  std::vector<std::array<int, 2>> offs;
  int ri = static_cast<int>(r);
  for (int di = -ri; di <= ri; ++di) {
    if (dom.dim() == 1) {
      if (di * di <= r * r) offs.push_back({di, 0});
      continue;
    }
    for (int dj = -ri; dj <= ri; ++dj)
      if (di * di + dj * dj <= r * r) offs.push_back({di, dj});
  }
  return offs;
}

double window_distance_to_roots(const Field& u, const EquilibriumSet& K,
                                const std::vector<std::array<int, 2>>& offs, std::int64_t cell) {
  const GridDomain& dom = u.domain();
  auto c = dom.coords(cell);
  double best = std::numeric_limits<double>::infinity();
  for (double k : K.values) {
    double sup = 0.0;
    for (const auto& o : offs) {
      std::array<int, 2> cc{c[0] + o[0], c[1] + o[1]};
      if (cc[0] < 0 || cc[0] >= dom.extents()[0]) continue;
      if (dom.dim() > 1 && (cc[1] < 0 || cc[1] >= dom.extents()[1])) continue;
      std::int64_t cell2 = dom.index(cc);
      if (dom.tag(cell2) == CellTag::Exterior) continue;
      sup = std::max(sup, std::fabs(u.at_cell(cell2) - k));
      if (sup >= best) break;  // cannot beat the current best root
    }
    best = std::min(best, sup);
  }
  return best;
}

}  // namespace

std::optional<double> band_sup_distance(const Field& u, const EquilibriumSet& K, double lo,
                                        double hi, const DepthMap& depths) {
  const GridDomain& dom = u.domain();
  if (!dom.same_as(*depths.dom)) throw DomainMismatch("depth map built for another domain");
  auto offs = window_offsets(dom);
  bool any = false;
  double sup = 0.0;
  for (std::int64_t c = 0; c < dom.cell_count(); ++c) {
    if (dom.tag(c) == CellTag::Exterior) continue;
    double d = depths.depth[static_cast<std::size_t>(c)];
    if (d < lo || d >= hi) continue;
    any = true;
    sup = std::max(sup, window_distance_to_roots(u, K, offs, c));
  }
  if (!any) return std::nullopt;
  return sup;
}

RateProfile attraction_profile_elliptic(const Field& u, const EquilibriumSet& K,
                                        const std::vector<double>& depth_bands,
                                        const DepthMap& depths) {
  RateProfile profile;
  profile.target = "equilibria";
  for (double D : depth_bands) {
    auto sup = band_sup_distance(u, K, D, D + 1.0, depths);
    if (!sup) {
      profile.skipped_depths.push_back(D);
      continue;
    }
    profile.entries.push_back({D, *sup, std::nullopt});
  }
  return profile;
}

nlohmann::json PlateauAssignment::to_json() const {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : components)
    comps.push_back(nlohmann::json{{"id", c.id},
                                   {"size", c.size},
                                   {"N_u", c.value ? nlohmann::json(*c.value) : nlohmann::json()},
                                   {"deviation", c.deviation}});
  return nlohmann::json{{"D", depth}, {"tol", tol}, {"components", comps}};
}

PlateauAssignment plateau_assign(const Field& u, const EquilibriumSet& K, double D, double tol,
                                 const DepthMap& depths) {
  const GridDomain& dom = u.domain();
  if (!dom.same_as(*depths.dom)) throw DomainMismatch("depth map built for another domain");

  auto deep = [&](std::int64_t c) {
    return dom.tag(c) != CellTag::Exterior && depths.depth[static_cast<std::size_t>(c)] > D;
  };

  PlateauAssignment out;
  out.depth = D;
  out.tol = tol;
  std::vector<int> comp(static_cast<std::size_t>(dom.cell_count()), -1);
  int next_id = 0;
  for (std::int64_t c0 = 0; c0 < dom.cell_count(); ++c0) {
    if (!deep(c0) || comp[static_cast<std::size_t>(c0)] >= 0) continue;
    // flood fill (4-neighbor)
    std::deque<std::int64_t> queue{c0};
    comp[static_cast<std::size_t>(c0)] = next_id;
    std::vector<std::int64_t> members;
    while (!queue.empty()) {
      std::int64_t c = queue.front();
      queue.pop_front();
      members.push_back(c);
      for (int a = 0; a < dom.dim(); ++a) {
        for (int dir : {-1, +1}) {
          std::int64_t nb = dom.neighbor(c, a, dir);
          if (nb < 0 || !deep(nb) || comp[static_cast<std::size_t>(nb)] >= 0) continue;
          comp[static_cast<std::size_t>(nb)] = next_id;
          queue.push_back(nb);
        }
      }
    }

    PlateauComponent pc;
    pc.id = next_id++;
    pc.size = static_cast<std::int64_t>(members.size());
    double best_dev = std::numeric_limits<double>::infinity();
    double second_dev = best_dev;
    int best_k = 0;
    for (std::size_t ki = 0; ki < K.values.size(); ++ki) {
      double dev = 0.0;
      for (std::int64_t c : members)
        dev = std::max(dev, std::fabs(u.at_cell(c) - K.values[ki]));
      if (dev < best_dev) {
        second_dev = best_dev;
        best_dev = dev;
        best_k = static_cast<int>(ki);
      } else {
        second_dev = std::min(second_dev, dev);
      }
    }
    pc.deviation = best_dev;
    if (best_dev <= tol && second_dev > tol)
      pc.value = static_cast<int>(std::lround(K.values[static_cast<std::size_t>(best_k)]));
    out.components.push_back(pc);
  }
  if (out.components.empty()) throw EmptyRegion("no cells deeper than D");
  return out;
}

double subharmonic_defect(const Field& u, const DepthMap& depths) {
  const GridDomain& dom = u.domain();
  if (dom.dim() != 2) throw Error("subharmonic defect is defined on d = 2 domains");
  if (!dom.same_as(*depths.dom)) throw DomainMismatch("depth map built for another domain");
  const double inv_h2 = 1.0 / (dom.spacing() * dom.spacing());
  double worst = std::numeric_limits<double>::infinity();
  for (std::int64_t c = 0; c < dom.cell_count(); ++c) {
    if (dom.tag(c) != CellTag::Interior) continue;
    if (depths.depth[static_cast<std::size_t>(c)] < 2.0) continue;
    double uc = u.at_cell(c);
    double lap = -4.0 * uc * uc;
    for (int a = 0; a < 2; ++a) {
      double um = u.at_cell(dom.neighbor(c, a, -1));
      double up = u.at_cell(dom.neighbor(c, a, +1));
      lap += um * um + up * up;
    }
    worst = std::min(worst, lap * inv_h2);
  }
  return worst;  // +inf when no cell is deep enough
}

GradientReport interior_gradient_check(const Field& u, double D, const DepthMap& depths) {
  const GridDomain& dom = u.domain();
  if (!dom.same_as(*depths.dom)) throw DomainMismatch("depth map built for another domain");
  const double inv2h = 1.0 / (2.0 * dom.spacing());
  GradientReport rep;
  rep.depth = D;
  for (std::int64_t c = 0; c < dom.cell_count(); ++c) {
    if (dom.tag(c) != CellTag::Interior) continue;
    if (depths.depth[static_cast<std::size_t>(c)] < D) continue;
    ++rep.cells;
    for (int a = 0; a < dom.dim(); ++a) {
      double g = (u.at_cell(dom.neighbor(c, a, +1)) - u.at_cell(dom.neighbor(c, a, -1))) * inv2h;
      rep.max_grad = std::max(rep.max_grad, std::fabs(g));
    }
  }
  if (rep.cells == 0) throw EmptyRegion("no interior cells at the requested depth");
  return rep;
}

double trajectory_shift_closure_check(const EllipticProblem& p, const Field& u,
                                      const std::array<long, 2>& shift_cells) {
  const GridDomain& dom = *p.domain();
  require_same_domain(u, Field(p.domain()));
  const int dim = dom.dim();
  auto shifted = [&](std::int64_t c) -> std::int64_t {
    auto cc = dom.coords(c);
    cc[0] += static_cast<int>(shift_cells[0]);
    if (dim > 1) cc[1] += static_cast<int>(shift_cells[1]);
    if (cc[0] < 0 || cc[0] >= dom.extents()[0]) return -1;
    if (dim > 1 && (cc[1] < 0 || cc[1] >= dom.extents()[1])) return -1;
    return dom.index(cc);
  };

  // Mask semi-invariance. A bbox face touched by non-Exterior cells is a truncation
  // face (the domain continues past the window there); a face separated from the
  // domain by an Exterior margin is a real wall. Shifted cells may exit the window
  // only through truncation faces, and inside the window may never land on an
  // Exterior cell (a hole, a notch, the gap outside a curved wall).
  std::array<std::array<bool, 2>, 2> face_open{{{false, false}, {false, false}}};
  for (std::int64_t c = 0; c < dom.cell_count(); ++c) {
    if (dom.tag(c) == CellTag::Exterior) continue;
    auto cc = dom.coords(c);
    for (int a = 0; a < dim; ++a) {
      if (cc[static_cast<std::size_t>(a)] == 0) face_open[static_cast<std::size_t>(a)][0] = true;
      if (cc[static_cast<std::size_t>(a)] == dom.extents()[static_cast<std::size_t>(a)] - 1)
        face_open[static_cast<std::size_t>(a)][1] = true;
    }
  }
  for (std::int64_t c = 0; c < dom.cell_count(); ++c) {
    if (dom.tag(c) == CellTag::Exterior) continue;
    auto cc = dom.coords(c);
    bool exits = false;
    for (int a = 0; a < dim; ++a) {
      long v = cc[static_cast<std::size_t>(a)] + (a == 0 ? shift_cells[0] : shift_cells[1]);
      if (v < 0) {
        if (!face_open[static_cast<std::size_t>(a)][0])
          throw NotSemiInvariant("shift exits through a real wall");
        exits = true;
      } else if (v >= dom.extents()[static_cast<std::size_t>(a)]) {
        if (!face_open[static_cast<std::size_t>(a)][1])
          throw NotSemiInvariant("shift exits through a real wall");
        exits = true;
      }
    }
    if (exits) continue;
    std::int64_t sc = shifted(c);
    if (sc >= 0 && dom.tag(sc) == CellTag::Exterior)
      throw NotSemiInvariant("mask is not semi-invariant under this shift");
  }

  const double inv_h2 = 1.0 / (dom.spacing() * dom.spacing());
  double worst = 0.0;
  for (std::int64_t c = 0; c < dom.cell_count(); ++c) {
    std::int64_t sc = shifted(c);
    if (sc < 0 || dom.tag(sc) != CellTag::Interior) continue;
    // shifted stencil must stay in the window
    bool ok = true;
    double lap = -2.0 * dim * u.at_cell(sc);
    for (int a = 0; a < dim && ok; ++a) {
      for (int dir : {-1, +1}) {
        std::int64_t nb = dom.neighbor(c, a, dir);
        std::int64_t snb = nb < 0 ? -1 : shifted(nb);
        if (snb < 0) {
          ok = false;
          break;
        }
        lap += u.at_cell(snb);
      }
    }
    if (!ok) continue;
    double r = lap * inv_h2 - p.nonlinearity()(u.at_cell(sc));
    worst = std::max(worst, std::fabs(r));
  }
  return worst;
}

Field resample_nearest(const Field& coarse, const DomainPtr& fine) {
  const GridDomain& cd = coarse.domain();
  Field out(fine, 0.0);
  for (std::int64_t c = 0; c < fine->cell_count(); ++c) {
    if (fine->tag(c) == CellTag::Exterior) continue;
    std::int64_t src = cd.cell_at(fine->center(c));
    if (src >= 0 && cd.tag(src) != CellTag::Exterior)
      out[fine->value_index(c)] = coarse.at_cell(src);
  }
  return out;
}

// --- external schema ---

namespace {

void reject_unknown(const nlohmann::json& j, std::initializer_list<const char*> known,
                    const std::string& scope) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known)
      if (it.key() == k) ok = true;
    if (!ok) throw ConfigError("unknown key \"" + it.key() + "\" in " + scope, it.key());
  }
}

}  // namespace

EllipticSpec elliptic_from_json(const nlohmann::json& spec) {
  reject_unknown(spec, {"domain", "spacing", "nonlinearity", "boundary_data", "solver"}, "problem");
  double spacing = spec.at("spacing").get<double>();

  const auto& dj = spec.at("domain");
  reject_unknown(dj, {"kind", "params"}, "domain");
  std::string kind = dj.at("kind").get<std::string>();
  nlohmann::json dp = dj.value("params", nlohmann::json::object());
  DomainPtr dom;
  if (kind == "annulus") {
    reject_unknown(dp, {"r_inner", "r_outer"}, "domain.params");
    dom = make_annulus(dp.at("r_inner").get<double>(), dp.at("r_outer").get<double>(), spacing);
  } else if (kind == "strip") {
    reject_unknown(dp, {"length", "width"}, "domain.params");
    dom = make_strip(dp.at("length").get<double>(), dp.at("width").get<double>(), spacing);
  } else if (kind == "dumbbell") {
    reject_unknown(dp, {"square", "corridor_width", "corridor_length"}, "domain.params");
    dom = make_dumbbell(dp.at("square").get<double>(), dp.at("corridor_width").get<double>(),
                        dp.at("corridor_length").get<double>(), spacing);
  } else if (kind == "interval") {
    reject_unknown(dp, {"length"}, "domain.params");
    dom = make_interval(dp.at("length").get<double>(), spacing);
  } else if (kind == "mask_file") {
    reject_unknown(dp, {"path"}, "domain.params");
    dom = GridDomain::from_descriptor(
        nlohmann::json::parse(read_text_file(dp.at("path").get<std::string>())));
  } else {
    throw ConfigError("unknown domain kind \"" + kind + "\"", "domain.kind");
  }

  const auto& nj = spec.at("nonlinearity");
  reject_unknown(nj, {"kind", "N", "coeffs"}, "nonlinearity");
  std::string nk = nj.at("kind").get<std::string>();
  Nonlinearity f = Nonlinearity::cubic();
  if (nk == "cubic") {
  } else if (nk == "plateau") {
    f = Nonlinearity::plateau_poly(nj.at("N").get<int>());
  } else if (nk == "custom") {
    f = Nonlinearity::custom(nj.at("coeffs").get<std::vector<double>>());
  } else {
    throw ConfigError("unknown nonlinearity kind \"" + nk + "\"", "nonlinearity.kind");
  }

  const auto& bj = spec.at("boundary_data");
  reject_unknown(bj, {"kind", "params"}, "boundary_data");
  std::string bk = bj.at("kind").get<std::string>();
  nlohmann::json bp = bj.value("params", nlohmann::json::object());
  std::vector<double> bvals;
  if (bk == "constant") {
    reject_unknown(bp, {"value"}, "boundary_data.params");
    bvals = boundary_constant(*dom, bp.at("value").get<double>());
  } else if (bk == "piecewise") {
    reject_unknown(bp, {"axis", "threshold", "low", "high"}, "boundary_data.params");
    bvals = boundary_piecewise(*dom, bp.at("axis").get<int>(), bp.at("threshold").get<double>(),
                               bp.at("low").get<double>(), bp.at("high").get<double>());
  } else if (bk == "fourier") {
    reject_unknown(bp, {"mean", "harmonics", "range"}, "boundary_data.params");
    auto range = bp.at("range").get<std::array<double, 2>>();
    std::vector<std::array<double, 3>> harmonics;
    for (const auto& h : bp.at("harmonics")) harmonics.push_back(h.get<std::array<double, 3>>());
    bvals = boundary_fourier(*dom, bp.value("mean", 0.0), harmonics, range[0], range[1]);
  } else {
    throw ConfigError("unknown boundary data kind \"" + bk + "\"", "boundary_data.kind");
  }

  SolveOptions opts;
  if (spec.contains("solver")) {
    const auto& sj = spec.at("solver");
    reject_unknown(sj, {"dt", "newton_tol", "max_iters"}, "solver");
    opts.dtau = sj.value("dt", opts.dtau);
    opts.newton_tol = sj.value("newton_tol", opts.newton_tol);
    opts.max_newton = sj.value("max_iters", opts.max_newton);
  }

  return EllipticSpec{EllipticProblem(dom, std::move(bvals), std::move(f)), opts};
}

}  // namespace attrlab
