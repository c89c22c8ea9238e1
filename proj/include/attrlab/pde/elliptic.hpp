#pragma once

#include <optional>

#include "json.hpp"

#include "attrlab/core/distance_transform.hpp"
#include "attrlab/engine/rate_profile.hpp"
#include "attrlab/pde/nonlinearity.hpp"
#include "attrlab/pde/stencil_cg.hpp"

namespace attrlab {

// Nonlinear Dirichlet problem Lap u = f(u) in Omega, u = data on the Boundary cells.
class EllipticProblem {
 public:
  EllipticProblem(DomainPtr dom, std::vector<double> boundary_by_value, Nonlinearity f,
                  std::string id = "elliptic");

  // Boundary values from a function of the boundary-cell center.
  static EllipticProblem with_data(DomainPtr dom, Nonlinearity f,
                                   const std::function<double(const std::array<double, 2>&)>& data,
                                   std::string id = "elliptic");

  const DomainPtr& domain() const { return dom_; }
  const Nonlinearity& nonlinearity() const { return f_; }
  const std::vector<double>& boundary_by_value() const { return bvals_; }
  const std::string& id() const { return id_; }
  double data_min() const { return data_min_; }
  double data_max() const { return data_max_; }

 private:
  DomainPtr dom_;
  std::vector<double> bvals_;  // per value index, meaningful at Boundary cells
  Nonlinearity f_;
  std::string id_;
  double data_min_ = 0.0, data_max_ = 0.0;
};

struct InitStrategy {
  enum class Kind { HarmonicExtension, ConstantGuess, Given };
  Kind kind = Kind::HarmonicExtension;
  double constant = 0.0;
  std::optional<Field> given;

  static InitStrategy harmonic() { return {}; }
  static InitStrategy constant_guess(double c) {
    InitStrategy s;
    s.kind = Kind::ConstantGuess;
    s.constant = c;
    return s;
  }
  static InitStrategy given_field(Field f) {
    InitStrategy s;
    s.kind = Kind::Given;
    s.given = std::move(f);
    return s;
  }
};

struct SolveOptions {
  double dtau = 0.25;          // pseudo-time step of the sigma-damped implicit stage
  long max_pseudo = 4000;
  double switch_abs = 0.5;     // hand over to Newton at max(switch_abs, switch_rel*res0)
  double switch_rel = 0.01;
  double newton_tol = 1e-9;    // sup-norm residual target
  int max_newton = 80;
  int max_halvings = 30;
  double cg_tol = 1e-10;
  int cg_max_iters = 60000;
};

struct SolveInfo {
  long pseudo_steps = 0;
  int newton_iters = 0;
  long cg_iterations = 0;
  double residual = 0.0;
  std::vector<double> history;  // sup-norm residuals, pseudo stage then Newton stage
};

// Pseudo-time continuation to near-stationarity, then damped Newton with matrix-free
// CG solves. Throws NoConvergence (residual history attached) and NonFiniteState.
Field solve_elliptic(const EllipticProblem& p, const InitStrategy& init,
                     const SolveOptions& opts = {}, SolveInfo* info = nullptr);

// Solver-path residual sup-norm (uses the interior-system machinery).
double residual_sup(const EllipticProblem& p, const Field& u);

// Independent single-pass stencil evaluation of the same residual; certification oracle.
double verify_residual(const EllipticProblem& p, const Field& u);

// Boundary depth map shared by the interior-estimate operations.
struct DepthMap {
  DomainPtr dom;
  std::vector<double> depth;
  static DepthMap build(DomainPtr d) {
    std::vector<double> m = boundary_distance_map(*d);
    return DepthMap{std::move(d), std::move(m)};
  }
};

struct EquilibriumSet {
  std::vector<double> values;  // sorted real roots of f
  static EquilibriumSet from(const Nonlinearity& f);
};

// Windowed sup distance of the solution to the nearest equilibrium over the discrete
// unit ball, maximized over the cells of each depth band [D, D+1).
RateProfile attraction_profile_elliptic(const Field& u, const EquilibriumSet& K,
                                        const std::vector<double>& depth_bands,
                                        const DepthMap& depths);

// Sup over cells with depth in [lo, hi) of the windowed distance (band helper; also
// used for the one-cell-slack monotonicity check).
std::optional<double> band_sup_distance(const Field& u, const EquilibriumSet& K, double lo,
                                        double hi, const DepthMap& depths);

struct PlateauComponent {
  int id = 0;
  std::int64_t size = 0;
  std::optional<int> value;  // resolved N_u
  double deviation = 0.0;    // sup |u - best root| over the component
};

struct PlateauAssignment {
  double depth = 0.0;
  double tol = 0.0;
  std::vector<PlateauComponent> components;
  nlohmann::json to_json() const;
};

// Connected components (4-neighbor) of the cells deeper than D; per component the
// unique equilibrium within tol, or Unresolved. Throws EmptyRegion.
PlateauAssignment plateau_assign(const Field& u, const EquilibriumSet& K, double D, double tol,
                                 const DepthMap& depths);

// Min over Interior cells of depth >= 2 of Lap_h(u^2); d = 2 domains only.
// Nonnegative in the continuum; the discrete minimum may dip slightly below zero.
double subharmonic_defect(const Field& u, const DepthMap& depths);

struct GradientReport {
  double max_grad = 0.0;
  double depth = 0.0;
  std::int64_t cells = 0;
};

// Max centered-difference gradient over cells of depth >= D. Throws EmptyRegion.
GradientReport interior_gradient_check(const Field& u, double D, const DepthMap& depths);

// Residual of the shifted solution over the shifted interior; witnesses the closure of
// the solution set under admissible translations. Throws NotSemiInvariant when the mask
// fails T(s)Omega inside Omega (shifts leaving the truncation window are allowed).
double trajectory_shift_closure_check(const EllipticProblem& p, const Field& u,
                                      const std::array<long, 2>& shift_cells);

// Nearest-cell resampling onto another grid of the same geometry; refinement inits.
Field resample_nearest(const Field& coarse, const DomainPtr& fine);

// --- external problem-spec schema ---

struct EllipticSpec {
  EllipticProblem problem;
  SolveOptions options;
};

// Parses {domain:{kind,params}, spacing, nonlinearity, boundary_data:{kind,params},
// solver:{dt,newton_tol,max_iters}}. Unknown keys raise ConfigError naming the key.
EllipticSpec elliptic_from_json(const nlohmann::json& spec);

}  // namespace attrlab
