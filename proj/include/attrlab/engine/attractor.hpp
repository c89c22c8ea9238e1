#pragma once

#include <optional>
#include <string>

#include "attrlab/engine/eps_net.hpp"
#include "attrlab/engine/rate_profile.hpp"
#include "attrlab/engine/semigroup.hpp"

namespace attrlab {

// Finite eps-net approximation of an omega-limit set / attractor.
struct AttractorEstimate {
  std::vector<PhasePoint> points;
  double epsilon = 0.0;
  std::vector<double> depths_used;   // depths whose terminal states were collected
  double invariance_defect = 0.0;    // max strict-invariance defect over the probe times
  double max_observed_norm = 0.0;    // boundedness monitor over all evolutions
  std::string provenance;

  nlohmann::json to_json() const;
};

struct OmegaOptions {
  int probe_count = 9;      // deepest point + 8 deterministic perturbations
  int threads = 1;
  double dedup_grid = 0.0;  // optional pre-thinning of vector states before the net
  bool record_invariance = true;
};

// Evolves every seed by the probe times of each depth in depth_schedule, collects the
// terminal states of the deepest ceil(n/2) depths, and thins them to an eps-net.
// Throws NoDeepTime (propagated) and NonFiniteState.
AttractorEstimate omega_estimate(const SemigroupHandle& sg, const std::vector<PhasePoint>& seeds,
                                 const std::vector<double>& depth_schedule, double eps,
                                 const OmegaOptions& opts = {});

// max over a in A of d(S(h)a, A)  (forward inclusion defect), combined with
// max over a in A of d(a, S(h)A)  (surjectivity defect).
double strict_invariance_defect(const AttractorEstimate& A, const SemigroupHandle& sg,
                                const TimePoint& h);

// Target set for attraction profiles: either an explicit finite set of phase points or
// a norm ball (Euclidean norm for vector phases, sup-norm for fields).
struct TargetSet {
  enum class Kind { Points, NormBall };
  Kind kind = Kind::Points;
  std::vector<PhasePoint> points;
  double radius = 0.0;
  std::string description;

  static TargetSet of_points(std::vector<PhasePoint> pts, std::string desc);
  static TargetSet norm_ball(double radius, std::string desc);

  double distance(const PhasePoint& p, const PhaseMetric& metric) const;
};

// For each depth D: sup over seeds and probe times of depth >= D of the distance from
// the evolved state to the target.
RateProfile attraction_profile(const SemigroupHandle& sg, const std::vector<PhasePoint>& seeds,
                               const TargetSet& target, const std::vector<double>& depth_schedule,
                               const OmegaOptions& opts = {});

// Unit direction in the interior of the cone; kappa is the leading (temporal) component
// when the cone is an orthant product with constrained coordinates first.
struct DirectionSpec {
  TimePoint l;
  double kappa = 0.0;

  // Normalizes and validates interior membership; throws DirectionNotInterior.
  static DirectionSpec make(const Cone& cone, const TimePoint& direction);
};

// One-parameter semigroup S_l(tau) = S(tau * l) along an interior direction.
SemigroupHandle directional_semigroup(const SemigroupHandle& sg, const DirectionSpec& l);

AttractorEstimate directional_net(const SemigroupHandle& sg, const DirectionSpec& l,
                                  const std::vector<PhasePoint>& seeds,
                                  const std::vector<double>& tau_schedule, double eps,
                                  const OmegaOptions& opts = {});

struct DirectionalReport {
  double hausdorff_pair = 0.0;        // between the two directional nets
  double hausdorff_1_full = -1.0;     // -1 when no full estimate was supplied
  double hausdorff_2_full = -1.0;
  bool norms_bounded = true;          // boundedness hypothesis monitor
  AttractorEstimate net1, net2;
};

DirectionalReport directional_compare(const SemigroupHandle& sg, const DirectionSpec& l1,
                                      const DirectionSpec& l2,
                                      const std::vector<PhasePoint>& seeds,
                                      const std::vector<double>& tau_schedule, double eps,
                                      const AttractorEstimate* full = nullptr,
                                      const OmegaOptions& opts = {});

struct BackwardExtension {
  std::vector<PhasePoint> chain;  // predecessors, most recent first
  double max_defect = 0.0;
};

// Greedy nearest-predecessor chain inside the net: numerically witnesses that the
// estimate consists of complete trajectories. Throws NotOnAttractor when u0 is farther
// than 2*eps from the net.
BackwardExtension backward_extension(const AttractorEstimate& A, const SemigroupHandle& sg,
                                     const PhasePoint& u0, const TimePoint& h_step, int n_steps);

}  // namespace attrlab
