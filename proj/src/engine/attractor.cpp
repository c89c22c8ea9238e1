#include "attrlab/engine/attractor.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "attrlab/core/parallel.hpp"

namespace attrlab {

nlohmann::json AttractorEstimate::to_json() const {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : points) pts.push_back(phase_to_json(p));
  return nlohmann::json{{"epsilon", epsilon},
                        {"depths_used", depths_used},
                        {"invariance_defect", invariance_defect},
                        {"max_observed_norm", max_observed_norm},
                        {"provenance", provenance},
                        {"points", pts}};
}

AttractorEstimate omega_estimate(const SemigroupHandle& sg, const std::vector<PhasePoint>& seeds,
                                 const std::vector<double>& depth_schedule, double eps,
                                 const OmegaOptions& opts) {
  if (seeds.empty() || depth_schedule.empty()) throw Error("omega_estimate needs seeds and depths");
  for (std::size_t i = 1; i < depth_schedule.size(); ++i)
    if (!(depth_schedule[i] > depth_schedule[i - 1]))
      throw Error("depth schedule must be strictly increasing");

  // Bornology gate on the seed sample.
  for (const auto& s : seeds) {
    if (!sg.bornology.admits_norm(phase_sup_norm(s)))
      throw Error("seed violates the bornology norm bound");
    if (sg.bornology.constraint == Bornology::Constraint::SolvesElliptic && sg.constraint_residual &&
        sg.constraint_residual(s) > sg.bornology.residual_tol)
      throw Error("seed violates the bornology constraint");
  }

  // Fail early (and deterministically) if the arrow cannot reach the deepest requested depth.
  (void)sg.arrow.deep_time(depth_schedule.back());

  // Probe times per depth; terminal states are collected for the deepest half.
  const std::size_t n_depths = depth_schedule.size();
  const std::size_t first_collected = n_depths - (n_depths + 1) / 2;
  std::vector<std::vector<TimePoint>> probes(n_depths);
  for (std::size_t di = 0; di < n_depths; ++di)
    probes[di] = sg.arrow.probe_times(depth_schedule[di], opts.probe_count);

  // Seeds are evolved in chunks; collected states are thinned chunk by chunk (the
  // canonical-representative rule of dedup_vec_states is merge-order independent).
  struct SeedResult {
    std::vector<PhasePoint> collected;
    double max_norm = 0.0;
  };
  std::vector<PhasePoint> collected;
  double max_norm = 0.0;
  std::atomic<long> nonfinite_at{-1};

  const std::int64_t n_seeds = static_cast<std::int64_t>(seeds.size());
  const std::int64_t chunk = opts.dedup_grid > 0.0 ? 8192 : n_seeds;
  for (std::int64_t begin = 0; begin < n_seeds; begin += chunk) {
    const std::int64_t count = std::min(chunk, n_seeds - begin);
    std::vector<SeedResult> results(static_cast<std::size_t>(count));
    parallel_for(count, opts.threads, [&](std::int64_t k) {
      auto& res = results[static_cast<std::size_t>(k)];
      const PhasePoint& seed = seeds[static_cast<std::size_t>(begin + k)];
      for (std::size_t di = 0; di < n_depths; ++di) {
        for (const TimePoint& h : probes[di]) {
          PhasePoint state = sg.apply(h, seed);
          if (!phase_finite(state)) {
            nonfinite_at.store(static_cast<long>(begin + k));
            return;
          }
          res.max_norm = std::max(res.max_norm, phase_sup_norm(state));
          if (di >= first_collected) res.collected.push_back(std::move(state));
        }
      }
    });
    if (nonfinite_at.load() >= 0)
      throw NonFiniteState("seed evolution diverged", nonfinite_at.load());
    for (auto& r : results) {
      for (auto& s : r.collected) collected.push_back(std::move(s));
      max_norm = std::max(max_norm, r.max_norm);
    }
    collected = dedup_vec_states(std::move(collected), opts.dedup_grid);
  }

  AttractorEstimate est;
  est.points = eps_net(std::move(collected), eps, sg.metric);
  est.epsilon = eps;
  est.depths_used.assign(depth_schedule.begin() + static_cast<std::ptrdiff_t>(first_collected),
                         depth_schedule.end());
  est.max_observed_norm = max_norm;
  est.provenance = std::to_string(seeds.size()) + " seeds, depths " +
                   std::to_string(depth_schedule.front()) + ".." +
                   std::to_string(depth_schedule.back());

  if (opts.record_invariance) {
    double worst = 0.0;
    for (const TimePoint& h : sg.arrow.probe_times(std::min(1.0, depth_schedule.front()), 3))
      worst = std::max(worst, strict_invariance_defect(est, sg, h));
    est.invariance_defect = worst;
  }
  return est;
}

double strict_invariance_defect(const AttractorEstimate& A, const SemigroupHandle& sg,
                                const TimePoint& h) {
  if (!sg.arrow.cone().contains(h)) throw TimeOutsideCone("probe time outside the cone");
  if (A.points.empty()) throw Error("empty attractor estimate");
  std::vector<PhasePoint> images;
  images.reserve(A.points.size());
  for (const auto& a : A.points) images.push_back(sg.apply(h, a));
  double forward = directed_hausdorff(images, A.points, sg.metric);
  double onto = directed_hausdorff(A.points, images, sg.metric);
  return std::max(forward, onto);
}

TargetSet TargetSet::of_points(std::vector<PhasePoint> pts, std::string desc) {
  TargetSet t;
  t.kind = Kind::Points;
  t.points = std::move(pts);
  t.description = std::move(desc);
  return t;
}

TargetSet TargetSet::norm_ball(double radius, std::string desc) {
  TargetSet t;
  t.kind = Kind::NormBall;
  t.radius = radius;
  t.description = std::move(desc);
  return t;
}

double TargetSet::distance(const PhasePoint& p, const PhaseMetric& metric) const {
  if (kind == Kind::Points) return distance_to_set(p, points, metric);
  double n = std::holds_alternative<VecState>(p)
                 ? euclidean(std::get<VecState>(p), VecState(std::get<VecState>(p).size(), 0.0))
                 : phase_sup_norm(p);
  return std::max(0.0, n - radius);
}

RateProfile attraction_profile(const SemigroupHandle& sg, const std::vector<PhasePoint>& seeds,
                               const TargetSet& target, const std::vector<double>& depth_schedule,
                               const OmegaOptions& opts) {
  if (seeds.empty() || depth_schedule.empty()) throw Error("attraction_profile needs seeds and depths");
  (void)sg.arrow.deep_time(depth_schedule.back());

  RateProfile profile;
  profile.target = target.description;
  for (double D : depth_schedule) {
    auto probes = sg.arrow.probe_times(D, opts.probe_count);
    std::vector<double> per_seed(seeds.size(), 0.0);
    parallel_for(static_cast<std::int64_t>(seeds.size()), opts.threads, [&](std::int64_t si) {
      double worst = 0.0;
      for (const TimePoint& h : probes) {
        PhasePoint state = sg.apply(h, seeds[static_cast<std::size_t>(si)]);
        if (!phase_finite(state)) throw NonFiniteState("evolution diverged", static_cast<long>(si));
        worst = std::max(worst, target.distance(state, sg.metric));
      }
      per_seed[static_cast<std::size_t>(si)] = worst;
    });
    double sup = 0.0;
    for (double d : per_seed) sup = std::max(sup, d);
    profile.entries.push_back({D, sup, std::nullopt});
  }
  return profile;
}

DirectionSpec DirectionSpec::make(const Cone& cone, const TimePoint& direction) {
  double n = direction.norm();
  if (!(n > 0.0)) throw DirectionNotInterior("zero direction");
  TimePoint l = direction * (1.0 / n);
  if (!cone.interior_contains(l, 0.0) || cone.boundary_distance(l) <= 1e-12)
    throw DirectionNotInterior("direction lies on the cone boundary");
  DirectionSpec d;
  d.l = l;
  d.kappa = cone.kind() == Cone::Kind::OrthantProduct && cone.nonneg_dims() > 0 ? l[0] : 0.0;
  return d;
}

SemigroupHandle directional_semigroup(const SemigroupHandle& sg, const DirectionSpec& l) {
  SemigroupHandle one;
  one.arrow = TimeArrow::whole_cone(Cone::orthant_product(1, 0));
  one.phase = sg.phase;
  one.bornology = sg.bornology;
  one.metric = sg.metric;
  one.constraint_residual = sg.constraint_residual;
  TimePoint dir = l.l;
  auto base_apply = sg.apply;
  one.apply = [base_apply, dir](const TimePoint& tau, const PhasePoint& u) {
    return base_apply(dir * tau[0], u);
  };
  return one;
}

AttractorEstimate directional_net(const SemigroupHandle& sg, const DirectionSpec& l,
                                  const std::vector<PhasePoint>& seeds,
                                  const std::vector<double>& tau_schedule, double eps,
                                  const OmegaOptions& opts) {
  return omega_estimate(directional_semigroup(sg, l), seeds, tau_schedule, eps, opts);
}

DirectionalReport directional_compare(const SemigroupHandle& sg, const DirectionSpec& l1,
                                      const DirectionSpec& l2,
                                      const std::vector<PhasePoint>& seeds,
                                      const std::vector<double>& tau_schedule, double eps,
                                      const AttractorEstimate* full, const OmegaOptions& opts) {
  DirectionalReport rep;
  rep.net1 = directional_net(sg, l1, seeds, tau_schedule, eps, opts);
  rep.net2 = directional_net(sg, l2, seeds, tau_schedule, eps, opts);
  rep.hausdorff_pair = hausdorff(rep.net1.points, rep.net2.points, sg.metric);
  if (full) {
    rep.hausdorff_1_full = hausdorff(rep.net1.points, full->points, sg.metric);
    rep.hausdorff_2_full = hausdorff(rep.net2.points, full->points, sg.metric);
  }
  double bound = sg.bornology.norm_bound;
  rep.norms_bounded = rep.net1.max_observed_norm <= bound && rep.net2.max_observed_norm <= bound;
  return rep;
}

BackwardExtension backward_extension(const AttractorEstimate& A, const SemigroupHandle& sg,
                                     const PhasePoint& u0, const TimePoint& h_step, int n_steps) {
  if (A.points.empty()) throw Error("empty attractor estimate");
  if (distance_to_set(u0, A.points, sg.metric) > 2.0 * A.epsilon)
    throw NotOnAttractor("start point farther than 2*eps from the estimate");
  if (!sg.arrow.cone().interior_contains(h_step, 0.0))
    throw TimeOutsideCone("backward step must be interior to the cone");

  // One-step images of every net point, reused across the chain.
  std::vector<PhasePoint> images;
  images.reserve(A.points.size());
  for (const auto& a : A.points) images.push_back(sg.apply(h_step, a));

  BackwardExtension ext;
  PhasePoint current = u0;
  for (int s = 0; s < n_steps; ++s) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < A.points.size(); ++i) {
      double d = sg.metric(images[i], current);
      if (d < best) {
        best = d;
        best_i = i;
      }
    }
    ext.max_defect = std::max(ext.max_defect, best);
    ext.chain.push_back(A.points[best_i]);
    current = A.points[best_i];
  }
  return ext;
}

}  // namespace attrlab
