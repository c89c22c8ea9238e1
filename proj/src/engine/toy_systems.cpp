#include "attrlab/engine/toy_systems.hpp"

#include <cmath>

namespace attrlab {

double logistic_radius(double r0, double t) {
  // r(t) = r0 / sqrt(e^{-2t} + r0^2 (1 - e^{-2t}))
  double e = std::exp(-2.0 * t);
  return r0 / std::sqrt(e + r0 * r0 * (1.0 - e));
}

SemigroupHandle linear_contraction(int m, double seed_norm_bound) {
  SemigroupHandle sg;
  sg.arrow = TimeArrow::whole_cone(Cone::orthant_product(m, 0));
  sg.phase = VectorPhase{1};
  sg.bornology = Bornology::norm_bounded(seed_norm_bound);
  sg.metric = euclidean_metric();
  sg.apply = [m](const TimePoint& h, const PhasePoint& u) -> PhasePoint {
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += h[i];
    const auto& x = std::get<VecState>(u);
    VecState y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = std::exp(-s) * x[i];
    return y;
  };
  return sg;
}

SemigroupHandle rotation_contraction(double seed_norm_bound) {
  SemigroupHandle sg;
  sg.arrow = TimeArrow::whole_cone(Cone::orthant_product(1, 1));
  sg.phase = VectorPhase{2};
  sg.bornology = Bornology::norm_bounded(seed_norm_bound);
  sg.metric = euclidean_metric();
  sg.apply = [](const TimePoint& h, const PhasePoint& u) -> PhasePoint {
    const auto& x = std::get<VecState>(u);
    double t = h[0], s = h[1];
    double r0 = std::hypot(x[0], x[1]);
    if (r0 == 0.0) return VecState{0.0, 0.0};
    double r = logistic_radius(r0, t);
    double theta = std::atan2(x[1], x[0]) + s;
    return VecState{r * std::cos(theta), r * std::sin(theta)};
  };
  return sg;
}

}  // namespace attrlab
