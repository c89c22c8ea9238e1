#pragma once

#include "attrlab/engine/semigroup.hpp"

namespace attrlab {

// Reference semigroups with known attractors, used by validation experiments.

// S(h) x = exp(-(h_1 + ... + h_m)) x on C = R_+^m, scalar phase. Attractor {0}.
SemigroupHandle linear_contraction(int m, double seed_norm_bound);

// S(t, s) = rotate(s) o radial logistic flow r' = r (1 - r^2) for time t,
// C = R_+ x R, planar phase. Attractor: the closed unit disk.
SemigroupHandle rotation_contraction(double seed_norm_bound);

// Radius of the radial logistic flow after time t, stable for all t >= 0.
double logistic_radius(double r0, double t);

}  // namespace attrlab
