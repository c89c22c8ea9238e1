#pragma once

#include <limits>
#include <string>

namespace attrlab {

// Designated family of "bounded" sets. Membership of a finite sample is decided
// extensionally: every member must have sup-norm <= norm_bound and, when a constraint
// is set, satisfy it up to residual_tol (the residual hook lives on the semigroup handle).
struct Bornology {
  enum class Constraint { None, SolvesElliptic };

  double norm_bound = std::numeric_limits<double>::infinity();
  Constraint constraint = Constraint::None;
  std::string problem_id;
  double residual_tol = 1e-8;

  static Bornology norm_bounded(double bound) {
    Bornology b;
    b.norm_bound = bound;
    return b;
  }
  static Bornology unrestricted() { return Bornology{}; }
  static Bornology elliptic_solutions(double bound, std::string id, double tol = 1e-8) {
    Bornology b;
    b.norm_bound = bound;
    b.constraint = Constraint::SolvesElliptic;
    b.problem_id = std::move(id);
    b.residual_tol = tol;
    return b;
  }

  bool admits_norm(double sup_norm) const { return sup_norm <= norm_bound; }
};

}  // namespace attrlab
