#pragma once

#include <string>
#include <vector>

#include "attrlab/core/errors.hpp"

namespace attrlab {

// Polynomial reaction term f(u). Kinds:
//   Cubic:          f(u) = u^3 - u
//   PlateauPoly(N): f(u) = u * prod_{k=1..N} (u - k)^2   (integer coefficients)
//   Custom:         caller-supplied coefficients, ascending powers.
// The superlinearity certificate f(u).u >= -C + |u|^{2+eps} is validated on demand:
// by dense sampling on |u| <= 100 and by the leading coefficient sign beyond.
class Nonlinearity {
 public:
  enum class Kind { Cubic, PlateauPoly, Custom };

  struct Certificate {
    double C = 0.0;
    double eps = 1.0;
  };

  static Nonlinearity cubic();
  static Nonlinearity plateau_poly(int N);
  static Nonlinearity custom(std::vector<double> coeffs);

  double operator()(double u) const;
  double derivative(double u) const;

  Kind kind() const { return kind_; }
  int plateau_n() const { return plateau_n_; }
  const std::vector<double>& coefficients() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  const Certificate& superlin_certificate() const { return cert_; }
  void set_certificate(Certificate c) { cert_ = c; }

  // Throws Error when the certificate fails the sampled/leading-coefficient check.
  void validate_superlinearity() const;

  // Upper bound for |f'| on [lo, hi]: dense sampling plus endpoints, 5% headroom.
  double max_abs_derivative(double lo, double hi) const;

  std::string describe() const;

 private:
  Kind kind_ = Kind::Custom;
  int plateau_n_ = 0;
  std::vector<double> coeffs_;
  std::vector<double> dcoeffs_;
  Certificate cert_;

  void finish_setup();
};

// Real roots of f (the equilibrium values). Exact lists for Cubic/PlateauPoly;
// Durand-Kerner + Newton polish for Custom, verified to |f(v)| <= 1e-12.
// Throws UnsupportedNonlinearity when extraction fails.
std::vector<double> real_roots(const Nonlinearity& f);

}  // namespace attrlab
