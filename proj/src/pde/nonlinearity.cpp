#include "attrlab/pde/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace attrlab {

namespace {

double horner(const std::vector<double>& c, double u) {
  double v = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * u + c[i];
  return v;
}

std::vector<double> differentiate(const std::vector<double>& c) {
  std::vector<double> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(static_cast<double>(i) * c[i]);
  if (d.empty()) d.push_back(0.0);
  return d;
}

std::vector<double> trim(std::vector<double> c) {
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
  return c;
}

}  // namespace

void Nonlinearity::finish_setup() {
  coeffs_ = trim(std::move(coeffs_));
  dcoeffs_ = differentiate(coeffs_);
  // Default certificate: eps = 1, C from the sampled deficit of f(u).u - |u|^3.
  double worst = 0.0;
  for (int i = -2000; i <= 2000; ++i) {
    double u = i * 0.05;
    double g = horner(coeffs_, u) * u - std::fabs(u) * u * u;  // f(u).u - |u|^3
    worst = std::min(worst, g);
  }
  cert_.eps = 1.0;
  cert_.C = -worst * 1.05 + 1e-9;
}

Nonlinearity Nonlinearity::cubic() {
  Nonlinearity f;
  f.kind_ = Kind::Cubic;
  f.coeffs_ = {0.0, -1.0, 0.0, 1.0};
  f.finish_setup();
  return f;
}

Nonlinearity Nonlinearity::plateau_poly(int N) {
  if (N < 1) throw UnsupportedNonlinearity("plateau polynomial needs N >= 1");
  Nonlinearity f;
  f.kind_ = Kind::PlateauPoly;
  f.plateau_n_ = N;
  // u * prod (u - k)^2, built by integer convolution (exact in double).
  std::vector<double> p{0.0, 1.0};  // u
  for (int k = 1; k <= N; ++k) {
    std::vector<double> factor{static_cast<double>(k) * k, -2.0 * k, 1.0};  // (u-k)^2
    std::vector<double> q(p.size() + 2, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = 0; j < 3; ++j) q[i + j] += p[i] * factor[j];
    p = std::move(q);
  }
  f.coeffs_ = std::move(p);
  f.finish_setup();
  return f;
}

Nonlinearity Nonlinearity::custom(std::vector<double> coeffs) {
  if (coeffs.empty()) throw UnsupportedNonlinearity("custom nonlinearity needs coefficients");
  Nonlinearity f;
  f.kind_ = Kind::Custom;
  f.coeffs_ = std::move(coeffs);
  f.finish_setup();
  return f;
}

double Nonlinearity::operator()(double u) const { return horner(coeffs_, u); }
double Nonlinearity::derivative(double u) const { return horner(dcoeffs_, u); }

void Nonlinearity::validate_superlinearity() const {
  // Beyond the sampling window the sign of the leading term must dominate:
  // f(u).u has even degree >= 2 + eps with a positive leading coefficient.
  const int deg = degree();
  if (deg < 2 || coeffs_.back() <= 0.0 || deg + 1 <= 2.0 + cert_.eps)
    throw Error("superlinearity certificate fails: leading term cannot dominate");
  for (int i = -4000; i <= 4000; ++i) {
    double u = i * 0.025;
    double lhs = horner(coeffs_, u) * u;
    double rhs = -cert_.C + std::pow(std::fabs(u), 2.0 + cert_.eps);
    if (lhs < rhs - 1e-9)
      throw Error("superlinearity certificate fails at u = " + std::to_string(u));
  }
}

double Nonlinearity::max_abs_derivative(double lo, double hi) const {
  if (lo > hi) std::swap(lo, hi);
  double m = std::max(std::fabs(horner(dcoeffs_, lo)), std::fabs(horner(dcoeffs_, hi)));
  const int n = 512;
  for (int i = 1; i < n; ++i) {
    double u = lo + (hi - lo) * i / n;
    m = std::max(m, std::fabs(horner(dcoeffs_, u)));
  }
  return 1.05 * m + 1e-12;
}

std::string Nonlinearity::describe() const {
  switch (kind_) {
    case Kind::Cubic:
      return "cubic";
    case Kind::PlateauPoly:
      return "plateau(" + std::to_string(plateau_n_) + ")";
    default:
      return "custom(degree " + std::to_string(degree()) + ")";
  }
}

std::vector<double> real_roots(const Nonlinearity& f) {
  if (f.kind() == Nonlinearity::Kind::Cubic) return {-1.0, 0.0, 1.0};
  if (f.kind() == Nonlinearity::Kind::PlateauPoly) {
    std::vector<double> r;
    for (int k = 0; k <= f.plateau_n(); ++k) r.push_back(static_cast<double>(k));
    return r;
  }

  std::vector<double> c = f.coefficients();
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
  if (c.size() < 2) throw UnsupportedNonlinearity("constant nonlinearity has no root structure");
  const std::size_t deg = c.size() - 1;
  for (auto& x : c) x /= f.coefficients().back();

  // Durand-Kerner on the monic polynomial.
  using C = std::complex<double>;
  auto eval = [&](C z) {
    C v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * z + c[i];
    return v;
  };
  std::vector<C> z(deg);
  for (std::size_t i = 0; i < deg; ++i)
    z[i] = std::polar(1.0 + 0.3 * static_cast<double>(i) / deg, 0.7 + 2.0 * M_PI * i / deg);
  for (int iter = 0; iter < 400; ++iter) {
    double moved = 0.0;
    for (std::size_t i = 0; i < deg; ++i) {
      C den = 1.0;
      for (std::size_t j = 0; j < deg; ++j)
        if (j != i) den *= z[i] - z[j];
      C step = eval(z[i]) / den;
      z[i] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-14) break;
  }

  std::vector<double> roots;
  for (const C& zi : z) {
    if (std::fabs(zi.imag()) > 1e-8) continue;
    double x = zi.real();
    // Newton polish against the original polynomial.
    for (int it = 0; it < 50; ++it) {
      double fv = f(x);
      double dv = f.derivative(x);
      if (fv == 0.0 || std::fabs(dv) < 1e-300) break;
      double nx = x - fv / dv;
      if (nx == x) break;
      x = nx;
    }
    if (std::fabs(f(x)) > 1e-12) continue;
    bool dup = false;
    for (double r : roots)
      if (std::fabs(r - x) < 1e-9) dup = true;
    if (!dup) roots.push_back(x);
  }
  if (roots.empty()) throw UnsupportedNonlinearity("no verifiable real roots extracted");
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace attrlab
