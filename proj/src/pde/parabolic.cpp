#include "attrlab/pde/parabolic.hpp"

#include <cmath>

#include "attrlab/core/parallel.hpp"

namespace attrlab {

namespace {

// Inverse kernel of the periodic operator (I - dt * D_axis), D = second difference / h^2.
// g[d] = (r^d + r^{N-d}) / (s (1 - r^N)), r = (1+2a-s)/(2a), s = sqrt(1+4a), a = dt/h^2.
// Truncated at radius W with r^W <= 1e-16 and renormalized to unit row sum.
struct DiffusionKernel {
  std::vector<double> g;  // g[0..W]
  int W = 0;

  static DiffusionKernel build(double dt, double h, int n) {
    DiffusionKernel k;
    double a = dt / (h * h);
    if (a <= 0.0) {
      k.g = {1.0};
      return k;
    }
    double s = std::sqrt(1.0 + 4.0 * a);
    double r = (1.0 + 2.0 * a - s) / (2.0 * a);
    int W = static_cast<int>(std::ceil(std::log(1e-16) / std::log(r)));
    W = std::min(W, n / 2);
    double rn = std::pow(r, n);
    double norm = 1.0 / (s * (1.0 - rn));
    k.W = W;
    k.g.resize(static_cast<std::size_t>(W) + 1);
    for (int d = 0; d <= W; ++d)
      k.g[static_cast<std::size_t>(d)] = norm * (std::pow(r, d) + std::pow(r, n - d));
    // Renormalize so constants are preserved to roundoff.
    double sum = k.g[0];
    for (int d = 1; d <= W; ++d) sum += 2.0 * k.g[static_cast<std::size_t>(d)];
    k.g[0] += 1.0 - sum;
    return k;
  }
};

// Symmetric cyclic convolution along one axis; fixed pairing order makes the result
// commute exactly with cyclic shifts of the input.
void convolve_axis(const DiffusionKernel& k, const double* in, double* out, int n, int stride) {
  const int W = k.W;
  const double* g = k.g.data();
  for (int i = 0; i < n; ++i) {
    double acc = g[0] * in[static_cast<std::ptrdiff_t>(i) * stride];
    for (int d = 1; d <= W; ++d) {
      int lo = i - d;
      if (lo < 0) lo += n;
      int hi = i + d;
      if (hi >= n) hi -= n;
      if (2 * d == n) {
        acc += g[d] * in[static_cast<std::ptrdiff_t>(lo) * stride];
      } else {
        acc += g[d] * (in[static_cast<std::ptrdiff_t>(lo) * stride] +
                       in[static_cast<std::ptrdiff_t>(hi) * stride]);
      }
    }
    out[static_cast<std::ptrdiff_t>(i) * stride] = acc;
  }
}

// One RK4 step of y' = -f(y), applied pointwise.
inline double rk4_reaction(const Nonlinearity& f, double y, double dt) {
  double k1 = -f(y);
  double k2 = -f(y + 0.5 * dt * k1);
  double k3 = -f(y + 0.5 * dt * k2);
  double k4 = -f(y + dt * k3);
  return y + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

ParabolicProblem::ParabolicProblem(DomainPtr dom, Nonlinearity nonlinearity, double step)
    : domain(std::move(dom)), f(std::move(nonlinearity)), dt(step) {
  if (!(dt > 0.0)) throw Error("parabolic time step must be positive");
  for (int a = 0; a < domain->dim(); ++a)
    if (!domain->periodic(a)) throw Error("parabolic lab needs a fully periodic box");
  f.validate_superlinearity();
}

Field evolve(const ParabolicProblem& p, const Field& u0, double t) {
  if (t < 0.0) throw TimeOutsideCone("parabolic evolution needs t >= 0");
  require_same_domain(u0, Field(p.domain));
  if (!u0.finite()) throw NonFiniteState("initial state is not finite", 0);
  if (t == 0.0) return u0;

  const long n_steps = std::max(1l, std::lround(t / p.dt));
  const double dt = t / static_cast<double>(n_steps);
  const GridDomain& dom = *p.domain;
  const int dim = dom.dim();
  const int nx = dom.extents()[0];
  const int ny = dim > 1 ? dom.extents()[1] : 1;
  const double h = dom.spacing();

  DiffusionKernel kernel = DiffusionKernel::build(dt, h, nx);
  DiffusionKernel kernel_y = dim > 1 ? DiffusionKernel::build(dt, h, ny) : kernel;

  Field u = u0;
  std::vector<double> scratch(u.values().size());

  for (long step = 0; step < n_steps; ++step) {
    // Explicit reaction, RK4 with substeps tied to the current stiffness.
    double sup = u.sup_norm();
    if (!std::isfinite(sup)) throw NonFiniteState("state diverged", step);
    double lambda = p.f.max_abs_derivative(-sup - 0.1, sup + 0.1);
    long m = std::max(1l, std::lround(std::ceil(dt * lambda / 0.02)));
    m = std::min(m, 2000000l);
    const double dts = dt / static_cast<double>(m);
    for (long sub = 0; sub < m; ++sub)
      for (double& y : u.values()) y = rk4_reaction(p.f, y, dts);
    if (!u.finite()) throw NonFiniteState("reaction step diverged", step);

    // Implicit diffusion, one exact-kernel convolution per axis.
    if (dim == 1) {
      convolve_axis(kernel, u.values().data(), scratch.data(), nx, 1);
      u.values().swap(scratch);
    } else {
      double* v = u.values().data();
      double* w = scratch.data();
      for (int j = 0; j < ny; ++j) convolve_axis(kernel, v + j, w + j, nx, ny);
      for (int i = 0; i < nx; ++i)
        convolve_axis(kernel_y, w + static_cast<std::ptrdiff_t>(i) * ny,
                      v + static_cast<std::ptrdiff_t>(i) * ny, ny, 1);
    }
  }
  if (!u.finite()) throw NonFiniteState("state diverged", n_steps);
  return u;
}

Field shift_field(const Field& u, const std::array<long, 2>& cells) {
  const GridDomain& dom = u.domain();
  const int dim = dom.dim();
  for (int a = 0; a < dim; ++a)
    if (cells[static_cast<std::size_t>(a)] != 0 && !dom.periodic(a))
      throw NonPeriodicAxis("shift along a non-periodic axis");

  const int nx = dom.extents()[0];
  const int ny = dim > 1 ? dom.extents()[1] : 1;
  auto wrap = [](long v, int n) { return static_cast<int>(((v % n) + n) % n); };
  const int sx = wrap(cells[0], nx);
  const int sy = dim > 1 ? wrap(cells[1], ny) : 0;

  Field out(u.domain_ptr());
  const auto& in = u.values();
  auto& ov = out.values();
  // (T(s)u)(x) = u(x + s)
  for (int i = 0; i < nx; ++i) {
    int si = i + sx >= nx ? i + sx - nx : i + sx;
    if (dim == 1) {
      ov[static_cast<std::size_t>(i)] = in[static_cast<std::size_t>(si)];
      continue;
    }
    for (int j = 0; j < ny; ++j) {
      int sj = j + sy >= ny ? j + sy - ny : j + sy;
      ov[static_cast<std::size_t>(i) * ny + j] = in[static_cast<std::size_t>(si) * ny + sj];
    }
  }
  return out;
}

Field extended_apply(const ParabolicProblem& p, const TimePoint& h, const Field& u) {
  const int dim = p.domain->dim();
  if (h.dim() != dim + 1) throw DimensionMismatch("extended time point needs dim d+1");
  if (h[0] < 0.0) throw TimeOutsideCone("extended semigroup needs t >= 0");
  std::array<long, 2> cells{0, 0};
  for (int a = 0; a < dim; ++a)
    cells[static_cast<std::size_t>(a)] = std::lround(h[a + 1] / p.domain->spacing());
  return shift_field(evolve(p, u, h[0]), cells);
}

SemigroupHandle extended_semigroup(const ParabolicProblem& p, double seed_norm_bound) {
  SemigroupHandle sg;
  sg.arrow = TimeArrow::whole_cone(Cone::orthant_product(1, p.domain->dim()));
  sg.phase = FieldPhase{p.domain};
  sg.bornology = Bornology::norm_bounded(seed_norm_bound);
  sg.metric = loc_field_metric(LocMetric::default_for(p.domain));
  sg.apply = [p](const TimePoint& h, const PhasePoint& u) -> PhasePoint {
    return extended_apply(p, h, std::get<Field>(u));
  };
  return sg;
}

double comparison_bound(double t) { return 1.0 / std::sqrt(1.0 - std::exp(-2.0 * t)); }

nlohmann::json DissipativeReport::to_json() const {
  return nlohmann::json{
      {"max_norm", max_norm}, {"bound", bound}, {"tol", tol}, {"t", t}, {"pass", pass}};
}

DissipativeReport dissipative_check(const ParabolicProblem& p, const std::vector<Field>& seeds,
                                    double t, double tol, int threads) {
  if (p.f.kind() != Nonlinearity::Kind::Cubic)
    throw Error("dissipative_check requires the cubic nonlinearity");
  if (t < 1.0) throw Error("dissipative_check needs t >= 1");
  std::vector<double> norms(seeds.size(), 0.0);
  parallel_for(static_cast<std::int64_t>(seeds.size()), threads, [&](std::int64_t i) {
    norms[static_cast<std::size_t>(i)] = evolve(p, seeds[static_cast<std::size_t>(i)], t).sup_norm();
  });
  DissipativeReport rep;
  rep.t = t;
  rep.tol = tol;
  rep.bound = comparison_bound(t);
  for (double n : norms) rep.max_norm = std::max(rep.max_norm, n);
  rep.pass = rep.max_norm <= rep.bound + tol;
  return rep;
}

double max_gradient_periodic(const Field& u) {
  const GridDomain& dom = u.domain();
  const double inv2h = 1.0 / (2.0 * dom.spacing());
  double m = 0.0;
  for (std::int64_t cell = 0; cell < dom.cell_count(); ++cell) {
    for (int a = 0; a < dom.dim(); ++a) {
      std::int64_t lo = dom.neighbor(cell, a, -1);
      std::int64_t hi = dom.neighbor(cell, a, +1);
      double g = (u.at_cell(hi) - u.at_cell(lo)) * inv2h;
      m = std::max(m, std::fabs(g));
    }
  }
  return m;
}

nlohmann::json SmoothingReport::to_json() const {
  return nlohmann::json{{"max_grad", max_grad}, {"t", t}};
}

SmoothingReport smoothing_check(const ParabolicProblem& p, const std::vector<Field>& seeds,
                                double t, int threads) {
  if (t < 2.0) throw Error("smoothing_check needs t >= 2");
  std::vector<double> grads(seeds.size(), 0.0);
  parallel_for(static_cast<std::int64_t>(seeds.size()), threads, [&](std::int64_t i) {
    grads[static_cast<std::size_t>(i)] =
        max_gradient_periodic(evolve(p, seeds[static_cast<std::size_t>(i)], t));
  });
  SmoothingReport rep;
  rep.t = t;
  for (double g : grads) rep.max_grad = std::max(rep.max_grad, g);
  return rep;
}

}  // namespace attrlab
