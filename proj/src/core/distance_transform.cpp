#include "attrlab/core/distance_transform.hpp"

#include <cmath>
#include <limits>

namespace attrlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 1D squared-distance transform of a sampled function f (Felzenszwalb & Huttenlocher):
// out[q] = min_p (q - p)^2 + f[p]. Parabolas with f[p] = +inf are skipped, so the
// multi-source case (f in {0, inf}) is handled directly. v/z are scratch (n and n+1).
// All candidate values are integer-valued here, so the result is exact.
void edt_1d(const double* f, double* out, int n, int* v, double* z) {
  int k = -1;
  for (int q = 0; q < n; ++q) {
    if (f[q] == kInf) continue;
    double s = 0.0;
    while (k >= 0) {
      int p = v[k];
      s = ((f[q] + static_cast<double>(q) * q) - (f[p] + static_cast<double>(p) * p)) /
          (2.0 * q - 2.0 * p);
      if (s > z[k]) break;
      --k;
    }
    if (k < 0) {
      k = 0;
      v[0] = q;
      z[0] = -kInf;
      z[1] = kInf;
    } else {
      ++k;
      v[k] = q;
      z[k] = s;
      z[k + 1] = kInf;
    }
  }
  if (k < 0) {
    for (int q = 0; q < n; ++q) out[q] = kInf;
    return;
  }
  int j = 0;
  for (int q = 0; q < n; ++q) {
    while (z[j + 1] < q) ++j;
    double dq = static_cast<double>(q) - v[j];
    out[q] = dq * dq + f[v[j]];
  }
}

}  // namespace

std::vector<double> squared_distance_to_seeds(const GridDomain& dom,
                                              const std::vector<char>& seed) {
  const std::int64_t n = dom.cell_count();
  std::vector<double> d(static_cast<std::size_t>(n), kInf);
  for (std::int64_t c = 0; c < n; ++c)
    if (seed[static_cast<std::size_t>(c)]) d[static_cast<std::size_t>(c)] = 0.0;

  if (dom.dim() == 1) {
    std::vector<double> out(static_cast<std::size_t>(n));
    std::vector<int> v(static_cast<std::size_t>(n));
    std::vector<double> z(static_cast<std::size_t>(n) + 1);
    edt_1d(d.data(), out.data(), static_cast<int>(n), v.data(), z.data());
    return out;
  }

  const int nx = dom.extents()[0];
  const int ny = dom.extents()[1];
  const int nmax = std::max(nx, ny);
  std::vector<double> f(static_cast<std::size_t>(nmax));
  std::vector<double> g(static_cast<std::size_t>(nmax));
  std::vector<int> v(static_cast<std::size_t>(nmax));
  std::vector<double> z(static_cast<std::size_t>(nmax) + 1);

  // Pass along y (rows are contiguous), then along x.
  for (int i = 0; i < nx; ++i) {
    double* row = d.data() + static_cast<std::size_t>(i) * ny;
    edt_1d(row, g.data(), ny, v.data(), z.data());
    for (int j = 0; j < ny; ++j) row[j] = g[static_cast<std::size_t>(j)];
  }
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i)
      f[static_cast<std::size_t>(i)] = d[static_cast<std::size_t>(i) * ny + j];
    edt_1d(f.data(), g.data(), nx, v.data(), z.data());
    for (int i = 0; i < nx; ++i)
      d[static_cast<std::size_t>(i) * ny + j] = g[static_cast<std::size_t>(i)];
  }
  return d;
}

std::vector<double> boundary_distance_map(const GridDomain& dom) {
  std::vector<char> seed(static_cast<std::size_t>(dom.cell_count()), 0);
  for (std::int64_t c = 0; c < dom.cell_count(); ++c)
    if (dom.tag(c) == CellTag::Boundary) seed[static_cast<std::size_t>(c)] = 1;
  std::vector<double> sq = squared_distance_to_seeds(dom, seed);
  std::vector<double> out(sq.size());
  for (std::size_t i = 0; i < sq.size(); ++i) out[i] = std::sqrt(sq[i]) * dom.spacing();
  return out;
}

}  // namespace attrlab
