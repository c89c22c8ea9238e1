#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <limits>

#include "attrlab/core/distance_transform.hpp"
#include "attrlab/core/field.hpp"
#include "attrlab/core/io.hpp"
#include "attrlab/core/loc_metric.hpp"
#include "attrlab/core/rng.hpp"
#include "attrlab/core/time_arrow.hpp"

using namespace attrlab;

namespace {

DomainPtr annulus_domain(double r_in, double r_out, double spacing) {
  double half = r_out + 2.0 * spacing;
  int n = static_cast<int>(std::ceil(2.0 * half / spacing));
  return GridDomain::from_predicate(2, {n, n}, spacing, {-half, -half},
                                    [&](const std::array<double, 2>& x) {
                                      double r = std::hypot(x[0], x[1]);
                                      return r > r_in && r < r_out;
                                    });
}

// Independent oracle: min squared distance (cell units) over all Boundary cells.
double brute_force_sq(const GridDomain& dom, std::int64_t cell) {
  auto c = dom.coords(cell);
  double best = std::numeric_limits<double>::infinity();
  for (std::int64_t b = 0; b < dom.cell_count(); ++b) {
    if (dom.tag(b) != CellTag::Boundary) continue;
    auto cb = dom.coords(b);
    double dx = c[0] - cb[0];
    double dy = c[1] - cb[1];
    best = std::min(best, dx * dx + dy * dy);
  }
  return best;
}

}  // namespace

TEST_CASE("cone membership examples") {
  auto c11 = Cone::orthant_product(1, 1);
  CHECK(c11.contains(TimePoint{0.0, -3.0}));

  auto c20 = Cone::orthant_product(2, 0);
  CHECK_FALSE(c20.contains(TimePoint{-0.1, 1.0}));

  auto hs = Cone::half_space(TimePoint{1.0, 0.0});
  CHECK(hs.contains(TimePoint{2.0, 5.0}));

  CHECK_THROWS_AS((void)c11.contains(TimePoint{1.0, 2.0, 3.0}), DimensionMismatch);
}

TEST_CASE("cone closure under addition and scaling, sampled") {
  Rng rng(42, "cone-closure");
  auto sample = [&](const Cone& c, std::uint64_t k) {
    TimePoint h = TimePoint::zero(c.dim());
    for (int i = 0; i < c.dim(); ++i) {
      double x = rng.uniform(k * 7 + static_cast<std::uint64_t>(i), -4.0, 4.0);
      if (c.kind() == Cone::Kind::OrthantProduct && i < c.nonneg_dims()) x = std::fabs(x);
      h[i] = x;
    }
    if (c.kind() == Cone::Kind::HalfSpace && !c.contains(h)) h = h - c.normal() * (2.0 * c.normal().dot(h));
    return h;
  };
  for (const Cone& c : {Cone::orthant_product(2, 1), Cone::half_space(TimePoint{0.3, -1.2, 0.7})}) {
    for (std::uint64_t k = 0; k < 1000; ++k) {
      TimePoint a = sample(c, 2 * k), b = sample(c, 2 * k + 1);
      REQUIRE(c.contains(a));
      REQUIRE(c.contains(b));
      CHECK(c.contains(a + b));
      CHECK(c.contains(a * 1.7));
      CHECK(c.contains(a * 0.0));
    }
    CHECK(c.contains(TimePoint::zero(c.dim())));
    CHECK(c.interior_contains(c.interior_witness(), 0.5 * c.witness_margin()));
  }
}

TEST_CASE("whole-cone depth equals distance to cone boundary") {
  auto arrow = TimeArrow::whole_cone(Cone::orthant_product(1, 2));
  CHECK(arrow.depth(TimePoint{3.0, 7.0, -2.0}) == 3.0);
  CHECK(arrow.capacity() == std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(arrow.depth(TimePoint{-1.0, 0.0, 0.0}), NotInSigma);

  // deeper times stay deep: nonnegative constrained offsets never reduce depth
  Rng rng(7, "deep-stays-deep");
  auto c = Cone::orthant_product(2, 1);
  auto a2 = TimeArrow::whole_cone(c);
  for (std::uint64_t k = 0; k < 500; ++k) {
    TimePoint h1{rng.uniform(3 * k, 0.0, 5.0), rng.uniform(3 * k + 1, 0.0, 5.0),
                 rng.uniform(3 * k + 2, -5.0, 5.0)};
    TimePoint h2{rng.uniform(9000 + 3 * k, 0.0, 5.0), rng.uniform(9000 + 3 * k + 1, 0.0, 5.0),
                 rng.uniform(9000 + 3 * k + 2, -5.0, 5.0)};
    CHECK(a2.depth(h1 + h2) >= a2.depth(h1) - 1e-15);
  }
}

TEST_CASE("annulus depth matches min distance to either circle") {
  const double spacing = 0.25;
  auto dom = annulus_domain(1.0, 40.0, spacing);
  auto arrow = TimeArrow::domain_arrow(dom);
  double d = arrow.depth(TimePoint{10.0, 0.0});
  CHECK(d == doctest::Approx(9.0).epsilon(0.0).scale(0.0).epsilon(0.05));
  CHECK(std::fabs(d - 9.0) <= spacing + 1e-12);

  // boundary cells themselves have zero depth, points of Sigma near the cone boundary
  // (here: near the circles) have small depth
  double near = arrow.depth(TimePoint{1.5, 0.0});
  CHECK(near <= 0.5 + spacing + 1e-12);

  CHECK_THROWS_AS(arrow.depth(TimePoint{0.0, 0.0}), NotInSigma);
  CHECK_THROWS_AS(arrow.depth(TimePoint{300.0, 0.0}), NotInSigma);
}

TEST_CASE("distance transform equals brute force over boundary cells exactly") {
  Rng rng(2024, "masks");
  for (std::uint64_t trial = 0; trial < 4; ++trial) {
    // random union of disks with a hole
    double cx[3], cy[3], rr[3];
    for (int b = 0; b < 3; ++b) {
      cx[b] = rng.uniform(trial * 16 + static_cast<std::uint64_t>(3 * b), 12.0, 52.0);
      cy[b] = rng.uniform(trial * 16 + static_cast<std::uint64_t>(3 * b + 1), 12.0, 52.0);
      rr[b] = rng.uniform(trial * 16 + static_cast<std::uint64_t>(3 * b + 2), 6.0, 14.0);
    }
    double hx = rng.uniform(trial * 16 + 10, 20.0, 44.0);
    double hy = rng.uniform(trial * 16 + 11, 20.0, 44.0);
    double hr = rng.uniform(trial * 16 + 12, 2.0, 5.0);
    auto dom = GridDomain::from_predicate(2, {64, 64}, 1.0, {0.0, 0.0},
                                          [&](const std::array<double, 2>& x) {
                                            if (std::hypot(x[0] - hx, x[1] - hy) < hr) return false;
                                            for (int b = 0; b < 3; ++b)
                                              if (std::hypot(x[0] - cx[b], x[1] - cy[b]) < rr[b])
                                                return true;
                                            return false;
                                          });
    std::vector<char> seed(static_cast<std::size_t>(dom->cell_count()), 0);
    for (std::int64_t c = 0; c < dom->cell_count(); ++c)
      if (dom->tag(c) == CellTag::Boundary) seed[static_cast<std::size_t>(c)] = 1;
    auto sq = squared_distance_to_seeds(*dom, seed);
    for (std::int64_t c = 0; c < dom->cell_count(); ++c) {
      if (dom->tag(c) == CellTag::Exterior) continue;
      CHECK(sq[static_cast<std::size_t>(c)] == brute_force_sq(*dom, c));
    }
  }
}

TEST_CASE("deep time sampler") {
  SUBCASE("half line") {
    auto arrow = TimeArrow::whole_cone(Cone::orthant_product(1, 0));
    auto h = arrow.deep_time(5.0);
    CHECK(h[0] == 5.0);
    CHECK(arrow.depth(h) == 5.0);
  }
  SUBCASE("strip of width 10 caps at half-width") {
    const double spacing = 0.125;
    auto dom = GridDomain::from_predicate(
        2, {static_cast<int>(30.0 / spacing) + 4, static_cast<int>(10.0 / spacing) + 4}, spacing,
        {-2.0 * spacing, -2.0 * spacing}, [](const std::array<double, 2>& x) {
          return x[0] > 0.0 && x[0] < 30.0 && x[1] > 0.0 && x[1] < 10.0;
        });
    auto arrow = TimeArrow::domain_arrow(dom);
    CHECK_THROWS_AS((void)arrow.deep_time(6.0), NoDeepTime);
    try {
      (void)arrow.deep_time(6.0);
    } catch (const NoDeepTime& e) {
      CHECK(std::fabs(e.max_depth - 5.0) <= spacing + 1e-12);
    }
    CHECK_NOTHROW((void)arrow.deep_time(0.9 * arrow.capacity()));
  }
  SUBCASE("annulus argmax sits at the mid radius") {
    const double spacing = 0.25;
    auto dom = annulus_domain(1.0, 40.0, spacing);
    auto arrow = TimeArrow::domain_arrow(dom);
    auto h = arrow.deep_time(15.0);
    double r = std::hypot(h[0], h[1]);
    CHECK(std::fabs(r - 20.5) <= 2.0 * spacing);
    CHECK(arrow.depth(h) >= 15.0);
    CHECK(std::fabs(arrow.depth(h) - 19.5) <= 2.0 * spacing);
  }
}

TEST_CASE("probe times are deterministic and respect the depth floor") {
  auto arrow = TimeArrow::whole_cone(Cone::orthant_product(2, 1));
  auto a = arrow.probe_times(2.5, 9);
  auto b = arrow.probe_times(2.5, 9);
  REQUIRE(a.size() == 9);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i] == b[i]);
    CHECK(arrow.depth(a[i]) >= 2.5 - 1e-12);
  }

  auto dom = annulus_domain(1.0, 40.0, 0.25);
  auto da = TimeArrow::domain_arrow(dom);
  auto p = da.probe_times(15.0, 9);
  REQUIRE(p.size() == 9);
  for (const auto& h : p) CHECK(da.depth(h) >= 15.0);

  auto hs = TimeArrow::whole_cone(Cone::half_space(TimePoint{1.0, 1.0}));
  for (const auto& h : hs.probe_times(3.0, 9)) CHECK(hs.depth(h) >= 3.0 - 1e-12);
}

TEST_CASE("grid domain mask invariants") {
  // Interior next to Exterior is rejected.
  std::vector<CellTag> bad(9, CellTag::Interior);
  bad[0] = CellTag::Exterior;
  CHECK_THROWS_AS(GridDomain(2, {3, 3}, 1.0, {0.0, 0.0}, bad, {false, false}),
                  std::invalid_argument);
  // Periodic axes must be all Interior.
  std::vector<CellTag> withb(9, CellTag::Interior);
  withb[4] = CellTag::Boundary;
  CHECK_THROWS_AS(GridDomain(2, {3, 3}, 1.0, {0.0, 0.0}, withb, {true, true}),
                  std::invalid_argument);
  CHECK_THROWS_AS(GridDomain(2, {3, 3}, 0.0, {0.0, 0.0},
                             std::vector<CellTag>(9, CellTag::Interior), {false, false}),
                  std::invalid_argument);
}

TEST_CASE("grid domain descriptor round trip") {
  auto dom = annulus_domain(1.0, 6.0, 0.5);
  auto back = GridDomain::from_descriptor(dom->descriptor());
  CHECK(back->same_as(*dom));
  CHECK(back->value_count() == dom->value_count());

  auto box = GridDomain::periodic_box(1, 16, 8.0);
  CHECK(GridDomain::from_descriptor(box->descriptor())->same_as(*box));
}

TEST_CASE("field binary round trip") {
  auto dom = annulus_domain(1.0, 4.0, 0.5);
  Field u(dom);
  Rng rng(5, "field-io");
  for (std::int64_t i = 0; i < u.size(); ++i) u[i] = rng.uniform(static_cast<std::uint64_t>(i), -3.0, 3.0);
  auto tmp = std::filesystem::temp_directory_path() / "attrlab_field_test.bin";
  write_field(tmp, u);
  Field v = read_field(tmp, dom);
  for (std::int64_t i = 0; i < u.size(); ++i) REQUIRE(u[i] == v[i]);
  CHECK(hash_file(tmp) != 0);
  std::filesystem::remove(tmp);
  std::filesystem::remove(tmp.string() + ".json");
}

TEST_CASE("loc metric examples and axioms") {
  auto dom = GridDomain::periodic_box(1, 64, 64.0);
  std::array<int, 2> center{32, 0};

  SUBCASE("identical fields have distance zero") {
    LocMetric m = LocMetric::covering(dom, center);
    Field u(dom, 1.3);
    CHECK(m.distance(u, u) == 0.0);
  }

  SUBCASE("difference outside ball r_K contributes at most 2^-K") {
    const int K = 6;
    LocMetric m(dom, center, K);
    Field u(dom, 0.0), v(dom, 0.0);
    for (std::int64_t i = 0; i < u.size(); ++i) {
      auto c = dom->coords(dom->value_cell(i));
      if (std::abs(c[0] - center[0]) > K) v[i] = 7.0;
    }
    CHECK(m.distance(u, v) <= std::pow(2.0, -K) + 1e-15);
    CHECK(m.distance(u, v) > 0.0);
  }

  SUBCASE("constant difference 0.5 has distance exactly 0.5") {
    LocMetric m = LocMetric::covering(dom, center);
    Field u(dom, 0.0), v(dom, 0.5);
    CHECK(m.distance(u, v) == doctest::Approx(0.5).epsilon(1e-14));
  }

  SUBCASE("metric axioms on sampled triples") {
    LocMetric m = LocMetric::covering(dom, center);
    Rng rng(99, "loc-axioms");
    for (std::uint64_t k = 0; k < 50; ++k) {
      Field u(dom), v(dom), w(dom);
      for (std::int64_t i = 0; i < u.size(); ++i) {
        u[i] = rng.uniform(k * 1000 + static_cast<std::uint64_t>(3 * i), -2.0, 2.0);
        v[i] = rng.uniform(k * 1000 + static_cast<std::uint64_t>(3 * i + 1), -2.0, 2.0);
        w[i] = rng.uniform(k * 1000 + static_cast<std::uint64_t>(3 * i + 2), -2.0, 2.0);
      }
      double duv = m.distance(u, v);
      double dvu = m.distance(v, u);
      CHECK(duv == dvu);
      CHECK(duv <= 1.0);
      CHECK(m.distance(u, w) <= duv + m.distance(v, w) + 1e-12);
      CHECK(m.distance(u, u) == 0.0);
    }
  }

  SUBCASE("domain mismatch is rejected") {
    LocMetric m = LocMetric::covering(dom, center);
    auto other = GridDomain::periodic_box(1, 32, 64.0);
    CHECK_THROWS_AS((void)m.distance(Field(dom), Field(other)), DomainMismatch);
  }
}

TEST_CASE("rng is a pure function of key and counter") {
  Rng a(123, "stream-a");
  Rng b(123, "stream-a");
  Rng c(123, "stream-b");
  CHECK(a.uniform(0) == b.uniform(0));
  CHECK(a.uniform(17) == b.uniform(17));
  CHECK(a.uniform(0) != c.uniform(0));
  for (std::uint64_t k = 0; k < 100; ++k) {
    double x = a.uniform(k);
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}
