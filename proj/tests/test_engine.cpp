#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>

#include "attrlab/engine/attractor.hpp"
#include "attrlab/engine/toy_systems.hpp"

using namespace attrlab;

namespace {

// Deterministic log-polar sample of the ball of the given radius (plus the origin).
std::vector<PhasePoint> ball_sample(double radius, int angles, double radius_ratio,
                                    double min_radius) {
  std::vector<PhasePoint> seeds;
  seeds.push_back(VecState{0.0, 0.0});
  for (double r = radius; r >= min_radius; r /= radius_ratio) {
    for (int a = 0; a < angles; ++a) {
      double th = 2.0 * M_PI * a / angles;
      seeds.push_back(VecState{r * std::cos(th), r * std::sin(th)});
    }
  }
  return seeds;
}

// Analytic distance from a plane point to the closed unit disk.
double dist_to_disk(const VecState& p) { return std::max(0.0, std::hypot(p[0], p[1]) - 1.0); }

// Dense deterministic sample of the closed unit disk, max gap about `gap`.
std::vector<VecState> disk_sample(double gap) {
  std::vector<VecState> pts;
  pts.push_back({0.0, 0.0});
  for (double r = gap; r <= 1.0 + 1e-12; r += gap) {
    int na = std::max(6, static_cast<int>(std::ceil(2.0 * M_PI * r / gap)));
    for (int a = 0; a < na; ++a) {
      double th = 2.0 * M_PI * a / na;
      pts.push_back({r * std::cos(th), r * std::sin(th)});
    }
  }
  return pts;
}

}  // namespace

TEST_CASE("semigroup law of the exact linear flow is exact") {
  auto sg = linear_contraction(2, 10.0);
  double d = semigroup_law_defect(sg, TimePoint{1.0, 0.0}, TimePoint{0.0, 1.0},
                                  PhasePoint(VecState{2.0}));
  CHECK(d <= 1e-14);
  CHECK_THROWS_AS((void)semigroup_law_defect(sg, TimePoint{-1.0, 0.0}, TimePoint{0.0, 1.0},
                                             PhasePoint(VecState{2.0})),
                  TimeOutsideCone);
}

TEST_CASE("omega estimate of the global contraction is the origin") {
  auto sg = linear_contraction(2, 10.0);
  std::vector<PhasePoint> seeds;
  for (int i = -3; i <= 3; ++i) seeds.push_back(VecState{static_cast<double>(i)});
  auto est = omega_estimate(sg, seeds, {2.0, 4.0, 8.0}, 0.05);
  REQUIRE(est.points.size() == 1);
  CHECK(std::fabs(std::get<VecState>(est.points[0])[0]) <= 0.05);
  CHECK(est.invariance_defect <= 0.05);
}

TEST_CASE("linear contraction attraction profile matches 2 e^{-2D}") {
  auto sg = linear_contraction(2, 10.0);
  std::vector<PhasePoint> seeds;
  for (int i = 0; i <= 40; ++i) seeds.push_back(VecState{-2.0 + 0.1 * i});
  auto target = TargetSet::of_points({PhasePoint(VecState{0.0})}, "origin");
  auto profile = attraction_profile(sg, seeds, target, {1.0, 2.0, 3.0});
  REQUIRE(profile.entries.size() == 3);
  CHECK(profile.entries[0].sup_dist == doctest::Approx(0.270670566).epsilon(1e-6));
  for (const auto& e : profile.entries) {
    double expected = 2.0 * std::exp(-2.0 * e.depth);
    CHECK(std::fabs(e.sup_dist / expected - 1.0) <= 1e-9);
  }

  auto tmp = std::filesystem::temp_directory_path() / "attrlab_profile_test.csv";
  auto sidecar = emit_profile_plotdata(profile, tmp);
  CHECK(std::fabs(sidecar["fit_slope"].get<double>() + 2.0) <= 0.01);
  CHECK(sidecar["fit_r2"].get<double>() >= 0.999999);
  std::filesystem::remove(tmp);
  std::filesystem::remove(tmp.string() + ".fit.json");
}

TEST_CASE("profile plotdata edge cases") {
  auto tmp = std::filesystem::temp_directory_path() / "attrlab_profile_edge.csv";
  RateProfile single;
  single.entries.push_back({1.0, 0.5, std::nullopt});
  auto sidecar = emit_profile_plotdata(single, tmp);
  CHECK(sidecar["fit_slope"].is_null());
  CHECK(std::filesystem::exists(tmp));
  std::filesystem::remove(tmp);
  std::filesystem::remove(tmp.string() + ".fit.json");

  RateProfile empty;
  CHECK_THROWS_AS((void)emit_profile_plotdata(empty, tmp), EmptyProfile);
}

TEST_CASE("rotation-contraction omega estimate recovers the unit disk (smoke scale)") {
  auto sg = rotation_contraction(10.0);
  auto seeds = ball_sample(3.0, 48, 1.05, 1e-7);
  OmegaOptions opts;
  opts.dedup_grid = 0.01;
  const double eps = 0.06;
  auto est = omega_estimate(sg, seeds, {3.0, 4.0, 5.0}, eps, opts);

  // net inside the disk
  double out = 0.0;
  for (const auto& p : est.points) out = std::max(out, dist_to_disk(std::get<VecState>(p)));
  CHECK(out <= 0.01);

  // disk covered by the net
  auto oracle = disk_sample(0.01);
  double cover = 0.0;
  for (const auto& q : oracle) {
    double best = 1e300;
    for (const auto& p : est.points) best = std::min(best, euclidean(std::get<VecState>(p), q));
    cover = std::max(cover, best);
  }
  CHECK(cover <= 0.1);

  SUBCASE("strict invariance of the recovered disk") {
    double defect = strict_invariance_defect(est, sg, TimePoint{1.0, 0.7});
    CHECK(defect <= 2.0 * eps + 0.01);
  }

  SUBCASE("deeper schedules move the net by at most eps") {
    auto deeper = omega_estimate(sg, seeds, {5.0, 6.5, 8.0}, eps, opts);
    CHECK(hausdorff(est.points, deeper.points, sg.metric) <= eps);
  }

  SUBCASE("backward extension through the disk net reports a small defect") {
    PhasePoint u0 = VecState{1.0, 0.0};
    auto ext = backward_extension(est, sg, u0, TimePoint{0.5, 0.3}, 12);
    CHECK(ext.chain.size() == 12);
    CHECK(ext.max_defect <= 2.0 * eps);
    for (const auto& p : ext.chain) CHECK(dist_to_disk(std::get<VecState>(p)) <= eps);
    CHECK_THROWS_AS((void)backward_extension(est, sg, PhasePoint(VecState{5.0, 0.0}),
                                             TimePoint{0.5, 0.3}, 3),
                    NotOnAttractor);
  }
}

TEST_CASE("backward extension along a circle-only net stays on the circle") {
  // The unit circle is exactly invariant under the flow, so a chain restricted to a
  // circle net is the rotated-back orbit up to net quantization.
  auto sg = rotation_contraction(10.0);
  AttractorEstimate circle;
  circle.epsilon = 0.05;
  const int n = 256;
  for (int a = 0; a < n; ++a) {
    double th = 2.0 * M_PI * a / n;
    circle.points.push_back(VecState{std::cos(th), std::sin(th)});
  }
  PhasePoint u0 = VecState{1.0, 0.0};
  auto ext = backward_extension(circle, sg, u0, TimePoint{0.5, 0.3}, 10);
  CHECK(ext.max_defect <= 2.0 * circle.epsilon);
  double th_expect = 0.0;
  int step = 0;
  for (const auto& p : ext.chain) {
    const auto& v = std::get<VecState>(p);
    CHECK(std::fabs(std::hypot(v[0], v[1]) - 1.0) <= 1e-12);
    th_expect -= 0.3;  // each backward step un-rotates by s
    ++step;
    double th = std::atan2(v[1], v[0]);
    double diff = std::remainder(th - th_expect, 2.0 * M_PI);
    // snap-to-net error of up to half the angular gap accumulates per greedy step
    CHECK(std::fabs(diff) <= (step + 1) * M_PI / n + 1e-9);
  }
}

TEST_CASE("strict invariance defect is positive for a non-invariant point set") {
  auto sg = rotation_contraction(10.0);
  AttractorEstimate fake;
  fake.points = {PhasePoint(VecState{0.3, 0.0})};
  fake.epsilon = 0.05;
  // radial flow moves r=0.3 toward 1, so a singleton off the attractor has a real defect
  double defect = strict_invariance_defect(fake, sg, TimePoint{1.0, 0.0});
  double moved = logistic_radius(0.3, 1.0);
  CHECK(defect == doctest::Approx(moved - 0.3).epsilon(1e-9));
  CHECK(defect >= 0.1);
}

TEST_CASE("directional nets agree with each other and the full net") {
  auto sg = rotation_contraction(10.0);
  auto seeds = ball_sample(3.0, 48, 1.05, 1e-7);
  OmegaOptions opts;
  opts.dedup_grid = 0.01;
  const double eps = 0.08;
  auto full = omega_estimate(sg, seeds, {3.0, 4.0, 5.0}, eps, opts);

  auto l1 = DirectionSpec::make(sg.arrow.cone(), TimePoint{1.0, 1.0});
  auto l2 = DirectionSpec::make(sg.arrow.cone(), TimePoint{2.0, 1.0});
  CHECK(l1.kappa == doctest::Approx(1.0 / std::sqrt(2.0)));
  auto rep = directional_compare(sg, l1, l2, seeds, {4.0, 5.5, 7.0}, eps, &full, opts);
  CHECK(rep.hausdorff_pair <= 2.0 * eps);
  CHECK(rep.hausdorff_1_full <= 2.0 * eps);
  CHECK(rep.hausdorff_2_full <= 2.0 * eps);
  CHECK(rep.norms_bounded);
}

TEST_CASE("boundary directions are rejected") {
  auto sg = linear_contraction(2, 10.0);
  CHECK_THROWS_AS((void)DirectionSpec::make(sg.arrow.cone(), TimePoint{1.0, 0.0}),
                  DirectionNotInterior);
  CHECK_NOTHROW((void)DirectionSpec::make(sg.arrow.cone(), TimePoint{1.0, 1.0}));
}

TEST_CASE("eps net properties") {
  auto metric = euclidean_metric();
  std::vector<PhasePoint> pts;
  for (int i = 0; i < 500; ++i) {
    double th = 0.777 * i;
    double r = 0.002 * i;
    pts.push_back(VecState{r * std::cos(th), r * std::sin(th)});
  }
  const double eps = 0.1;
  auto net = eps_net(pts, eps, metric);

  for (std::size_t i = 0; i < net.size(); ++i)
    for (std::size_t j = i + 1; j < net.size(); ++j)
      CHECK(metric(net[i], net[j]) > eps * 0.5);
  CHECK(directed_hausdorff(pts, net, metric) <= eps * 0.5 + 1e-12);

  // order independence
  std::vector<PhasePoint> shuffled(pts.rbegin(), pts.rend());
  auto net2 = eps_net(shuffled, eps, metric);
  REQUIRE(net.size() == net2.size());
  for (std::size_t i = 0; i < net.size(); ++i)
    CHECK(euclidean(std::get<VecState>(net[i]), std::get<VecState>(net2[i])) == 0.0);
}

TEST_CASE("norm ball targets measure overshoot only") {
  auto t = TargetSet::norm_ball(1.5, "ball");
  auto metric = euclidean_metric();
  CHECK(t.distance(PhasePoint(VecState{1.0, 0.0}), metric) == 0.0);
  CHECK(t.distance(PhasePoint(VecState{0.0, 2.0}), metric) == doctest::Approx(0.5));
}

TEST_CASE("omega estimate rejects seeds outside the bornology") {
  auto sg = linear_contraction(2, 1.0);  // norm bound 1
  std::vector<PhasePoint> seeds{PhasePoint(VecState{3.0})};
  CHECK_THROWS_AS((void)omega_estimate(sg, seeds, {1.0, 2.0}, 0.1), Error);
}

TEST_CASE("omega estimate propagates NoDeepTime from the arrow") {
  // Sigma truncated by a narrow strip: depth capacity is the half-width.
  auto dom = GridDomain::from_predicate(2, {64, 24}, 0.5, {0.0, 0.0},
                                        [](const std::array<double, 2>& x) {
                                          return x[0] > 1.0 && x[0] < 31.0 && x[1] > 1.0 &&
                                                 x[1] < 11.0;
                                        });
  SemigroupHandle sg;
  sg.arrow = TimeArrow::domain_arrow(dom);
  sg.phase = VectorPhase{1};
  sg.bornology = Bornology::unrestricted();
  sg.metric = euclidean_metric();
  sg.apply = [](const TimePoint&, const PhasePoint& u) { return u; };
  std::vector<PhasePoint> seeds{PhasePoint(VecState{0.5})};
  CHECK_THROWS_AS((void)omega_estimate(sg, seeds, {20.0}, 0.1), NoDeepTime);
}
