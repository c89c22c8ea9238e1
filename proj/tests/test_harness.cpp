#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>

#include "attrlab/harness/experiments.hpp"

using namespace attrlab;

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / "attrlab_harness_tests" / name;
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("registry is sorted and carries the expected experiments") {
  auto listing = list_experiments();
  REQUIRE(listing.size() >= 9);
  std::vector<std::string> names;
  for (const auto& e : listing) names.push_back(e.at("name").get<std::string>());
  for (std::size_t i = 1; i < names.size(); ++i) CHECK(names[i - 1] < names[i]);
  for (const char* required : {"annulus-plateau", "directional-uniformity", "ode-comparison",
                               "toy-attractor", "dumbbell-plateau", "subharmonic-refinement",
                               "commutation-law", "constant-exactness", "determinism-rerun"})
    CHECK(std::find(names.begin(), names.end(), required) != names.end());
}

TEST_CASE("config validation names the offending key") {
  nlohmann::json ok{{"experiment", "commutation-law"}, {"seed", 3}};
  CHECK_NOTHROW((void)validate_config(ok));

  nlohmann::json bad{{"experiment", "commutation-law"}, {"params", {{"dx", 0.1}}}};
  bool threw = false;
  try {
    (void)validate_config(bad);
  } catch (const ConfigError& e) {
    threw = true;
    CHECK(e.key == "dx");
    CHECK(std::string(e.what()).find("dx") != std::string::npos);
  }
  CHECK(threw);

  nlohmann::json top{{"experiment", "commutation-law"}, {"bogus", 1}};
  CHECK_THROWS_AS((void)validate_config(top), ConfigError);
  nlohmann::json noexp{{"seed", 1}};
  CHECK_THROWS_AS((void)validate_config(noexp), ConfigError);
  nlohmann::json unknown{{"experiment", "no-such-thing"}};
  CHECK_THROWS_AS((void)validate_config(unknown), ConfigError);

  // defaults are merged
  auto merged = validate_config(nlohmann::json{{"experiment", "ode-comparison"},
                                               {"params", {{"grid", 256}}}});
  CHECK(merged.at("grid") == 256);
  CHECK(merged.at("L") == 32.0);
}

TEST_CASE("identical config and seed produce identical artifacts") {
  nlohmann::json config{{"experiment", "constant-exactness"},
                        {"seed", 11},
                        {"params", {{"grid", 256}, {"elliptic_spacing", 0.5}}}};
  auto dir_a = fresh_dir("a");
  auto ra = run_experiment(config, {11, dir_a, 1});
  auto rb = run_experiment(config, {11, fresh_dir("b"), 1});
  CHECK(ra.pass);
  CHECK(rb.pass);
  REQUIRE(ra.artifacts.size() == rb.artifacts.size());
  REQUIRE(!ra.artifacts.empty());
  for (std::size_t i = 0; i < ra.artifacts.size(); ++i) {
    CHECK(ra.artifacts[i].path == rb.artifacts[i].path);
    CHECK(ra.artifacts[i].hash == rb.artifacts[i].hash);
  }
  CHECK(ra.config_hash == rb.config_hash);
  CHECK(std::filesystem::exists(dir_a / "report.json"));
}

TEST_CASE("worker threads do not change the artifacts") {
  nlohmann::json config{{"experiment", "ode-comparison"},
                        {"seed", 5},
                        {"params", {{"grid", 128}, {"seeds_small", 4}, {"seeds_large", 2}}}};
  auto r1 = run_experiment(config, {5, fresh_dir("t1"), 1});
  auto r4 = run_experiment(config, {5, fresh_dir("t4"), 4});
  REQUIRE(r1.artifacts.size() == r4.artifacts.size());
  for (std::size_t i = 0; i < r1.artifacts.size(); ++i)
    CHECK(r1.artifacts[i].hash == r4.artifacts[i].hash);
}

TEST_CASE("determinism-rerun experiment checks its target") {
  nlohmann::json config{
      {"experiment", "determinism-rerun"},
      {"seed", 23},
      {"params",
       {{"target", "constant-exactness"},
        {"target_params", {{"grid", 256}, {"elliptic_spacing", 0.5}}}}}};
  auto rep = run_experiment(config, {23, fresh_dir("det"), 1});
  CHECK(rep.pass);
  REQUIRE(!rep.assertions.empty());
  CHECK(rep.assertions[0].name == "byte-identical-artifacts");
}

TEST_CASE("report json carries assertions and artifact hashes") {
  nlohmann::json config{{"experiment", "commutation-law"},
                        {"seed", 2},
                        {"params", {{"grid", 128}, {"grid2d", 24}}}};
  auto dir = fresh_dir("report");
  auto rep = run_experiment(config, {2, dir, 1});
  auto j = rep.to_json();
  CHECK(j.at("experiment") == "commutation-law");
  CHECK(j.at("pass") == true);
  CHECK(j.at("assertions").size() == rep.assertions.size());
  for (const auto& a : j.at("artifacts")) CHECK(a.at("hash").get<std::string>().size() == 16);
}
