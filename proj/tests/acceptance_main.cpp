// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Every experiment runs twice; the second run feeds the determinism criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "attrlab/harness/experiments.hpp"

using namespace attrlab;
namespace fs = std::filesystem;

namespace {

struct Criterion {
  int number;
  std::string experiment;
  double budget_s;
  nlohmann::json params;
};

bool g_all_pass = true;

void report_line(int number, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[criterion %d] %-24s %s — %s\n", number, name.c_str(), pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
  g_all_pass = g_all_pass && pass;
}

std::string read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return s;
}

// Closed-form logistic value, recomputed here independently of the experiment code.
double logistic_exact(double y0, double t) {
  double e2t = std::exp(2.0 * t);
  return y0 * std::exp(t) / std::sqrt(1.0 + y0 * y0 * (e2t - 1.0));
}

}  // namespace

int main() {
  const std::uint64_t seed = 20240817;
  const fs::path root = "acceptance_out";
  fs::remove_all(root);

  const std::vector<Criterion> criteria{
      {1, "ode-comparison", 30.0, {}},
      {2, "constant-exactness", 5.0, {}},
      {3, "commutation-law", 10.0, {}},
      {4, "toy-attractor", 20.0, {}},
      {5, "directional-uniformity", 30.0, {}},
      {6, "annulus-plateau", 300.0, {}},
      {7, "dumbbell-plateau", 300.0, {}},
      {8, "subharmonic-refinement", 600.0, {}},
  };

  std::vector<RunReport> first_runs;
  std::vector<RunReport> second_runs;

  for (const auto& c : criteria) {
    nlohmann::json config{{"experiment", c.experiment}, {"seed", seed}};
    if (!c.params.empty()) config["params"] = c.params;

    RunReport rep;
    bool threw = false;
    std::string why;
    auto t0 = std::chrono::steady_clock::now();
    try {
      rep = run_experiment(config, {seed, root / (c.experiment + "_a"), 1});
    } catch (const Error& e) {
      threw = true;
      why = e.what();
    }
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (threw) {
      report_line(c.number, c.experiment, false, "exception: " + why);
      continue;
    }

    std::string detail;
    for (const auto& a : rep.assertions) {
      if (!detail.empty()) detail += "; ";
      detail += a.name + (a.pass ? " ok" : " FAILED (" + a.detail + ")");
    }
    bool in_budget = elapsed <= c.budget_s;
    char tbuf[64];
    std::snprintf(tbuf, sizeof(tbuf), " [%.1fs / %.0fs]", elapsed, c.budget_s);
    report_line(c.number, c.experiment, rep.pass && in_budget, detail + tbuf);
    first_runs.push_back(rep);

    try {
      second_runs.push_back(run_experiment(config, {seed, root / (c.experiment + "_b"), 1}));
    } catch (const Error& e) {
      second_runs.push_back(RunReport{});
      report_line(9, "determinism (" + c.experiment + ")", false, e.what());
    }
  }

  // Criterion 2 extra: the recorded oracle values must match an independent evaluation.
  {
    bool ok = false;
    std::string detail = "constant-exactness artifacts missing";
    auto p = root / "constant-exactness_a" / "constant_exactness.json";
    if (fs::exists(p)) {
      auto j = nlohmann::json::parse(read_bytes(p));
      ok = true;
      for (const auto& row : j.at("parabolic")) {
        double expect = logistic_exact(3.0, row.at("t").get<double>());
        if (std::fabs(row.at("exact").get<double>() - expect) > 1e-12) ok = false;
        if (row.at("max_err").get<double>() > 1e-6) ok = false;
      }
      if (j.at("elliptic_residual").get<double>() != 0.0) ok = false;
      detail = "logistic oracle re-evaluated independently";
    }
    report_line(2, "constant-oracle-cross", ok, detail);
  }

  // Criterion 9: byte-identical artifacts across the reruns of criteria 1-8.
  {
    bool identical = first_runs.size() == second_runs.size() && !first_runs.empty();
    std::string detail;
    std::size_t files = 0;
    for (std::size_t r = 0; identical && r < first_runs.size(); ++r) {
      const auto& ra = first_runs[r];
      const auto& rb = second_runs[r];
      if (ra.artifacts.size() != rb.artifacts.size()) {
        identical = false;
        detail = ra.experiment + ": artifact counts differ";
        break;
      }
      for (std::size_t i = 0; i < ra.artifacts.size(); ++i) {
        const auto& ea = ra.artifacts[i];
        const auto& eb = rb.artifacts[i];
        if (ea.path != eb.path || ea.hash != eb.hash) {
          identical = false;
          detail = ra.experiment + ": " + ea.path;
          break;
        }
        auto bytes_a = read_bytes(root / (ra.experiment + "_a") / ea.path);
        auto bytes_b = read_bytes(root / (ra.experiment + "_b") / eb.path);
        if (bytes_a != bytes_b || bytes_a.empty()) {
          identical = false;
          detail = ra.experiment + ": bytes differ in " + ea.path;
          break;
        }
        ++files;
      }
    }
    if (identical) detail = std::to_string(files) + " artifact files byte-compared across reruns";
    report_line(9, "determinism", identical, detail);
  }

  std::printf("acceptance: %s\n", g_all_pass ? "ALL CRITERIA PASS" : "FAILURES PRESENT");
  return g_all_pass ? 0 : 1;
}
