#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "attrlab/harness/experiments.hpp"

using namespace attrlab;

namespace {

nlohmann::json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path, "config");
  nlohmann::json j;
  in >> j;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"attrlab: multi-parameter semigroup attractor experiments"};
  app.require_subcommand(1);

  auto* list_cmd = app.add_subcommand("list", "List the experiment registry");

  std::string config_path;
  auto* validate_cmd = app.add_subcommand("validate", "Validate an experiment config");
  validate_cmd->add_option("--config", config_path, "Config JSON file")->required();

  std::string run_config, out_dir = "out";
  std::uint64_t seed = 0;
  int threads = 1;
  bool seed_given = false;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment");
  run_cmd->add_option("--config", run_config, "Config JSON file")->required();
  run_cmd->add_option("--out", out_dir, "Output directory");
  run_cmd->add_option("--seed", seed, "Master seed (overrides the config)")
      ->each([&](const std::string&) { seed_given = true; });
  run_cmd->add_option("--threads", threads, "Worker threads for independent seeds/directions");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list_cmd->parsed()) {
      for (const auto& e : list_experiments()) {
        std::printf("%-24s %s\n", e.at("name").get<std::string>().c_str(),
                    e.at("description").get<std::string>().c_str());
        std::string params;
        for (const auto& p : e.at("params")) params += p.get<std::string>() + " ";
        std::printf("%-24s params: %s\n", "", params.c_str());
      }
      return 0;
    }
    if (validate_cmd->parsed()) {
      auto merged = validate_config(load_config(config_path));
      std::printf("ok\n%s\n", merged.dump(2).c_str());
      return 0;
    }
    if (run_cmd->parsed()) {
      nlohmann::json config = load_config(run_config);
      if (seed_given) config["seed"] = seed;
      RunContext ctx{config.value("seed", std::uint64_t{0}), out_dir, threads};
      RunReport report = run_experiment(config, ctx);
      for (const auto& a : report.assertions)
        std::printf("[%s] %s — %s\n", a.pass ? "pass" : "FAIL", a.name.c_str(), a.detail.c_str());
      std::printf("%s: %s (%.1fs), report at %s/report.json\n", report.experiment.c_str(),
                  report.pass ? "PASS" : "FAIL", report.wall_time_s, out_dir.c_str());
      return report.pass ? 0 : 1;
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
