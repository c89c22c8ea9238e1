#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

#include "attrlab/core/errors.hpp"
#include "attrlab/core/field.hpp"

namespace attrlab {

struct RunContext {
  std::uint64_t seed = 0;
  std::filesystem::path out_dir;
  int threads = 1;
};

// Collects the files an experiment emits, with content hashes, in write order.
class ArtifactWriter {
 public:
  explicit ArtifactWriter(std::filesystem::path out_dir);
  void write_text(const std::string& rel_path, std::string_view content);
  void write_json(const std::string& rel_path, const nlohmann::json& j);
  void write_field_artifact(const std::string& rel_path, const Field& u);

  struct Entry {
    std::string path;
    std::string hash;
  };
  const std::vector<Entry>& entries() const { return entries_; }
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::vector<Entry> entries_;
};

struct Assertion {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct RunReport {
  std::string experiment;
  std::string config_hash;
  std::uint64_t seed = 0;
  double wall_time_s = 0.0;
  bool pass = false;
  std::vector<Assertion> assertions;
  std::vector<ArtifactWriter::Entry> artifacts;
  nlohmann::json to_json() const;
};

using ExperimentFn = std::function<void(const nlohmann::json& params, const RunContext& ctx,
                                        ArtifactWriter& out, std::vector<Assertion>& checks)>;

struct ExperimentDef {
  std::string name;
  std::string description;
  nlohmann::json defaults;
  ExperimentFn run;
};

// Stable registry, sorted by name; one experiment per acceptance scenario.
const std::vector<ExperimentDef>& experiment_registry();

// Registry listing: (name, description, parameter names with defaults).
nlohmann::json list_experiments();

// Validates {experiment, seed?, params?} against the registry (unknown keys rejected,
// params checked against the experiment's defaults), runs the experiment, writes
// report.json into ctx.out_dir, and returns the report. Identical config and seed
// produce byte-identical artifacts; report.json carries wall time and is not an
// artifact itself.
RunReport run_experiment(const nlohmann::json& config, const RunContext& ctx);

// Validation half of run_experiment (throws ConfigError; returns merged params).
nlohmann::json validate_config(const nlohmann::json& config);

}  // namespace attrlab
