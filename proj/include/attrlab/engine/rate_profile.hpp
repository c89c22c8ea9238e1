#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace attrlab {

// Empirical attraction profile: supremum distance to the target set as a function of
// the time-arrow depth D, optionally per direction.
struct RateProfileEntry {
  double depth = 0.0;
  double sup_dist = 0.0;
  std::optional<int> direction_id;
};

struct RateProfile {
  std::vector<RateProfileEntry> entries;  // sorted by depth
  std::string target;
  std::vector<double> skipped_depths;  // bands with no admissible cells

  nlohmann::json to_json() const;
  // CSV schema: header "D,sup_dist,direction_id", 9 significant digits, '.' decimal
  // separator, LF line endings.
  std::string to_csv() const;
};

struct LogLinearFit {
  bool valid = false;
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

// Least-squares fit of log(sup_dist) against depth over the positive entries.
LogLinearFit fit_log_linear(const RateProfile& p);

// Writes the CSV and a JSON sidecar carrying the fitted slope and R^2 (nulls when the
// fit is not defined). Throws EmptyProfile on an empty profile.
nlohmann::json emit_profile_plotdata(const RateProfile& p, const std::filesystem::path& csv_path);

}  // namespace attrlab
