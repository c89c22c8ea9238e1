#include "attrlab/engine/rate_profile.hpp"

#include <cmath>
#include <cstdio>

#include "attrlab/core/errors.hpp"
#include "attrlab/core/io.hpp"

namespace attrlab {

namespace {

std::string fmt9(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

}  // namespace

nlohmann::json RateProfile::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json row{{"D", e.depth}, {"sup_dist", e.sup_dist}};
    row["direction_id"] = e.direction_id ? nlohmann::json(*e.direction_id) : nlohmann::json();
    rows.push_back(row);
  }
  return nlohmann::json{{"target", target}, {"entries", rows}, {"skipped_depths", skipped_depths}};
}

std::string RateProfile::to_csv() const {
  std::string out = "D,sup_dist,direction_id\n";
  for (const auto& e : entries) {
    out += fmt9(e.depth);
    out += ',';
    out += fmt9(e.sup_dist);
    out += ',';
    if (e.direction_id) out += std::to_string(*e.direction_id);
    out += '\n';
  }
  return out;
}

LogLinearFit fit_log_linear(const RateProfile& p) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& e : p.entries)
    if (e.sup_dist > 0.0) pts.emplace_back(e.depth, std::log(e.sup_dist));
  LogLinearFit fit;
  if (pts.size() < 2) return fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  const double n = static_cast<double>(pts.size());
  double den = n * sxx - sx * sx;
  if (den == 0.0) return fit;
  fit.slope = (n * sxy - sx * sy) / den;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss_tot = syy - sy * sy / n;
  double ss_res = 0.0;
  for (auto [x, y] : pts) {
    double r = y - (fit.slope * x + fit.intercept);
    ss_res += r * r;
  }
  fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  fit.valid = true;
  return fit;
}

nlohmann::json emit_profile_plotdata(const RateProfile& p, const std::filesystem::path& csv_path) {
  if (p.entries.empty()) throw EmptyProfile("profile has no entries");
  write_text_file(csv_path, p.to_csv());
  LogLinearFit fit = fit_log_linear(p);
  nlohmann::json sidecar{{"target", p.target},
                         {"entries", p.entries.size()},
                         {"fit_slope", fit.valid ? nlohmann::json(fit.slope) : nlohmann::json()},
                         {"fit_intercept", fit.valid ? nlohmann::json(fit.intercept) : nlohmann::json()},
                         {"fit_r2", fit.valid ? nlohmann::json(fit.r2) : nlohmann::json()}};
  write_text_file(csv_path.string() + ".fit.json", sidecar.dump(2) + "\n");
  return sidecar;
}

}  // namespace attrlab
