#include "thetakit/app/report.hpp"

#include "thetakit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace thetakit::app {

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Error: return "error";
  }
  return "error";
}

bool VerificationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.status == CheckStatus::Pass; });
}

bool VerificationReport::has_error() const {
  return std::any_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.status == CheckStatus::Error; });
}

namespace {

nlohmann::ordered_json number_or_null(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

}  // namespace

nlohmann::ordered_json to_json(const CheckRecord& r) {
  nlohmann::ordered_json j;
  j["check_id"] = r.check_id;
  j["claim"] = r.claim;
  j["params"] = r.params;
  j["status"] = to_string(r.status);
  j["worst_margin"] = number_or_null(r.worst_margin);
  j["violation_count"] = r.violation_count;
  j["runtime_ms"] = number_or_null(r.runtime_ms);
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

nlohmann::ordered_json to_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["version"] = kReportVersion;
  j["label"] = r.label;
  j["config_echo"] = r.config_echo;
  auto checks = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  j["checks"] = checks;
  j["global_status"] = r.pass() ? "pass" : "fail";
  return j;
}

void write_json(const VerificationReport& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << to_json(r).dump(2) << '\n';
}

std::string summary_line(const CheckRecord& r) {
  char margin[64] = "";
  if (r.worst_margin && std::isfinite(*r.worst_margin))
    std::snprintf(margin, sizeof margin, "  worst margin %.3g", *r.worst_margin);
  std::string line = r.status == CheckStatus::Pass ? "PASS  " : (r.status == CheckStatus::Fail ? "FAIL  " : "ERROR ");
  line += r.check_id + "  [" + r.claim + "]" + margin;
  if (r.violation_count > 0) line += "  violations " + std::to_string(r.violation_count);
  if (!r.detail.empty() && r.status != CheckStatus::Pass) line += "  " + r.detail;
  return line;
}

}  // namespace thetakit::app
