#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace thetakit::app {

enum class CheckStatus { Pass, Fail, Error };
const char* to_string(CheckStatus s);

struct CheckRecord {
  std::string check_id;
  std::string claim;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  CheckStatus status = CheckStatus::Pass;
  std::optional<double> worst_margin;
  int violation_count = 0;
  std::optional<double> runtime_ms;
  std::string detail;
};

struct VerificationReport {
  std::string label;  // "verification" or "EVIDENCE"
  nlohmann::ordered_json config_echo;
  std::vector<CheckRecord> checks;

  bool pass() const;
  bool has_error() const;
};

inline constexpr const char* kReportVersion = "1.0";

nlohmann::ordered_json to_json(const CheckRecord& r);
nlohmann::ordered_json to_json(const VerificationReport& r);

/// Pretty-printed JSON with a trailing newline.
void write_json(const VerificationReport& r, const std::string& path);

/// One line per check: "PASS  check_id  claim  (worst margin ...)".
std::string summary_line(const CheckRecord& r);

}  // namespace thetakit::app
