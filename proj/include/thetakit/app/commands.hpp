#pragma once

#include "thetakit/app/config.hpp"
#include "thetakit/app/report.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace thetakit::app {

/// Largest t the configured command touches.
double max_time(const RunConfig& cfg, bool include_fd_point);

/// Throws PrecisionExhausted when the digits lost to cancellation at t_max
/// plus kRequiredSurvivingDigits exceed what the configured scalar carries.
void require_precision(PrecisionMode mode, double t_max);

/// Runs every check of the verification suite.  Writes
/// <out>/verify_report.json when json output is enabled.
VerificationReport cmd_verify(const RunConfig& cfg, std::ostream& log);

/// Writes fig1.csv .. fig6.csv into <out>; returns their paths.
std::vector<std::string> cmd_figures(const RunConfig& cfg, std::ostream& log);

/// cm_scan over all four j and every (u, v); labeled EVIDENCE.  Writes
/// conjecture_report.json and conjecture_points.csv per the formats.
VerificationReport cmd_conjecture(const RunConfig& cfg, std::ostream& log);

/// 0 pass, 1 failed check, 3 a check ended in a precision/internal error.
int exit_code(const VerificationReport& r);

inline constexpr double kFdCheckTime = 0.6;
inline constexpr const char* kCsvHeader = "x_or_t,function_id,value,u,v,t,j";

}  // namespace thetakit::app
