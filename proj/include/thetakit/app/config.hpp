#pragma once

#include "thetakit/kernels.hpp"
#include "thetakit/real.hpp"

#include <json.hpp>

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace thetakit::app {

struct TGrid {
  double lo = 0.05;
  double hi = 5.0;
  int count = 50;
  std::string spacing = "log";
};

struct RunConfig {
  TGrid t_grid;
  std::vector<std::pair<double, double>> uv_pairs = {{0.1, 0.3}, {0.2, 0.8}, {0.45, 0.9}, {0.05, 0.95}};
  int x_grid_n = 512;
  double delta = 1e-3;
  double tol = 1e-6;  // endpoint limits
  int K = 6;
  std::string output_dir = ".";
  std::set<std::string> formats = {"csv", "json"};
  double fig_t = 0.5;
  bool timing = false;
  PrecisionMode precision = PrecisionMode::Multi;
  Execution exec = Execution::Parallel;
};

inline constexpr int kMaxConjectureOrder = 12;

/// Default upper t for fig1/fig2.  S_2, S_3 approach their limits like
/// exp(-2 pi^2 t); beyond t ~ 2 consecutive values agree to 17 digits.
inline constexpr double kFigureTHi = 1.0;

/// Throws ConfigError describing the first invalid field.
void validate(const RunConfig& cfg);

std::vector<double> t_points(const RunConfig& cfg);

/// {t_lo, sqrt(t_lo t_hi), t_hi}: the x-scan times.
std::vector<double> scan_times(const RunConfig& cfg);

nlohmann::ordered_json to_json(const RunConfig& cfg);

/// Parses "u:v" or "u,v".  Throws ConfigError.
std::pair<double, double> parse_uv(const std::string& text);

}  // namespace thetakit::app
