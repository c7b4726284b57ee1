#include "thetakit/app/config.hpp"

#include "thetakit/errors.hpp"

#include <cmath>
#include <sstream>

namespace thetakit::app {

namespace {

[[noreturn]] void reject(const std::string& what) { throw ConfigError(what); }

}  // namespace

void validate(const RunConfig& cfg) {
  const auto& g = cfg.t_grid;
  if (!std::isfinite(g.lo) || !(g.lo > 0)) reject("t-lo must be > 0");
  if (!std::isfinite(g.hi) || !(g.hi >= g.lo)) reject("t-hi must be >= t-lo");
  if (g.count < 2) reject("t-count must be >= 2");
  if (g.spacing != "log" && g.spacing != "linear") reject("t-spacing must be log or linear");
  if (cfg.uv_pairs.empty()) reject("at least one (u, v) pair is required");
  for (const auto& [u, v] : cfg.uv_pairs) {
    if (!(u >= 0) || !(u < v) || !(v < 1)) {
      std::ostringstream os;
      os << "(u, v) = (" << u << ", " << v << ") violates 0 <= u < v < 1";
      reject(os.str());
    }
  }
  if (cfg.x_grid_n < 8) reject("x-grid must be >= 8");
  if (!(cfg.delta > 0) || !(cfg.delta < 0.1)) reject("delta must lie in (0, 0.1)");
  if (!(cfg.tol > 0)) reject("tol must be > 0");
  if (cfg.K < 0 || cfg.K > kMaxConjectureOrder) reject("order-k must lie in [0, 12]");
  for (const auto& f : cfg.formats)
    if (f != "csv" && f != "json") reject("format must be csv and/or json, got '" + f + "'");
  if (!std::isfinite(cfg.fig_t) || !(cfg.fig_t > 0)) reject("fig-t must be > 0");
}

std::vector<double> t_points(const RunConfig& cfg) {
  const auto& g = cfg.t_grid;
  return g.spacing == "log" ? logspace(g.lo, g.hi, g.count) : linspace(g.lo, g.hi, g.count);
}

std::vector<double> scan_times(const RunConfig& cfg) {
  const auto& g = cfg.t_grid;
  return {g.lo, std::sqrt(g.lo * g.hi), g.hi};
}

nlohmann::ordered_json to_json(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["t_grid"] = {{"lo", cfg.t_grid.lo}, {"hi", cfg.t_grid.hi}, {"count", cfg.t_grid.count},
                 {"spacing", cfg.t_grid.spacing}};
  auto uv = nlohmann::ordered_json::array();
  for (const auto& [u, v] : cfg.uv_pairs) uv.push_back({u, v});
  j["uv_pairs"] = uv;
  j["x_grid_n"] = cfg.x_grid_n;
  j["delta"] = cfg.delta;
  j["tol"] = cfg.tol;
  j["K"] = cfg.K;
  j["fig_t"] = cfg.fig_t;
  j["formats"] = cfg.formats;
  j["precision"] = std::string(to_string(cfg.precision));
  return j;
}

std::pair<double, double> parse_uv(const std::string& text) {
  const auto pos = text.find_first_of(":,");
  if (pos == std::string::npos) reject("uv pair '" + text + "' must look like u:v");
  try {
    std::size_t used = 0;
    const std::string a = text.substr(0, pos);
    const std::string b = text.substr(pos + 1);
    const double u = std::stod(a, &used);
    if (used != a.size()) reject("bad u in '" + text + "'");
    const double v = std::stod(b, &used);
    if (used != b.size()) reject("bad v in '" + text + "'");
    return {u, v};
  } catch (const std::logic_error&) {
    reject("uv pair '" + text + "' must look like u:v");
  }
}

}  // namespace thetakit::app
