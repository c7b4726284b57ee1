#include "thetakit/app/commands.hpp"
#include "thetakit/errors.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace thetakit;
using namespace thetakit::app;
namespace fs = std::filesystem;

namespace {

RunConfig small_config(const std::string& out) {
  RunConfig c;
  c.t_grid.count = 4;
  c.uv_pairs = {{0.2, 0.8}};
  c.x_grid_n = 32;
  c.output_dir = out;
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("thetakit_unit_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("config validation") {
  CHECK_NOTHROW(validate(RunConfig{}));
  auto bad = [](auto mutate) {
    RunConfig c;
    mutate(c);
    CHECK_THROWS_AS(validate(c), ConfigError);
  };
  bad([](RunConfig& c) { c.t_grid.lo = 0; });
  bad([](RunConfig& c) { c.t_grid.hi = 0.01; });
  bad([](RunConfig& c) { c.t_grid.count = 1; });
  bad([](RunConfig& c) { c.t_grid.spacing = "cubic"; });
  bad([](RunConfig& c) { c.uv_pairs = {{0.4, 0.4}}; });
  bad([](RunConfig& c) { c.uv_pairs = {{0.4, 1.0}}; });
  bad([](RunConfig& c) { c.uv_pairs.clear(); });
  bad([](RunConfig& c) { c.x_grid_n = 4; });
  bad([](RunConfig& c) { c.delta = 0; });
  bad([](RunConfig& c) { c.K = kMaxConjectureOrder + 1; });
  bad([](RunConfig& c) { c.formats = {"xml"}; });
  bad([](RunConfig& c) { c.fig_t = -1; });

  RunConfig c;
  c.uv_pairs = {{0.4, 0.4}};
  std::ostringstream log;
  CHECK_THROWS_AS(cmd_verify(c, log), ConfigError);
}

TEST_CASE("parse_uv") {
  CHECK(parse_uv("0.2:0.8") == std::make_pair(0.2, 0.8));
  CHECK(parse_uv("0.1,0.3") == std::make_pair(0.1, 0.3));
  CHECK_THROWS_AS(parse_uv("0.2"), ConfigError);
  CHECK_THROWS_AS(parse_uv("a:b"), ConfigError);
  CHECK_THROWS_AS(parse_uv("0.2x:0.3"), ConfigError);
}

TEST_CASE("grids from the config") {
  RunConfig c;
  const auto t = t_points(c);
  CHECK(t.size() == 50);
  CHECK(t.front() == 0.05);
  CHECK(t.back() == 5.0);
  const auto s = scan_times(c);
  CHECK(s[1] == doctest::Approx(0.5));
}

TEST_CASE("precision budget") {
  CHECK_NOTHROW(require_precision(PrecisionMode::Multi, 5.0));
  CHECK_THROWS_AS(require_precision(PrecisionMode::Multi, 8.0), PrecisionExhausted);
  CHECK_THROWS_AS(require_precision(PrecisionMode::Double, 0.05), PrecisionExhausted);
  CHECK_THROWS_AS(require_precision(PrecisionMode::Extended, 0.05), PrecisionExhausted);
  CHECK(parse_precision_mode("extended") == PrecisionMode::Extended);
  CHECK_THROWS_AS(parse_precision_mode("quad"), ConfigError);
}

TEST_CASE("report JSON") {
  VerificationReport r;
  r.label = "verification";
  CheckRecord a;
  a.check_id = "x";
  a.claim = "x > 0";
  a.worst_margin = std::numeric_limits<double>::infinity();
  r.checks.push_back(a);
  const auto j = to_json(r);
  CHECK(j["version"] == kReportVersion);
  CHECK(j["global_status"] == "pass");
  CHECK(j["checks"][0]["worst_margin"].is_null());
  CHECK(j["checks"][0]["runtime_ms"].is_null());
  CHECK(exit_code(r) == 0);
  r.checks[0].status = CheckStatus::Fail;
  CHECK(exit_code(r) == 1);
  r.checks.push_back(a);
  r.checks[1].status = CheckStatus::Error;
  CHECK(exit_code(r) == 3);
  CHECK(summary_line(r.checks[1]).rfind("ERROR", 0) == 0);
}

TEST_CASE("verify passes on a small grid and is deterministic") {
  const auto d1 = scratch("verify1");
  const auto d2 = scratch("verify2");
  auto c = small_config(d1.string());
  std::ostringstream log;
  const auto r1 = cmd_verify(c, log);
  for (const auto& ch : r1.checks)
    if (ch.status != CheckStatus::Pass) FAIL_CHECK(summary_line(ch));
  CHECK(r1.pass());
  CHECK(exit_code(r1) == 0);
  c.output_dir = d2.string();
  c.exec = Execution::Serial;
  cmd_verify(c, log);
  const auto j1 = slurp(d1 / "verify_report.json");
  CHECK_FALSE(j1.empty());
  CHECK(j1 == slurp(d2 / "verify_report.json"));
}

TEST_CASE("figures are byte-identical across runs and execution modes") {
  const auto d1 = scratch("fig1");
  const auto d2 = scratch("fig2");
  auto c = small_config(d1.string());
  c.x_grid_n = 24;
  std::ostringstream log;
  const auto files = cmd_figures(c, log);
  REQUIRE(files.size() == 6);
  c.output_dir = d2.string();
  c.exec = Execution::Serial;
  cmd_figures(c, log);
  for (int i = 1; i <= 6; ++i) {
    const std::string name = "fig" + std::to_string(i) + ".csv";
    const auto a = slurp(d1 / name);
    CHECK(a.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
    CHECK(a == slurp(d2 / name));
  }
}

TEST_CASE("conjecture report is labeled evidence") {
  const auto d = scratch("conj");
  auto c = small_config(d.string());
  c.K = 2;
  c.uv_pairs = {{0.2, 0.8}};
  std::ostringstream log;
  const auto r = cmd_conjecture(c, log);
  CHECK(r.label == "EVIDENCE");
  CHECK(r.checks.size() == 4);
  CHECK(fs::exists(d / "conjecture_report.json"));
  CHECK(slurp(d / "conjecture_points.csv").rfind(kCsvHeader, 0) == 0);
}
