// thetakit: verification, figure data and conjecture scans.
//
//   thetakit verify      [flags]   exit 0 pass, 1 failed check, 2 bad config, 3 precision/internal
//   thetakit figures     [flags]
//   thetakit conjecture  [flags]

#include "thetakit/app/commands.hpp"
#include "thetakit/errors.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using thetakit::app::RunConfig;

struct Flags {
  double t_lo = 0.05, t_hi = 5.0;
  int t_count = 50;
  std::string t_spacing = "log";
  std::vector<std::string> uv;
  int x_grid = 512;
  double delta = 1e-3;
  double tol = 1e-6;
  int order_k = 6;
  std::string out = ".";
  std::vector<std::string> format = {"csv", "json"};
  double fig_t = 0.5;
  bool timing = false;
  bool serial = false;
};

void add_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--t-lo", f.t_lo, "smallest t")->capture_default_str();
  cmd->add_option("--t-hi", f.t_hi, "largest t")->capture_default_str();
  cmd->add_option("--t-count", f.t_count, "number of t points")->capture_default_str();
  cmd->add_option("--t-spacing", f.t_spacing, "log or linear")->capture_default_str();
  cmd->add_option("--uv", f.uv, "u:v pair, repeatable");
  cmd->add_option("--x-grid", f.x_grid, "points per x-scan")->capture_default_str();
  cmd->add_option("--delta", f.delta, "endpoint margin of x-scans")->capture_default_str();
  cmd->add_option("--tol", f.tol, "endpoint-limit tolerance")->capture_default_str();
  cmd->add_option("--order-k", f.order_k, "conjecture order K")->capture_default_str();
  cmd->add_option("--out", f.out, "output directory")->capture_default_str();
  cmd->add_option("--format", f.format, "csv and/or json")->delimiter(',')->capture_default_str();
  cmd->add_option("--fig-t", f.fig_t, "t for the x-figures")->capture_default_str();
  cmd->add_flag("--timing", f.timing, "record runtime_ms (breaks byte-identical reports)");
  cmd->add_flag("--serial", f.serial, "disable OpenMP grid parallelism");
}

RunConfig to_config(const Flags& f, std::vector<std::pair<double, double>> default_uv) {
  RunConfig cfg;
  cfg.t_grid = {f.t_lo, f.t_hi, f.t_count, f.t_spacing};
  cfg.uv_pairs = std::move(default_uv);
  if (!f.uv.empty()) {
    cfg.uv_pairs.clear();
    for (const auto& s : f.uv) cfg.uv_pairs.push_back(thetakit::app::parse_uv(s));
  }
  cfg.x_grid_n = f.x_grid;
  cfg.delta = f.delta;
  cfg.tol = f.tol;
  cfg.K = f.order_k;
  cfg.output_dir = f.out;
  cfg.formats = {f.format.begin(), f.format.end()};
  cfg.fig_t = f.fig_t;
  cfg.timing = f.timing;
  cfg.precision = thetakit::precision_mode_from_env();
  cfg.exec = f.serial ? thetakit::Execution::Serial : thetakit::Execution::Parallel;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Theta-quotient convexity verification"};
  app.require_subcommand(1);
  Flags verify_flags, figure_flags, conj_flags;
  figure_flags.t_count = 200;
  figure_flags.t_hi = thetakit::app::kFigureTHi;
  auto* verify = app.add_subcommand("verify", "run the verification suite");
  auto* figures = app.add_subcommand("figures", "write fig1.csv .. fig6.csv");
  auto* conjecture = app.add_subcommand("conjecture", "complete-monotonicity scan (evidence only)");
  add_flags(verify, verify_flags);
  add_flags(figures, figure_flags);
  add_flags(conjecture, conj_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const RunConfig defaults;
  try {
    if (*verify) {
      const auto rep = thetakit::app::cmd_verify(to_config(verify_flags, defaults.uv_pairs), std::cout);
      std::cout << "global status: " << (rep.pass() ? "pass" : "fail") << '\n';
      return thetakit::app::exit_code(rep);
    }
    if (*figures) {
      thetakit::app::cmd_figures(to_config(figure_flags, {{0.2, 0.8}}), std::cout);
      return 0;
    }
    const auto rep = thetakit::app::cmd_conjecture(to_config(conj_flags, defaults.uv_pairs), std::cout);
    std::cout << "EVIDENCE (not proof): " << (rep.pass() ? "no violations" : "violations found") << '\n';
    return thetakit::app::exit_code(rep);
  } catch (const thetakit::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const thetakit::DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const thetakit::Error& e) {
    std::cerr << to_string(e.kind()) << ": " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
}
