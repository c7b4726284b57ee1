#include "thetakit/errors.hpp"
#include "thetakit/scans.hpp"

#include <doctest.h>

#include <cmath>

using namespace thetakit;

TEST_CASE("map_grid: serial and parallel agree") {
  auto f = [](std::size_t i) { return std::sin(0.1 * static_cast<double>(i)); };
  const auto s = map_grid<double>(1000, f, Execution::Serial);
  const auto p = map_grid<double>(1000, f, Execution::Parallel);
  CHECK(s == p);
  CHECK(map_grid<double>(0, f).empty());
}

TEST_CASE("map_grid rethrows the lowest failing index") {
  auto f = [](std::size_t i) -> int {
    if (i == 37 || i == 512 || i == 900) throw DomainError("index " + std::to_string(i));
    return static_cast<int>(i);
  };
  for (auto exec : {Execution::Serial, Execution::Parallel}) {
    try {
      map_grid<int>(1000, f, exec);
      FAIL("expected DomainError");
    } catch (const DomainError& e) {
      CHECK(std::string(e.what()) == "index 37");
    }
  }
}

TEST_CASE("grids") {
  const auto l = linspace(0.0, 1.0, 5);
  REQUIRE(l.size() == 5);
  CHECK(l[2] == 0.5);
  CHECK(l.back() == 1.0);
  const auto g = logspace(0.05, 5.0, 3);
  CHECK(g.front() == 0.05);
  CHECK(g.back() == 5.0);
  CHECK(g[1] == doctest::Approx(0.5));
  CHECK_THROWS_AS(logspace(0.0, 1.0, 3), DomainError);
}

TEST_CASE("sign_scan") {
  const auto ok = sign_scan("sin", "sin > 0", ClaimedSign::Positive, 0, M_PI, 64, 1e-3,
                            [](double x) { return std::sin(x); });
  CHECK(ok.pass());
  CHECK(ok.grid_points == 64);
  CHECK(ok.worst_margin == doctest::Approx(std::sin(1e-3)));
  CHECK(ok.lo == 0.0);
  CHECK(ok.delta == 1e-3);

  const auto zero = sign_scan("zero", "0 > 0", ClaimedSign::Positive, 0, 1, 10, 0.0, [](double) { return 0.0; });
  CHECK_FALSE(zero.pass());
  CHECK(zero.violations.size() == 10);
  CHECK(sign_scan("zero", "0 >= 0", ClaimedSign::NonNegative, 0, 1, 10, 0.0, [](double) { return 0.0; }).pass());

  const auto bad = sign_scan("x-0.5", "x - 1/2 < 0", ClaimedSign::Negative, 0, 1, 11, 0.0,
                             [](double x) { return x - 0.5; });
  CHECK(bad.violations.size() == 6);
  CHECK(bad.violations.front().at == 0.5);
  CHECK(bad.worst_margin == doctest::Approx(-0.5));

  const auto nan = scan_points("nan", "", ClaimedSign::Positive, {1.0}, [](double) { return std::nan(""); });
  CHECK_FALSE(nan.pass());

  CHECK_THROWS_AS(sign_scan("f", "", ClaimedSign::Positive, 0, 1, 1, 0.0, [](double) { return 1.0; }), DomainError);
  CHECK_THROWS_AS(sign_scan("f", "", ClaimedSign::Positive, 0, 1, 5, 0.5, [](double) { return 1.0; }), DomainError);
}

TEST_CASE("named functions") {
  CHECK_THROWS_AS(x_function<double>("nope"), UnknownFunction);
  CHECK_THROWS_AS(t_function<double>("nope"), UnknownFunction);
  for (const auto& id : x_function_ids()) CHECK_NOTHROW(x_function<Real>(id));
  for (const auto& id : t_function_ids()) CHECK_NOTHROW(t_function<Real>(id));
  CHECK(x_function_ids().size() == 24);

  const auto ctx = make_context(Real(0.5));
  const auto r = sign_scan_x<Real>("F3", "F3 > 0", ctx, ClaimedSign::Positive, 0, 0.5, 32, 1e-3);
  CHECK(r.pass());
  const auto s = sign_scan_t<Real>("d2S_dt2", "S_2'' > 0", QuotientSpec{ThetaIndex::Two, 0.2, 0.8},
                                   ClaimedSign::Positive, logspace(0.05, 5, 8));
  CHECK(s.pass());
}

TEST_CASE("cm_scan") {
  const auto grid = logspace(0.1, 3, 6);
  const auto ok = cm_scan<Real>(QuotientSpec{ThetaIndex::Two, 0.2, 0.8}, grid, 2);
  CHECK(ok.pass());
  CHECK(ok.points.size() == 18);
  CHECK(ok.points[4].t == grid[1]);
  CHECK(ok.points[4].k == 1);

  // dS_1/dt is increasing near t = 0
  const auto j1 = cm_scan<Real>(QuotientSpec{ThetaIndex::One, 0.2, 0.8}, {0.05}, 1);
  CHECK(j1.violations() == 1);
  CHECK(j1.points[1].status == CmStatus::Violation);

  // sixth derivative of S_3(0.1, 0.3) is negative around t = 0.36
  const auto j3 = cm_scan<Real>(QuotientSpec{ThetaIndex::Three, 0.1, 0.3}, {0.36}, 6);
  CHECK(j3.points[6].status == CmStatus::Violation);
  CHECK(j3.points[6].value < 0);

  const auto deep = cm_scan<Real>(QuotientSpec{ThetaIndex::Two, 0.2, 0.8}, {1.0}, max_exact_order<Real>() + 1);
  CHECK(deep.exhausted() == max_exact_order<Real>() + 2);
  CHECK_FALSE(deep.pass());

  CHECK_THROWS_AS(cm_scan<Real>(QuotientSpec{ThetaIndex::Two, 0.5, 0.5}, grid, 2), DomainError);
  CHECK_THROWS_AS(cm_scan<Real>(QuotientSpec{ThetaIndex::One, 0.0, 0.5}, grid, 2), DomainError);
}

TEST_CASE("richardson") {
  RichardsonConfig even;
  const auto e = richardson<double>([](double h) { return 3 + h * h - 2 * h * h * h * h; }, even);
  CHECK(e.value == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(e.samples.size() == 6);

  RichardsonConfig any;
  any.first_power = 1;
  any.power_step = 1;
  const auto a = richardson<Real>([](const Real& h) { return Real(1 / (1 - h)); }, any);
  CHECK(abs(a.value - 1) < Real(1e-10));
  CHECK(a.error < Real(1e-9));
  any.levels = 1;
  CHECK_THROWS_AS(richardson<double>([](double h) { return h; }, any), DomainError);
}

TEST_CASE("endpoint limits") {
  const auto ctx = make_context(Real(0.5));
  CHECK_THROWS_AS(endpoint_limit<Real>("wp_near", Endpoint::Half, ctx, 1e-6), LimitFailure);
  const auto g0 = endpoint_limit<Real>("G2", Endpoint::Zero, ctx, 1e-6);
  CHECK(abs(g0.value) < Real(1e-10));
  const auto f3 = endpoint_limit<Real>("F3", Endpoint::Half, ctx, 1e-6);
  CHECK(abs(f3.value - F3_at_half(ctx.ed)) < Real(1e-8) * abs(f3.value));
  const auto w0 = endpoint_limit<Real>("wp_near", Endpoint::Zero, ctx, 1e-6);
  CHECK(abs(w0.value - ctx.ed.e1) < Real(1e-10));
}
