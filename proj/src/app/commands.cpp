#include "thetakit/app/commands.hpp"

#include "thetakit/errors.hpp"
#include "thetakit/scans.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace thetakit::app {

using Json = nlohmann::ordered_json;

double max_time(const RunConfig& cfg, bool include_fd_point) {
  double t = std::max(cfg.t_grid.hi, cfg.t_grid.lo);
  if (include_fd_point) t = std::max(t, kFdCheckTime);
  return t;
}

void require_precision(PrecisionMode mode, double t_max) {
  const double log10_inv_q = t_max * M_PI * M_PI / std::log(10.0);
  const double needed = cancellation_digits(log10_inv_q) + kRequiredSurvivingDigits;
  int available = digits10_v<Real>;
  if (mode == PrecisionMode::Double) available = digits10_v<double>;
  if (mode == PrecisionMode::Extended) available = digits10_v<long double>;
  if (needed > available) {
    std::ostringstream os;
    os << "precision mode '" << to_string(mode) << "' carries " << available << " digits; t up to " << t_max
       << " needs about " << std::lround(needed);
    throw PrecisionExhausted(os.str());
  }
}

int exit_code(const VerificationReport& r) {
  if (r.has_error()) return 3;
  return r.pass() ? 0 : 1;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Json uv_json(double u, double v) { return Json{{"u", u}, {"v", v}}; }

template <class Body>
CheckRecord run_check(std::string id, std::string claim, Json params, bool timing, Body&& body) {
  CheckRecord r;
  r.check_id = std::move(id);
  r.claim = std::move(claim);
  r.params = std::move(params);
  const auto start = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const ClaimError& e) {
    r.status = CheckStatus::Fail;
    r.detail = e.what();
  } catch (const LimitFailure& e) {
    r.status = CheckStatus::Fail;
    r.detail = e.what();
  } catch (const Error& e) {
    r.status = CheckStatus::Error;
    r.detail = std::string(to_string(e.kind())) + ": " + e.what();
  } catch (const std::exception& e) {
    r.status = CheckStatus::Error;
    r.detail = std::string("internal: ") + e.what();
  }
  if (timing)
    r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

// Positive margin means the claim holds at that point.
void apply_margins(CheckRecord& r, const std::vector<double>& margins) {
  double worst = std::numeric_limits<double>::infinity();
  int bad = 0;
  for (double m : margins) {
    if (std::isnan(m)) {
      ++bad;
      worst = -std::numeric_limits<double>::infinity();
      continue;
    }
    worst = std::min(worst, m);
    if (!(m > 0)) ++bad;
  }
  r.worst_margin = worst;
  r.violation_count = bad;
  r.status = bad == 0 ? CheckStatus::Pass : CheckStatus::Fail;
}

void apply_scan(CheckRecord& r, const SignScanReport& s) {
  r.worst_margin = s.worst_margin;
  r.violation_count = static_cast<int>(s.violations.size());
  r.status = s.pass() ? CheckStatus::Pass : CheckStatus::Fail;
  r.params["claimed_sign"] = std::string(to_string(s.claimed_sign));
  r.params["grid_points"] = s.grid_points;
  if (!s.violations.empty()) {
    std::ostringstream os;
    os << "first violation at " << s.violations.front().at << " value " << s.violations.front().value;
    r.detail = os.str();
  }
}

template <class T>
T rel_diff(const T& a, const T& b) {
  using std::abs;
  const T s = std::max(abs(a), abs(b));
  return s > 0 ? T(abs(a - b) / s) : T(0);
}

template <class T, class Term>
T sum_until_negligible(Term term) {
  using std::abs;
  T s(0);
  for (int n = 1; n < 1'000'000; ++n) {
    const T tm = term(n);
    s += tm;
    if (abs(tm) <= eps_v<T>() * (abs(s) > 1 ? abs(s) : T(1)) / 4) return s;
  }
  throw PrecisionExhausted("identity series did not converge");
}

// Everything checked at each grid t.
struct TMargins {
  double lemma_T_sign = kNaN, lemma_T_fact = kNaN, lemma_U_sign = kNaN, lemma_U_fact = kNaN;
  double ordering = kNaN, rema = kNaN, kappa = kNaN, delta = kNaN, p1e1p2 = kNaN, e3_identity = kNaN,
         amgm = kNaN;
  double th4 = kNaN, p4 = kNaN, bf2 = kNaN, bf1 = kNaN, bf_gap = kNaN, quartic = kNaN, parity = kNaN,
         periodicity = kNaN;
  std::string error;
};

constexpr double kIdentityTol = 1e-12;
constexpr double kLemmaTol = 1e-9;

template <class T>
TMargins t_margins(double t) {
  using std::abs;
  TMargins m;
  try {
    const auto mp = nome_from_time(T(t));
    const auto nulls = theta_nulls(mp);
    const auto ed = half_periods_and_invariants(mp);
    const T pi2 = pi_v<T>() * pi_v<T>();
    const T& q = mp.q();

    const auto lt = lemma_T(ed, nulls);
    m.lemma_T_sign = to_double(std::min(T(-lt.direct), T(-lt.factorized)));
    m.lemma_T_fact = kLemmaTol - to_double(rel_diff(lt.direct, lt.factorized));
    const auto lu = lemma_U(ed);
    m.lemma_U_sign = to_double(std::min(lu.direct, lu.factorized));
    m.lemma_U_fact = kLemmaTol - to_double(rel_diff(lu.direct, lu.factorized));
    m.ordering = to_double(std::min({T(ed.c0 - ed.e3), T(ed.e2 - ed.c0), T(ed.e1 - ed.e2)}));
    m.e3_identity = kIdentityTol - to_double(rel_diff(T(ed.g2 - 12 * ed.e3 * ed.e3),
                                                      T(4 * (ed.e3 - ed.e1) * (ed.e2 - ed.e3))));
    {
      const T a = 2 * ed.e1 + ed.e2;
      const T b = ed.e1 + 2 * ed.e2;
      const T s = a + b + 3 * ed.c0;
      m.amgm = to_double(T(s * s * s / 27 - 3 * ed.c0 * a * b));
    }

    const T th2 = nulls.th2, th3 = nulls.th3, th4 = nulls.th4;
    const auto mp2 = nome_from_time(T(2 * t));
    const T th4_2t = theta_null(ThetaIndex::Four, mp2).value;
    m.th4 = kIdentityTol - to_double(abs(th3 * th4 - th4_2t * th4_2t));
    const T p4 = 1 + 8 * sum_until_negligible<T>([&](int n) {
                   const T qn = pow(q, n);
                   return T((n % 2 ? -1 : 1) * qn / ((1 + qn) * (1 + qn)));
                 });
    m.p4 = kIdentityTol - to_double(abs(th4 * th4 * th4 * th4 - p4));
    const T lam_plus = sum_until_negligible<T>([&](int n) {
      const T qn = pow(q, 2 * n);
      return T(qn / ((1 + qn) * (1 + qn)));
    });
    const T lam_alt = sum_until_negligible<T>([&](int n) {
      const T qn = pow(q, 2 * n);
      return T((n % 2 ? -1 : 1) * qn / ((1 + qn) * (1 + qn)));
    });
    const T bf2_rhs = pi2 + 8 * pi2 * lam_plus;
    m.bf2 = kIdentityTol - to_double(rel_diff(T(ed.e1 - ed.c0), bf2_rhs));
    const T w = pi2 * th3 * th3 * th4 * th4;
    m.bf1 = kIdentityTol - to_double(rel_diff(w, T(pi2 + 8 * pi2 * lam_alt)));
    m.bf_gap = to_double(T(ed.e1 - ed.c0 - w));
    m.quartic = kIdentityTol - to_double(abs(th2 * th2 * th2 * th2 + th4 * th4 * th4 * th4 - th3 * th3 * th3 * th3));

    T parity(0), period(0);
    for (double zd : {0.1, 0.23, 0.37, 0.49}) {
      const T z(zd);
      for (int jj = 1; jj <= 4; ++jj) {
        const auto j = theta_index(jj);
        const T f = theta_deriv(j, z, mp, 0).value;
        const T fm = theta_deriv(j, T(-z), mp, 0).value;
        const T fp = theta_deriv(j, T(z + 1), mp, 0).value;
        const T par = jj == 1 ? T(abs(fm + f)) : T(abs(fm - f));
        const T per = jj <= 2 ? T(abs(fp + f)) : T(abs(fp - f));
        parity = std::max(parity, par);
        period = std::max(period, per);
      }
    }
    m.parity = kIdentityTol - to_double(parity);
    m.periodicity = kIdentityTol - to_double(period);

    m.kappa = to_double(T(ed.g2 - 12 * ed.c0 * ed.c0));
    const auto dc = derived_constants(ed);
    m.delta = to_double(dc.delta);
    m.rema = to_double(T(-dc.r1 - ed.e1));
    m.p1e1p2 = to_double(std::min(T(ed.e1 - dc.p1), T(dc.p2 - ed.e1)));
  } catch (const Error& e) {
    m.error = e.what();
  }
  return m;
}

struct TCheckSpec {
  const char* id;
  const char* claim;
  double TMargins::*field;
};

const TCheckSpec kTChecks[] = {
    {"lemma_T.sign", "A2(e1) < 0 and its factorized form < 0", &TMargins::lemma_T_sign},
    {"lemma_T.factorization", "A2(e1) = -4(e1-e2)(e1-e3)(c0-e1-w)(c0-e1+w), rel < 1e-9", &TMargins::lemma_T_fact},
    {"lemma_U.sign", "A2(e2) > 0 and its factorized form > 0", &TMargins::lemma_U_sign},
    {"lemma_U.factorization", "A2(e2) = 4(e1-e2)(e2-e3)((c0-e2)^2+(e1-e2)(e2-e3)), rel < 1e-9",
     &TMargins::lemma_U_fact},
    {"elliptic.ordering", "e3 < c0 < e2 < e1", &TMargins::ordering},
    {"elliptic.e1_below_minus_r1", "e1 < -(2g3+4c0^3+g2c0)/(g2-12c0^2)", &TMargins::rema},
    {"elliptic.kappa", "g2 - 12 c0^2 > 0", &TMargins::kappa},
    {"elliptic.delta", "Delta > 0", &TMargins::delta},
    {"elliptic.p1_e1_p2", "P1 < e1 < P2", &TMargins::p1e1p2},
    {"elliptic.e3_identity", "g2 - 12 e3^2 = 4(e3-e1)(e2-e3), rel < 1e-12", &TMargins::e3_identity},
    {"elliptic.amgm", "((2e1+e2)+(e1+2e2)+3c0)^3/27 - 3c0(2e1+e2)(e1+2e2) >= 0", &TMargins::amgm},
    {"identity.theta_product", "theta3 theta4 = theta4(0|2tau)^2, residual < 1e-12", &TMargins::th4},
    {"identity.theta4_fourth", "theta4^4 = 1 + 8 sum (-1)^n q^n/(1+q^n)^2, residual < 1e-12", &TMargins::p4},
    {"identity.e1_minus_c0", "e1 - c0 = pi^2 + 8 pi^2 sum q^2n/(1+q^2n)^2, rel < 1e-12", &TMargins::bf2},
    {"identity.theta34_square", "pi^2 th3^2 th4^2 = pi^2 + 8 pi^2 sum (-1)^n q^2n/(1+q^2n)^2, rel < 1e-12",
     &TMargins::bf1},
    {"identity.e1_minus_c0_gap", "e1 - c0 > pi^2 th3^2 th4^2", &TMargins::bf_gap},
    {"identity.jacobi_quartic", "theta2^4 + theta4^4 = theta3^4, residual < 1e-12", &TMargins::quartic},
    {"identity.parity", "theta1 odd, theta2..4 even, residual < 1e-12", &TMargins::parity},
    {"identity.periodicity", "theta1,2 antiperiodic and theta3,4 periodic under z -> z+1, residual < 1e-12",
     &TMargins::periodicity},
};

std::string uv_suffix(double u, double v) {
  std::ostringstream os;
  os << "u" << u << "_v" << v;
  return os.str();
}

template <class T>
void t_grid_checks(const RunConfig& cfg, const std::vector<double>& ts, VerificationReport& rep) {
  const auto start = std::chrono::steady_clock::now();
  const auto margins = map_grid<TMargins>(ts.size(), [&](std::size_t i) { return t_margins<T>(ts[i]); }, cfg.exec);
  const double elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  std::string first_error;
  for (const auto& m : margins)
    if (!m.error.empty() && first_error.empty()) first_error = m.error;
  for (const auto& c : kTChecks) {
    auto rec = run_check(c.id, c.claim, Json{{"t_points", ts.size()}}, false, [&](CheckRecord& r) {
      std::vector<double> v;
      for (const auto& m : margins) v.push_back(m.*(c.field));
      apply_margins(r, v);
      if (r.status != CheckStatus::Pass && !first_error.empty()) r.detail = first_error;
    });
    if (cfg.timing) rec.runtime_ms = elapsed / static_cast<double>(std::size(kTChecks));
    rep.checks.push_back(std::move(rec));
  }
}

constexpr double kFdStep = 1e-4;
constexpr double kFdRelTol = 1e-6;
constexpr double kOrderLo = 1.8;
constexpr double kOrderHi = 2.2;

template <class T>
void quotient_checks(const RunConfig& cfg, const std::vector<double>& ts, VerificationReport& rep) {
  for (int jj = 1; jj <= 4; ++jj) {
    for (const auto& [u, v] : cfg.uv_pairs) {
      if (jj == 1 && u == 0) continue;
      const QuotientSpec spec{theta_index(jj), u, v};
      const bool increasing = jj == 1 || jj == 4;
      Json params = uv_json(u, v);
      params["j"] = jj;
      rep.checks.push_back(run_check(
          "monotone.j" + std::to_string(jj) + "." + uv_suffix(u, v),
          std::string("S_") + std::to_string(jj) + (increasing ? " positive and strictly increasing in t"
                                                                : " positive and strictly decreasing in t"),
          params, cfg.timing, [&](CheckRecord& r) {
            const auto s = map_grid<T>(ts.size(), [&](std::size_t i) { return quotient<T>(spec, T(ts[i])); }, cfg.exec);
            std::vector<double> m;
            for (std::size_t i = 0; i < s.size(); ++i) {
              m.push_back(to_double(s[i]));
              if (i + 1 < s.size()) m.push_back(to_double(increasing ? T(s[i + 1] - s[i]) : T(s[i] - s[i + 1])));
            }
            apply_margins(r, m);
          }));
    }
  }

  for (int jj : {2, 3}) {
    for (const auto& [u, v] : cfg.uv_pairs) {
      const QuotientSpec spec{theta_index(jj), u, v};
      Json params = uv_json(u, v);
      params["j"] = jj;
      const std::string suffix = ".j" + std::to_string(jj) + "." + uv_suffix(u, v);
      rep.checks.push_back(run_check(
          "convexity" + suffix, "dS/dt < 0 and d2S/dt2 > 0 (exact heat-equation derivatives)", params, cfg.timing,
          [&](CheckRecord& r) {
            const auto d = map_grid<DerivSeries<T>>(
                ts.size(), [&](std::size_t i) { return quotient_t_derivs<T>(spec, T(ts[i]), 2); }, cfg.exec);
            std::vector<double> m;
            for (const auto& x : d) m.push_back(to_double(std::min(T(-x.values[1]), x.values[2])));
            apply_margins(r, m);
          }));
      rep.checks.push_back(run_check("log_convexity" + suffix, "d2/dt2 log S > 0", params, cfg.timing,
                                     [&](CheckRecord& r) {
                                       const auto d = map_grid<T>(
                                           ts.size(),
                                           [&](std::size_t i) { return log_quotient_second_t<T>(spec, T(ts[i])); },
                                           cfg.exec);
                                       std::vector<double> m;
                                       for (const auto& x : d) m.push_back(to_double(x));
                                       apply_margins(r, m);
                                     }));
      Json fdp = params;
      fdp["t"] = kFdCheckTime;
      fdp["h"] = kFdStep;
      rep.checks.push_back(run_check(
          "fd_agreement" + suffix, "central differences match exact k = 1, 2 derivatives to rel 1e-6 at h = 1e-4",
          fdp, cfg.timing, [&](CheckRecord& r) {
            const T t(kFdCheckTime);
            const auto d = quotient_t_derivs<T>(spec, t, 2);
            std::vector<double> m;
            for (int k : {1, 2})
              m.push_back(kFdRelTol - to_double(rel_diff(fd_oracle<T>(spec, t, k, T(kFdStep)), d.values[k])));
            apply_margins(r, m);
          }));
      rep.checks.push_back(run_check(
          "fd_order" + suffix, "finite-difference error converges with order in [1.8, 2.2]", params, cfg.timing,
          [&](CheckRecord& r) {
            struct Row {
              double order[2];
              double rel[2];
            };
            const auto rows = map_grid<Row>(
                ts.size(),
                [&](std::size_t i) {
                  using std::abs;
                  using std::log2;
                  Row row{};
                  const T t(ts[i]);
                  const auto d = quotient_t_derivs<T>(spec, t, 2);
                  for (int k : {1, 2}) {
                    const T e1 = abs(fd_oracle<T>(spec, t, k, T(kFdStep)) - d.values[k]);
                    const T e2 = abs(fd_oracle<T>(spec, t, k, T(kFdStep / 2)) - d.values[k]);
                    row.order[k - 1] = to_double(T(log2(e1 / e2)));
                    row.rel[k - 1] = to_double(T(e1 / abs(d.values[k])));
                  }
                  return row;
                },
                cfg.exec);
            std::vector<double> m;
            double max_rel = 0;
            for (const auto& row : rows)
              for (int k = 0; k < 2; ++k) {
                m.push_back(std::min(row.order[k] - kOrderLo, kOrderHi - row.order[k]));
                max_rel = std::max(max_rel, row.rel[k]);
              }
            apply_margins(r, m);
            r.params["max_rel_error_at_h"] = max_rel;
          }));
    }
  }
}

template <class T>
Json t_params(const T& t, double lo, double hi, double delta) {
  return Json{{"t", to_double(t)}, {"lo", lo}, {"hi", hi}, {"delta", delta}};
}

constexpr double kLaurentRelTol = 1e-6;
constexpr double kRootResidualTol = 1e-8;
constexpr double kRootProbe = 1e-4;

template <class T>
void x_scan_checks(const RunConfig& cfg, double t, VerificationReport& rep) {
  const int n = cfg.x_grid_n;
  const double d = cfg.delta;
  std::ostringstream tag;
  tag << ".t" << t;
  const std::string ts = tag.str();
  auto push = [&](CheckRecord r) { rep.checks.push_back(std::move(r)); };

  std::optional<Context<T>> ctx_holder;
  push(run_check("context" + ts, "elliptic data and derived constants certified", Json{{"t", t}}, cfg.timing,
                 [&](CheckRecord& r) {
                   ctx_holder.emplace(make_context(T(t)));
                   r.status = CheckStatus::Pass;
                 }));
  if (!ctx_holder) return;
  const Context<T>& ctx = *ctx_holder;

  auto scan = [&](const std::string& id, const std::string& claim, ClaimedSign sign, double lo, double hi) {
    push(run_check(id + ts, claim, t_params(ctx.mp.t(), lo, hi, d), cfg.timing, [&](CheckRecord& r) {
      apply_scan(r, sign_scan_x<T>(id, claim, ctx, sign, lo, hi, n, d, cfg.exec));
    }));
  };
  scan("F2", "F2 < 0", ClaimedSign::Negative, 0, 0.5);
  scan("F2_prime", "F2' > 0", ClaimedSign::Positive, 0, 0.5);
  scan("nu1", "2 theta2'/theta2 + wp'/(wp - c0) < 0", ClaimedSign::Negative, 0, 0.5);
  scan("l1_theta2", "theta2'/theta2 < 0", ClaimedSign::Negative, 0, 0.5);
  scan("F3", "F3 > 0", ClaimedSign::Positive, 0, 0.5);
  scan("F3_prime", "F3' < 0", ClaimedSign::Negative, 0, 0.5);
  scan("G3", "G3 < 0", ClaimedSign::Negative, 0, 0.5);
  scan("A2_top", "A2 > 0 along the top edge", ClaimedSign::Positive, 0, 0.5);

  for (EdgeId edge : {EdgeId::NearHalf, EdgeId::TopEdge}) {
    const std::string id = std::string("ode_residual.") + to_string(edge);
    push(run_check(id + ts, "|wp'^2 - (4wp^3 - g2 wp - g3)| / max(1, wp'^2) < 1e-9", t_params(ctx.mp.t(), 0, 0.5, d),
                   cfg.timing, [&](CheckRecord& r) {
                     apply_scan(r, sign_scan(id, "", ClaimedSign::Positive, 0, 0.5, n, d, [&](double x) {
                                  const auto jet = wp_jet(edge, T(x), ctx.mp, ctx.ed);
                                  return kOdeResidualBound - to_double(ode_residual(jet, ctx.ed));
                                }, cfg.exec));
                   }));
  }

  push(run_check("laurent" + ts, "wp(x - 1/2) matches its 4-term Laurent expansion to rel 1e-6 for 1/2 - x in (1e-3, 1e-2)",
                 Json{{"t", t}}, cfg.timing, [&](CheckRecord& r) {
                   std::vector<double> m;
                   for (double w : logspace(1.1e-3, 9e-3, 8)) {
                     const T x = T(0.5) - T(w);
                     const T p = wp_jet(EdgeId::NearHalf, x, ctx.mp, ctx.ed, std::optional<T>{}, 0.0).p;
                     m.push_back(kLaurentRelTol - to_double(rel_diff(p, wp_laurent_near_half(x, ctx.ed))));
                   }
                   apply_margins(r, m);
                 }));

  const double tol = cfg.tol;
  auto limit = [&](const std::string& id, Endpoint ep, const std::string& claim) {
    const char* where = ep == Endpoint::Zero ? "0" : "1/2";
    push(run_check(id + ".limit_" + (ep == Endpoint::Zero ? "0" : "half") + ts, claim,
                   Json{{"t", t}, {"endpoint", where}, {"tol", tol}}, cfg.timing, [&](CheckRecord& r) {
                     const auto est = endpoint_limit<T>(id, ep, ctx, tol);
                     r.params["limit"] = to_double(est.value);
                     r.params["error_estimate"] = to_double(est.error);
                     apply_margins(r, {tol - to_double(T(abs(est.value)))});
                   }));
  };
  limit("F2", Endpoint::Half, "F2(1/2) = 0");
  limit("G2", Endpoint::Zero, "G2(0) = 0");
  limit("G2", Endpoint::Half, "G2(1/2) = 0");
  limit("G3", Endpoint::Zero, "G3(0) = 0");
  limit("G3", Endpoint::Half, "G3(1/2) = 0");

  push(run_check("F3_half" + ts, "F3(1/2) = 16(e3-c0)^3/(g2-12e3^2) - 12c0 > 0 and equals the extrapolated limit",
                 Json{{"t", t}, {"tol", tol}}, cfg.timing, [&](CheckRecord& r) {
                   const T closed = F3_at_half(ctx.ed);
                   const auto est = endpoint_limit<T>("F3", Endpoint::Half, ctx, tol);
                   r.params["closed_form"] = to_double(closed);
                   r.params["limit"] = to_double(est.value);
                   apply_margins(r, {to_double(closed), tol - to_double(rel_diff(closed, est.value))});
                 }));

  std::optional<RootData<T>> roots;
  push(run_check("roots_a1_a2" + ts, "0 < a1 < a2 < 1/2, back-substitution residuals < 1e-8 scale, simple sign changes",
                 Json{{"t", t}}, cfg.timing, [&](CheckRecord& r) {
                   using std::abs;
                   const auto rd = roots_a1_a2(ctx, default_root_tol<T>());
                   roots = rd;
                   const auto& ed = ctx.ed;
                   auto p_at = [&](const T& x) { return wp_jet(EdgeId::NearHalf, x, ctx.mp, ctx.ed).p; };
                   const T p1 = p_at(rd.a1);
                   const T p2 = p_at(rd.a2);
                   const T c0 = abs(ed.c0);
                   const T scale1 = abs(ed.g2 / 2 - 6 * c0 * c0) * abs(p1) + abs(ed.g3) + 2 * c0 * c0 * c0 + abs(ed.g2) * c0 / 2;
                   const T scale2 = abs(ed.g2 - 12 * c0 * c0) * p2 * p2 + abs(6 * ed.g3 + 4 * ed.g2 * ed.c0) * abs(p2) +
                                    abs(6 * ed.g3 * ed.c0) + abs(ed.g2) * c0 * c0 + ed.g2 * ed.g2 / 4;
                   const T res1 = abs(A1(p1, ed)) / scale1;
                   const T res2 = abs(A2(p2, ed)) / scale2;
                   r.params["a1"] = to_double(rd.a1);
                   r.params["a2"] = to_double(rd.a2);
                   r.params["residual_a1"] = to_double(res1);
                   r.params["residual_a2"] = to_double(res2);
                   const T h(kRootProbe);
                   apply_margins(r, {to_double(rd.a1), to_double(T(rd.a2 - rd.a1)), to_double(T(T(0.5) - rd.a2)),
                                     kRootResidualTol - to_double(res1), kRootResidualTol - to_double(res2),
                                     to_double(T(-A1(p_at(T(rd.a1 - h)), ed))), to_double(A1(p_at(T(rd.a1 + h)), ed)),
                                     to_double(T(-A2(p_at(T(rd.a2 - h)), ed))), to_double(A2(p_at(T(rd.a2 + h)), ed))});
                 }));
  if (roots) {
    const double a1 = to_double(roots->a1);
    const double a2 = to_double(roots->a2);
    scan("G2", "G2 < 0 on (delta, a1)", ClaimedSign::Negative, 0, a1);
    rep.checks.back().check_id = "G2.below_a1" + ts;
    scan("G2", "G2 > 0 on (a2, 1/2 - delta)", ClaimedSign::Positive, a2, 0.5);
    rep.checks.back().check_id = "G2.above_a2" + ts;
    scan("near_p_plus_r1", "wp + r1 < 0 on (delta, a1)", ClaimedSign::Negative, 0, a1);
    rep.checks.back().check_id = "case1.p_plus_r1" + ts;
    scan("near_quad", "wp^2 + s1 wp + s0 < 0 on (delta, a1)", ClaimedSign::Negative, 0, a1);
    rep.checks.back().check_id = "case1.quadratic" + ts;
    scan("near_2p_plus_s1", "2 wp + s1 < 0 on (delta, a1)", ClaimedSign::Negative, 0, a1);
    rep.checks.back().check_id = "case1.2p_plus_s1" + ts;
    scan("near_p_plus_r1", "wp + r1 > 0 on (a2, 1/2 - delta)", ClaimedSign::Positive, a2, 0.5);
    rep.checks.back().check_id = "case3.p_plus_r1" + ts;
    scan("near_quad", "wp^2 + s1 wp + s0 > 0 on (a2, 1/2 - delta)", ClaimedSign::Positive, a2, 0.5);
    rep.checks.back().check_id = "case3.quadratic" + ts;
    scan("near_r2", "2 wp + s1 > sqrt(Delta)/(g2 - 12c0^2) on (a2, 1/2 - delta)", ClaimedSign::Positive, a2, 0.5);
    rep.checks.back().check_id = "case3.2p_plus_s1" + ts;
    scan("near_r3", "wp + r1 > wp + s1/2 on (a2, 1/2 - delta)", ClaimedSign::Positive, a2, 0.5);
    rep.checks.back().check_id = "case3.r1_vs_s1" + ts;
    push(run_check("Q.above_a2" + ts, "Q > 1 on (a2, 1/2 - delta)", t_params(ctx.mp.t(), a2, 0.5, d), cfg.timing,
                   [&](CheckRecord& r) {
                     const auto q = x_function<T>("Q_near");
                     apply_scan(r, sign_scan("Q_near", "", ClaimedSign::Positive, a2, 0.5, n, d, [&](double x) {
                                  return to_double(T(q.f(T(x), ctx, kDefaultPoleMargin) - 1));
                                }, cfg.exec));
                   }));
  }

  push(run_check("x0" + ts, "G3' has exactly one sign change in (0, 1/2), at x0 = wp^{-1}(-C/(2 mcoef))",
                 t_params(ctx.mp.t(), 0, 0.5, d), cfg.timing, [&](CheckRecord& r) {
                   const T x0 = root_x0(ctx, default_root_tol<T>());
                   const auto xs = linspace(d, 0.5 - d, n);
                   const auto g = map_grid<T>(xs.size(), [&](std::size_t i) { return G3(T(xs[i]), ctx); }, cfg.exec);
                   std::vector<double> changes;
                   int prev = 0;
                   for (std::size_t i = 0; i + 1 < g.size(); ++i) {
                     const T diff = g[i + 1] - g[i];
                     const int s = diff > 0 ? 1 : (diff < 0 ? -1 : 0);
                     if (s != 0 && prev != 0 && s != prev) changes.push_back(xs[i]);
                     if (s != 0) prev = s;
                   }
                   const double step = xs[1] - xs[0];
                   r.params["x0"] = to_double(x0);
                   r.params["sign_changes"] = changes.size();
                   if (changes.size() != 1) {
                     r.status = CheckStatus::Fail;
                     r.violation_count = static_cast<int>(changes.size() == 0 ? 1 : changes.size() - 1);
                     r.detail = "FD derivative of G3 changes sign " + std::to_string(changes.size()) + " times";
                     return;
                   }
                   r.params["fd_sign_change_at"] = changes.front();
                   apply_margins(r, {2 * step - std::abs(changes.front() - to_double(x0))});
                 }));
}

template <class T>
VerificationReport verify_impl(const RunConfig& cfg, std::ostream& log) {
  VerificationReport rep;
  rep.label = "verification";
  rep.config_echo = to_json(cfg);
  const auto ts = t_points(cfg);
  t_grid_checks<T>(cfg, ts, rep);
  quotient_checks<T>(cfg, ts, rep);
  for (double t : scan_times(cfg)) x_scan_checks<T>(cfg, t, rep);
  for (const auto& c : rep.checks) log << summary_line(c) << '\n';
  return rep;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir + ": " + ec.message());
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

struct CsvRow {
  double x_or_t;
  std::string function_id;
  std::string value;
  std::string u, v;
  double t;
  int j;
};

void write_csv(const std::string& path, const std::vector<CsvRow>& rows) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << kCsvHeader << '\n';
  for (const auto& r : rows)
    out << format17(r.x_or_t) << ',' << r.function_id << ',' << r.value << ',' << r.u << ',' << r.v << ','
        << format17(r.t) << ',' << r.j << '\n';
}

template <class T>
std::vector<std::string> figures_impl(const RunConfig& cfg, std::ostream& log) {
  ensure_dir(cfg.output_dir);
  const auto [u, v] = cfg.uv_pairs.front();
  const std::string us = format17(u);
  const std::string vs = format17(v);
  std::vector<std::string> files;

  const auto ts = t_points(cfg);
  for (int jj : {2, 3}) {
    const QuotientSpec spec{theta_index(jj), u, v};
    const auto s = map_grid<T>(ts.size(), [&](std::size_t i) { return quotient<T>(spec, T(ts[i])); }, cfg.exec);
    std::vector<CsvRow> rows;
    for (std::size_t i = 0; i < ts.size(); ++i)
      rows.push_back({ts[i], "S" + std::to_string(jj), format17(s[i]), us, vs, ts[i], jj});
    files.push_back(join_path(cfg.output_dir, "fig" + std::to_string(jj - 1) + ".csv"));
    write_csv(files.back(), rows);
  }

  const auto ctx = make_context(T(cfg.fig_t));
  const auto xs = linspace(cfg.delta, 0.5 - cfg.delta, cfg.x_grid_n);
  struct XFig {
    const char* file;
    int j;
    std::vector<std::pair<const char*, std::function<T(const T&)>>> columns;
  };
  const std::vector<XFig> figs = {
      {"fig3.csv", 2,
       {{"10A1", [&](const T& x) { return T(10 * A1(wp_jet(EdgeId::NearHalf, x, ctx.mp, ctx.ed).p, ctx.ed)); }},
        {"A2", [&](const T& x) { return A2(wp_jet(EdgeId::NearHalf, x, ctx.mp, ctx.ed).p, ctx.ed); }}}},
      {"fig4.csv", 2, {{"G2", [&](const T& x) { return G2(x, ctx); }}}},
      {"fig5.csv", 3,
       {{"A1", [&](const T& x) { return A1(wp_jet(EdgeId::TopEdge, x, ctx.mp, ctx.ed).p, ctx.ed); }},
        {"A2", [&](const T& x) { return A2(wp_jet(EdgeId::TopEdge, x, ctx.mp, ctx.ed).p, ctx.ed); }}}},
      {"fig6.csv", 3, {{"G3", [&](const T& x) { return G3(x, ctx); }}}},
  };
  for (const auto& f : figs) {
    std::vector<CsvRow> rows;
    for (const auto& [name, fn] : f.columns) {
      const auto vals = map_grid<T>(xs.size(), [&](std::size_t i) { return fn(T(xs[i])); }, cfg.exec);
      for (std::size_t i = 0; i < xs.size(); ++i) rows.push_back({xs[i], name, format17(vals[i]), "", "", cfg.fig_t, f.j});
    }
    files.push_back(join_path(cfg.output_dir, f.file));
    write_csv(files.back(), rows);
  }
  for (const auto& f : files) log << "wrote " << f << '\n';
  return files;
}

template <class T>
VerificationReport conjecture_impl(const RunConfig& cfg, std::ostream& log) {
  VerificationReport rep;
  rep.label = "EVIDENCE";
  rep.config_echo = to_json(cfg);
  const auto ts = t_points(cfg);
  std::vector<CsvRow> rows;
  for (int jj = 1; jj <= 4; ++jj) {
    for (const auto& [u, v] : cfg.uv_pairs) {
      if (jj == 1 && u == 0) continue;
      const QuotientSpec spec{theta_index(jj), u, v};
      Json params = uv_json(u, v);
      params["j"] = jj;
      params["K"] = cfg.K;
      const bool shifted = jj == 1 || jj == 4;
      const std::string claim = shifted ? "(-1)^k d^k(dS/dt)/dt^k >= 0 for k = 0..K (evidence, not proof)"
                                        : "(-1)^k d^k S/dt^k >= 0 for k = 0..K (evidence, not proof)";
      rep.checks.push_back(run_check(
          "cm.j" + std::to_string(jj) + "." + uv_suffix(u, v), claim, params, cfg.timing, [&](CheckRecord& r) {
            const auto cm = cm_scan<T>(spec, ts, cfg.K, cfg.exec);
            double worst = std::numeric_limits<double>::infinity();
            Json first = Json::array();
            for (const auto& p : cm.points) {
              rows.push_back({p.t, "cm_k" + std::to_string(p.k), format17(p.value), format17(u), format17(v), p.t, jj});
              if (p.status == CmStatus::PrecisionExhausted) continue;
              worst = std::min(worst, p.scale > 0 ? p.value / p.scale : p.value);
              if (p.status == CmStatus::Violation && first.size() < 5)
                first.push_back(Json{{"t", p.t}, {"k", p.k}, {"value", p.value}});
            }
            r.worst_margin = worst;
            r.violation_count = cm.violations();
            r.params["exhausted_points"] = cm.exhausted();
            if (!first.empty()) r.params["first_violations"] = first;
            if (cm.violations() > 0) {
              r.status = CheckStatus::Fail;
            } else if (cm.exhausted() > 0) {
              r.status = CheckStatus::Error;
              r.detail = "precision exhausted at " + std::to_string(cm.exhausted()) + " points";
            } else {
              r.status = CheckStatus::Pass;
            }
          }));
    }
  }
  for (const auto& c : rep.checks) log << summary_line(c) << '\n';
  if (cfg.formats.count("csv")) {
    ensure_dir(cfg.output_dir);
    write_csv(join_path(cfg.output_dir, "conjecture_points.csv"), rows);
  }
  return rep;
}

}  // namespace

VerificationReport cmd_verify(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  require_precision(cfg.precision, max_time(cfg, true));
  VerificationReport rep;
  switch (cfg.precision) {
    case PrecisionMode::Double: rep = verify_impl<double>(cfg, log); break;
    case PrecisionMode::Extended: rep = verify_impl<long double>(cfg, log); break;
    case PrecisionMode::Multi: rep = verify_impl<Real>(cfg, log); break;
  }
  if (cfg.formats.count("json")) {
    ensure_dir(cfg.output_dir);
    write_json(rep, join_path(cfg.output_dir, "verify_report.json"));
  }
  return rep;
}

std::vector<std::string> cmd_figures(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  require_precision(cfg.precision, std::max(max_time(cfg, false), cfg.fig_t));
  switch (cfg.precision) {
    case PrecisionMode::Double: return figures_impl<double>(cfg, log);
    case PrecisionMode::Extended: return figures_impl<long double>(cfg, log);
    case PrecisionMode::Multi: break;
  }
  return figures_impl<Real>(cfg, log);
}

VerificationReport cmd_conjecture(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  require_precision(cfg.precision, max_time(cfg, false));
  VerificationReport rep;
  switch (cfg.precision) {
    case PrecisionMode::Double: rep = conjecture_impl<double>(cfg, log); break;
    case PrecisionMode::Extended: rep = conjecture_impl<long double>(cfg, log); break;
    case PrecisionMode::Multi: rep = conjecture_impl<Real>(cfg, log); break;
  }
  if (cfg.formats.count("json")) {
    ensure_dir(cfg.output_dir);
    write_json(rep, join_path(cfg.output_dir, "conjecture_report.json"));
  }
  return rep;
}

}  // namespace thetakit::app
