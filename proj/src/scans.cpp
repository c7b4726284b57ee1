#include "thetakit/scans.hpp"

#include "thetakit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace thetakit {

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw DomainError("grid needs at least one point");
  if (n == 1) return {lo};
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
  out.back() = hi;
  return out;
}

std::vector<double> logspace(double lo, double hi, int n) {
  if (!(lo > 0) || !(hi > 0)) throw DomainError("log grid needs positive bounds");
  auto out = linspace(std::log(lo), std::log(hi), n);
  for (auto& v : out) v = std::exp(v);
  out.front() = lo;
  if (n > 1) out.back() = hi;
  return out;
}

std::string_view to_string(ClaimedSign s) {
  switch (s) {
    case ClaimedSign::Positive: return "positive";
    case ClaimedSign::Negative: return "negative";
    case ClaimedSign::NonNegative: return "nonnegative";
    case ClaimedSign::NonPositive: return "nonpositive";
  }
  return "positive";
}

double signed_margin(ClaimedSign s, double value) {
  return (s == ClaimedSign::Positive || s == ClaimedSign::NonNegative) ? value : -value;
}

bool satisfies(ClaimedSign s, double value) {
  const double m = signed_margin(s, value);
  return (s == ClaimedSign::Positive || s == ClaimedSign::Negative) ? m > 0 : m >= 0;
}

SignScanReport scan_points(std::string function_id, std::string claim, ClaimedSign sign,
                           const std::vector<double>& points, const std::function<double(double)>& f,
                           Execution exec) {
  const auto values = map_grid<double>(points.size(), [&](std::size_t i) { return f(points[i]); }, exec);
  SignScanReport r;
  r.function_id = std::move(function_id);
  r.claim = std::move(claim);
  r.claimed_sign = sign;
  r.grid_points = static_cast<int>(points.size());
  if (!points.empty()) {
    r.lo = points.front();
    r.hi = points.back();
  }
  r.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double m = std::isnan(values[i]) ? -std::numeric_limits<double>::infinity() : signed_margin(sign, values[i]);
    r.worst_margin = std::min(r.worst_margin, m);
    if (std::isnan(values[i]) || !satisfies(sign, values[i])) r.violations.push_back({points[i], values[i]});
  }
  return r;
}

SignScanReport sign_scan(std::string function_id, std::string claim, ClaimedSign sign, double lo, double hi,
                         int n, double delta, const std::function<double(double)>& f, Execution exec) {
  if (n < 2) throw DomainError("sign scan needs at least 2 grid points");
  if (!(lo + delta < hi - delta)) throw DomainError("sign scan interval is empty after the margin");
  auto r = scan_points(std::move(function_id), std::move(claim), sign, linspace(lo + delta, hi - delta, n), f, exec);
  r.lo = lo;
  r.hi = hi;
  r.delta = delta;
  return r;
}

namespace {

template <class T>
EdgeSample<T> near(const T& x, const Context<T>& c, double margin) {
  return edge_sample(EdgeId::NearHalf, x, c.mp, c.ed, std::optional<T>{}, margin);
}

template <class T>
EdgeSample<T> top(const T& x, const Context<T>& c) {
  return edge_sample(EdgeId::TopEdge, x, c.mp, c.ed);
}

template <class T>
const std::map<std::string, XFunctionEntry<T>, std::less<>>& x_registry() {
  using E = XFunctionEntry<T>;
  using C = Context<T>;
  static const std::map<std::string, E, std::less<>> reg = {
      {"F2", E{[](const T& x, const C& c, double m) { return F2(x, c, m); }, Parity::Even}},
      {"F2_prime", E{[](const T& x, const C& c, double m) { return F2_prime(x, c, m); }, Parity::Odd}},
      {"G2", E{[](const T& x, const C& c, double m) { return G2(x, c, m); }, Parity::Odd}},
      {"nu1", E{[](const T& x, const C& c, double m) { return nu1_check(x, c, m); }, Parity::None}},
      {"l1_theta2", E{[](const T& x, const C& c, double m) { return near(x, c, m).l1; }, Parity::Odd}},
      {"wp_near", E{[](const T& x, const C& c, double m) { return near(x, c, m).jet.p; }, Parity::Even}},
      {"ode_near",
       E{[](const T& x, const C& c, double m) { return ode_residual(near(x, c, m).jet, c.ed); }, Parity::None}},
      {"A1_near", E{[](const T& x, const C& c, double m) { return A1(near(x, c, m).jet.p, c.ed); }, Parity::Even}},
      {"A2_near", E{[](const T& x, const C& c, double m) { return A2(near(x, c, m).jet.p, c.ed); }, Parity::Even}},
      {"Q_near", E{[](const T& x, const C& c, double m) { return Qfun(near(x, c, m).jet.p, c.dc); }, Parity::Even}},
      {"near_p_plus_r1",
       E{[](const T& x, const C& c, double m) { return T(near(x, c, m).jet.p + c.dc.r1); }, Parity::Even}},
      {"near_quad",
       E{[](const T& x, const C& c, double m) {
           const T p = near(x, c, m).jet.p;
           return T(p * p + c.dc.s1 * p + c.dc.s0);
         },
         Parity::Even}},
      {"near_2p_plus_s1",
       E{[](const T& x, const C& c, double m) { return T(2 * near(x, c, m).jet.p + c.dc.s1); }, Parity::Even}},
      {"near_r2",
       E{[](const T& x, const C& c, double m) {
           using std::sqrt;
           return T(2 * near(x, c, m).jet.p + c.dc.s1 - sqrt(c.dc.delta) / c.dc.kappa);
         },
         Parity::Even}},
      {"near_r3",
       E{[](const T& x, const C& c, double m) {
           const T p = near(x, c, m).jet.p;
           return T((p + c.dc.r1) - (p + c.dc.s1 / 2));
         },
         Parity::Even}},
      {"F3", E{[](const T& x, const C& c, double) { return F3(x, c); }, Parity::Even}},
      {"F3_prime", E{[](const T& x, const C& c, double) { return F3_prime(x, c); }, Parity::Odd}},
      {"G3", E{[](const T& x, const C& c, double) { return G3(x, c); }, Parity::Odd}},
      {"wp_top", E{[](const T& x, const C& c, double) { return top(x, c).jet.p; }, Parity::Even}},
      {"ode_top", E{[](const T& x, const C& c, double) { return ode_residual(top(x, c).jet, c.ed); }, Parity::None}},
      {"A1_top", E{[](const T& x, const C& c, double) { return A1(top(x, c).jet.p, c.ed); }, Parity::Even}},
      {"A2_top", E{[](const T& x, const C& c, double) { return A2(top(x, c).jet.p, c.ed); }, Parity::Even}},
      {"one_minus_Q_top",
       E{[](const T& x, const C& c, double) { return T(1 - Qfun(top(x, c).jet.p, c.dc)); }, Parity::Even}},
      {"qcal_top",
       E{[](const T& x, const C& c, double) {
           const T p = top(x, c).jet.p;
           return T((2 * p * c.dc.mcoef + c.dc.cconst) / (2 * (p * p + c.dc.s1 * p + c.dc.s0)));
         },
         Parity::Even}},
  };
  return reg;
}

template <class T>
const std::map<std::string, TFunction<T>, std::less<>>& t_registry() {
  using F = TFunction<T>;
  static const std::map<std::string, F, std::less<>> reg = {
      {"S", F{[](const T& t, const QuotientSpec& s) { return quotient(s, t); }}},
      {"dS_dt", F{[](const T& t, const QuotientSpec& s) { return quotient_t_derivs(s, t, 1).values[1]; }}},
      {"d2S_dt2", F{[](const T& t, const QuotientSpec& s) { return quotient_t_derivs(s, t, 2).values[2]; }}},
      {"d2logS_dt2", F{[](const T& t, const QuotientSpec& s) { return log_quotient_second_t(s, t); }}},
      {"lemma_T", F{[](const T& t, const QuotientSpec&) {
         const auto mp = nome_from_time(t);
         return lemma_T(half_periods_and_invariants(mp), theta_nulls(mp)).direct;
       }}},
      {"lemma_U", F{[](const T& t, const QuotientSpec&) {
         return lemma_U(half_periods_and_invariants(nome_from_time(t))).direct;
       }}},
      {"kappa", F{[](const T& t, const QuotientSpec&) {
         const auto ed = half_periods_and_invariants(nome_from_time(t));
         return T(ed.g2 - 12 * ed.c0 * ed.c0);
       }}},
      {"Delta", F{[](const T& t, const QuotientSpec&) {
         return derived_constants(half_periods_and_invariants(nome_from_time(t))).delta;
       }}},
  };
  return reg;
}

template <class Map>
std::vector<std::string> keys(const Map& m) {
  std::vector<std::string> out;
  for (const auto& [k, v] : m) out.push_back(k);
  return out;
}

}  // namespace

template <class T>
XFunctionEntry<T> x_function(std::string_view id) {
  const auto& reg = x_registry<T>();
  const auto it = reg.find(id);
  if (it == reg.end()) throw UnknownFunction("unknown x-function '" + std::string(id) + "'");
  return it->second;
}

std::vector<std::string> x_function_ids() { return keys(x_registry<double>()); }

template <class T>
SignScanReport sign_scan_x(std::string_view id, std::string claim, const Context<T>& ctx, ClaimedSign sign,
                           double lo, double hi, int n, double delta, Execution exec) {
  const auto entry = x_function<T>(id);
  return sign_scan(
      std::string(id), std::move(claim), sign, lo, hi, n, delta,
      [&](double x) { return to_double(entry.f(T(x), ctx, kDefaultPoleMargin)); }, exec);
}

template <class T>
TFunction<T> t_function(std::string_view id) {
  const auto& reg = t_registry<T>();
  const auto it = reg.find(id);
  if (it == reg.end()) throw UnknownFunction("unknown t-function '" + std::string(id) + "'");
  return it->second;
}

std::vector<std::string> t_function_ids() { return keys(t_registry<double>()); }

template <class T>
SignScanReport sign_scan_t(std::string_view id, std::string claim, const QuotientSpec& spec, ClaimedSign sign,
                           const std::vector<double>& t_grid, Execution exec) {
  const auto f = t_function<T>(id);
  return scan_points(
      std::string(id), std::move(claim), sign, t_grid, [&](double t) { return to_double(f(T(t), spec)); }, exec);
}

std::string_view to_string(CmStatus s) {
  switch (s) {
    case CmStatus::Pass: return "pass";
    case CmStatus::Violation: return "violation";
    case CmStatus::PrecisionExhausted: return "precision-exhausted";
  }
  return "pass";
}

int CmReport::violations() const {
  return static_cast<int>(
      std::count_if(points.begin(), points.end(), [](const CmPoint& p) { return p.status == CmStatus::Violation; }));
}

int CmReport::exhausted() const {
  return static_cast<int>(std::count_if(points.begin(), points.end(), [](const CmPoint& p) {
    return p.status == CmStatus::PrecisionExhausted;
  }));
}

template <class T>
CmReport cm_scan(const QuotientSpec& spec, const std::vector<double>& t_grid, int K, Execution exec) {
  using std::abs;
  validate(spec, true);
  if (spec.j == ThetaIndex::One && !(spec.u > 0)) throw DomainError("j = 1 needs u > 0");
  if (K < 0) throw DomainError("order K must be >= 0");
  const int off = (spec.j == ThetaIndex::One || spec.j == ThetaIndex::Four) ? 1 : 0;
  const auto per_t = map_grid<std::vector<CmPoint>>(
      t_grid.size(),
      [&](std::size_t i) {
        std::vector<CmPoint> pts(static_cast<std::size_t>(K) + 1);
        for (int k = 0; k <= K; ++k) {
          pts[k].t = t_grid[i];
          pts[k].k = k;
        }
        try {
          const auto d = quotient_t_derivs<T>(spec, T(t_grid[i]), K + off);
          T scale(0);
          for (int k = 0; k <= K; ++k) {
            for (int m = 0; m <= k + off; ++m) scale = abs(d.values[m]) > scale ? abs(d.values[m]) : scale;
            const T value = (k % 2 == 0 ? T(1) : T(-1)) * d.values[k + off];
            pts[k].value = to_double(value);
            pts[k].scale = to_double(scale);
            pts[k].status = value >= -T(kCmZeroBand) * scale ? CmStatus::Pass : CmStatus::Violation;
          }
        } catch (const PrecisionExhausted& e) {
          for (auto& p : pts) {
            p.status = CmStatus::PrecisionExhausted;
            p.detail = e.what();
          }
        }
        return pts;
      },
      exec);
  CmReport r;
  r.spec = spec;
  r.K = K;
  for (const auto& v : per_t) r.points.insert(r.points.end(), v.begin(), v.end());
  return r;
}

template <class T>
LimitEstimate<T> richardson(const std::function<T(const T&)>& f, const RichardsonConfig& cfg) {
  using std::abs;
  if (cfg.levels < 2) throw DomainError("Richardson needs at least 2 levels");
  const auto n = static_cast<std::size_t>(cfg.levels);
  LimitEstimate<T> out;
  out.samples.resize(n);
  std::vector<std::vector<T>> tab(n);
  T h(cfg.h0);
  for (std::size_t i = 0; i < n; ++i) {
    out.samples[i] = f(h);
    tab[i].resize(i + 1);
    tab[i][0] = out.samples[i];
    for (std::size_t k = 1; k <= i; ++k) {
      const int p = cfg.first_power + static_cast<int>(k - 1) * cfg.power_step;
      const T rp = T(std::pow(cfg.ratio, p));
      tab[i][k] = (tab[i][k - 1] - rp * tab[i - 1][k - 1]) / (1 - rp);
    }
    h *= T(cfg.ratio);
  }
  out.value = tab[n - 1][n - 1];
  out.error = abs(tab[n - 1][n - 1] - tab[n - 2][n - 2]);
  return out;
}

template <class T>
LimitEstimate<T> endpoint_limit(std::string_view id, Endpoint endpoint, const Context<T>& ctx, double tol,
                                RichardsonConfig cfg) {
  using std::abs;
  using std::isfinite;
  const auto entry = x_function<T>(id);
  if (entry.parity == Parity::Even) {
    cfg.first_power = 2;
    cfg.power_step = 2;
  } else if (entry.parity == Parity::Odd) {
    cfg.first_power = 1;
    cfg.power_step = 2;
  } else {
    cfg.first_power = 1;
    cfg.power_step = 1;
  }
  const std::function<T(const T&)> f = [&](const T& h) {
    const T x = endpoint == Endpoint::Zero ? h : T(T(0.5) - h);
    return entry.f(x, ctx, 0.0);
  };
  auto est = richardson<T>(f, cfg);
  const char* where = endpoint == Endpoint::Zero ? "0" : "1/2";
  for (const auto& s : est.samples) {
    if (!isfinite(s)) throw LimitFailure(std::string(id) + " at " + where + ": non-finite sample");
  }
  const T bound = T(tol) * (abs(est.value) > 1 ? abs(est.value) : T(1));
  if (!isfinite(est.value) || est.error > bound) {
    std::ostringstream os;
    os << id << " at " << where << ": extrapolated " << to_double(est.value) << " with error estimate "
       << to_double(est.error) << " > " << to_double(bound);
    throw LimitFailure(os.str());
  }
  return est;
}

#define THETAKIT_INSTANTIATE(T)                                                                                 \
  template XFunctionEntry<T> x_function<T>(std::string_view);                                                   \
  template SignScanReport sign_scan_x<T>(std::string_view, std::string, const Context<T>&, ClaimedSign, double, \
                                         double, int, double, Execution);                                       \
  template TFunction<T> t_function<T>(std::string_view);                                                        \
  template SignScanReport sign_scan_t<T>(std::string_view, std::string, const QuotientSpec&, ClaimedSign,       \
                                         const std::vector<double>&, Execution);                                \
  template CmReport cm_scan<T>(const QuotientSpec&, const std::vector<double>&, int, Execution);               \
  template LimitEstimate<T> richardson<T>(const std::function<T(const T&)>&, const RichardsonConfig&);          \
  template LimitEstimate<T> endpoint_limit<T>(std::string_view, Endpoint, const Context<T>&, double,            \
                                              RichardsonConfig);
THETAKIT_FOR_EACH_SCALAR(THETAKIT_INSTANTIATE)
#undef THETAKIT_INSTANTIATE

}  // namespace thetakit
