#pragma once

// Sign scans, the complete-monotonicity scan and endpoint limits.

#include "thetakit/kernels.hpp"
#include "thetakit/proofcheck.hpp"
#include "thetakit/quotients.hpp"

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace thetakit {

enum class ClaimedSign { Positive, Negative, NonNegative, NonPositive };
std::string_view to_string(ClaimedSign s);

struct Violation {
  double at;
  double value;
};

struct SignScanReport {
  std::string function_id;
  std::string claim;
  ClaimedSign claimed_sign = ClaimedSign::Positive;
  double lo = 0, hi = 0, delta = 0;
  int grid_points = 0;
  double worst_margin = 0;  // min over the grid of sign * value
  std::vector<Violation> violations;
  bool pass() const { return violations.empty(); }
};

/// Signed margin of `value` for the claim: value for Positive/NonNegative,
/// -value otherwise.
double signed_margin(ClaimedSign s, double value);
bool satisfies(ClaimedSign s, double value);

/// Scan arbitrary points.  Values are compared at their exact sign; no
/// tolerance floor is applied.
SignScanReport scan_points(std::string function_id, std::string claim, ClaimedSign sign,
                           const std::vector<double>& points, const std::function<double(double)>& f,
                           Execution exec = Execution::Parallel);

/// Uniform grid of n points on [lo + delta, hi - delta].
SignScanReport sign_scan(std::string function_id, std::string claim, ClaimedSign sign, double lo, double hi,
                         int n, double delta, const std::function<double(double)>& f,
                         Execution exec = Execution::Parallel);

// Named functions of the edge parameter x at fixed t.
template <class T>
using XFunction = std::function<T(const T& x, const Context<T>& ctx, double pole_margin)>;

/// Parity about the endpoints fixes which powers Richardson eliminates:
/// even functions expand in w^2, w^4, ..., odd ones in w, w^3, ...
enum class Parity { Even, Odd, None };

template <class T>
struct XFunctionEntry {
  XFunction<T> f;
  Parity parity = Parity::None;
};

/// Throws UnknownFunction for ids not in x_function_ids().
template <class T>
XFunctionEntry<T> x_function(std::string_view id);
std::vector<std::string> x_function_ids();

template <class T>
SignScanReport sign_scan_x(std::string_view id, std::string claim, const Context<T>& ctx, ClaimedSign sign,
                           double lo, double hi, int n, double delta, Execution exec = Execution::Parallel);

// Named functions of t for a quotient spec.
template <class T>
using TFunction = std::function<T(const T& t, const QuotientSpec& spec)>;

template <class T>
TFunction<T> t_function(std::string_view id);
std::vector<std::string> t_function_ids();

template <class T>
SignScanReport sign_scan_t(std::string_view id, std::string claim, const QuotientSpec& spec, ClaimedSign sign,
                           const std::vector<double>& t_grid, Execution exec = Execution::Parallel);

enum class CmStatus { Pass, Violation, PrecisionExhausted };
std::string_view to_string(CmStatus s);

struct CmPoint {
  double t = 0;
  int k = 0;
  double value = 0;  // (-1)^k d^k S/dt^k, or (-1)^k d^{k+1} S/dt^{k+1} for j = 1, 4
  double scale = 0;
  CmStatus status = CmStatus::Pass;
  std::string detail;
};

struct CmReport {
  QuotientSpec spec;
  int K = 0;
  std::vector<CmPoint> points;  // t-major, k-minor
  int violations() const;
  int exhausted() const;
  bool pass() const { return violations() == 0 && exhausted() == 0; }
};

/// Relative width of the zero band for the non-strict conjecture inequalities.
inline constexpr double kCmZeroBand = 1e-14;

/// (-1)^k d^k S_j/dt^k >= 0 for j in {2, 3}, (-1)^k d^k (dS_j/dt)/dt^k >= 0
/// for j in {1, 4}, k = 0..K.  A value counts as zero within kCmZeroBand
/// times the largest |d^i S/dt^i|, i <= checked order, at that t.
template <class T>
CmReport cm_scan(const QuotientSpec& spec, const std::vector<double>& t_grid, int K,
                 Execution exec = Execution::Parallel);

struct RichardsonConfig {
  int levels = 6;
  double ratio = 0.5;
  double h0 = 1e-2;
  int first_power = 2;
  int power_step = 2;
};

template <class T>
struct LimitEstimate {
  T value;
  T error;  // |last diagonal - previous diagonal|
  std::vector<T> samples;
};

/// Extrapolates f(h) to h -> 0 along h0, h0 r, h0 r^2, ...
template <class T>
LimitEstimate<T> richardson(const std::function<T(const T&)>& f, const RichardsonConfig& cfg);

enum class Endpoint { Zero, Half };

/// Limit of the named x-function at the endpoint.  Throws LimitFailure when
/// the error estimate exceeds tol * max(1, |limit|) or a sample is not finite.
template <class T>
LimitEstimate<T> endpoint_limit(std::string_view id, Endpoint endpoint, const Context<T>& ctx, double tol,
                                RichardsonConfig cfg = {});

}  // namespace thetakit
