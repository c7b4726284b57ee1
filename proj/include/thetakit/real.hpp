#pragma once

// Scalar types used by thetakit.
//
// Every numerical routine is a template over the scalar T and is explicitly
// instantiated for the three types below.  `Real` is the default: the proof
// quantities at large t are differences of O(1) numbers that agree to ~q^4,
// so certifying their signs needs far more digits than long double carries.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <string_view>

namespace thetakit {

inline constexpr unsigned kWorkingDigits = 160;

using Real = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<kWorkingDigits, boost::multiprecision::allocate_stack>,
    boost::multiprecision::et_off>;

#define THETAKIT_FOR_EACH_SCALAR(X) \
  X(double)                         \
  X(long double)                    \
  X(::thetakit::Real)

enum class PrecisionMode { Double, Extended, Multi };

/// Reads THETAKIT_PRECISION (double | extended | multi); unset means multi.
/// Throws ConfigError for any other value.
PrecisionMode precision_mode_from_env();
PrecisionMode parse_precision_mode(std::string_view name);
std::string_view to_string(PrecisionMode mode);

template <class T>
inline T pi_v() {
  return boost::math::constants::pi<T>();
}

template <class T>
inline T eps_v() {
  return std::numeric_limits<T>::epsilon();
}

template <class T>
inline constexpr int digits10_v = std::numeric_limits<T>::digits10;

template <class T>
inline double to_double(const T& x) {
  return static_cast<double>(x);
}

template <class T>
inline T from_double(double x) {
  return T(x);
}

/// 17 significant digits, "%.17g" style.  Values are rounded through double,
/// which is what downstream CSV/JSON consumers read back.
template <class T>
inline std::string format17(const T& x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", to_double(x));
  return buf;
}

/// Decimal digits lost to cancellation in the proof quantities at nome
/// exponent log10(1/q).  Fitted against 300-digit reference runs: the deepest
/// cancellations (F3', G3 on the top edge) scale like q^4.
inline double cancellation_digits(double log10_inv_q) { return 12.0 + 4.5 * log10_inv_q; }

/// Digits that must survive cancellation for the 1e-12 identity checks.
inline constexpr double kRequiredSurvivingDigits = 15.0;

}  // namespace thetakit
