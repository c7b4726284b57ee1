#pragma once

// Theta quotients S_j(u, v; t) = theta_j(u/2 | i pi t) / theta_j(v/2 | i pi t)
// and their exact t-derivatives.
//
// f(x, t) = theta_j(x/2 | i pi t) solves f_t = f_xx, and in the z = x/2
// variable d^k/dt^k theta_j(z) = 4^{-k} theta_j^{(2k)}(z).  The 4^{-k} factor
// is applied in exactly one place (numerator_denominator_jets).

#include "thetakit/theta.hpp"

#include <optional>
#include <vector>

namespace thetakit {

struct QuotientSpec {
  ThetaIndex j = ThetaIndex::Two;
  double u = 0.0;
  double v = 0.0;
};

/// 0 <= u <= v < 1 (strict: u < v), and v > 0 for j = 1 so the denominator
/// does not vanish.  Throws DomainError / PoleError.
void validate(const QuotientSpec& spec, bool strict);

template <class T>
struct DerivSeries {
  int order = 0;
  std::vector<T> values;  // values[k] = d^k S / dt^k
};

/// Highest t-derivative order the exact engine accepts for scalar T: 24 for
/// the multiprecision type, 12 otherwise.
template <class T>
constexpr int max_exact_order() {
  return digits10_v<T> > 30 ? 24 : 12;
}

template <class T>
T quotient(const QuotientSpec& spec, const T& t, const std::optional<T>& tol = std::nullopt);

/// Throws PrecisionExhausted for k > max_exact_order<T>().
template <class T>
DerivSeries<T> quotient_t_derivs(const QuotientSpec& spec, const T& t, int k,
                                 const std::optional<T>& tol = std::nullopt);

/// d^2/dt^2 log S_j for j in {2, 3}; u = v gives 0.
template <class T>
T log_quotient_second_t(const QuotientSpec& spec, const T& t, const std::optional<T>& tol = std::nullopt);

/// Central difference for d^k S/dt^k, k in {1, 2}.  Throws DomainError when
/// t - k h <= 0 and PrecisionExhausted when h < 16 eps max(1, t).
template <class T>
T fd_oracle(const QuotientSpec& spec, const T& t, int k, const T& h);

}  // namespace thetakit
