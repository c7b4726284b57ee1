#pragma once

// Jacobi theta functions on the imaginary axis tau = i*pi*t, i.e. nome
// q = exp(-pi^2 t), evaluated by direct summation of their Fourier series.
//
//   theta_1(z) = 2 sum_{n>=0} (-1)^n q^{(n+1/2)^2} sin((2n+1) pi z)
//   theta_2(z) = 2 sum_{n>=0}        q^{(n+1/2)^2} cos((2n+1) pi z)
//   theta_3(z) = 1 + 2 sum_{n>=1}        q^{n^2} cos(2 n pi z)
//   theta_4(z) = 1 + 2 sum_{n>=1} (-1)^n q^{n^2} cos(2 n pi z)
//
// z-derivatives are summed termwise.  Every evaluation reports a bound on the
// truncated tail; the bound is certified (up to rounding) because the term
// ratio q^{2n+1} ((n+1)/n)^d is below 1/2 at the stopping index.

#include "thetakit/real.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace thetakit {

enum class ThetaIndex { One = 1, Two = 2, Three = 3, Four = 4 };

/// Throws DomainError unless 1 <= j <= 4.
ThetaIndex theta_index(int j);
inline int to_int(ThetaIndex j) { return static_cast<int>(j); }

/// The pair (t, q = exp(-pi^2 t)).  Only constructible from t, so q always
/// matches t.  For huge t the nome may underflow to zero in narrow scalar
/// types; the series then reduce to their leading terms.
template <class T>
class ModularPoint {
 public:
  const T& t() const { return t_; }
  const T& q() const { return q_; }
  /// log10(1/q) = pi^2 t / ln 10, computed without forming q.
  double log10_inv_q() const;

  template <class U>
  friend ModularPoint<U> nome_from_time(const U& t);

 private:
  ModularPoint(T t, T q) : t_(std::move(t)), q_(std::move(q)) {}
  T t_;
  T q_;
};

/// Throws DomainError for t <= 0 or non-finite t.
template <class T>
ModularPoint<T> nome_from_time(const T& t);

template <class T>
struct ThetaEval {
  T value;
  int deriv_order = 0;
  T tail_bound;      // |value - exact| <= tail_bound (truncation only)
  int terms_used = 0;
};

/// All z-derivatives of orders 0..max_order from one pass over the series.
template <class T>
struct ThetaJet {
  std::vector<T> values;       // values[d] = theta_j^{(d)}(z)
  std::vector<T> tail_bounds;  // per order
  std::vector<T> abs_sums;     // sum of |terms| per order, the rounding scale
  int terms_used = 0;
};

/// Without `tol` the series is summed until the tail is below one ulp of the
/// running absolute sum.  With `tol` the tail is driven below tol and
/// PrecisionExhausted is thrown if rounding alone could exceed tol.
template <class T>
ThetaJet<T> theta_jet(ThetaIndex j, const T& z, const ModularPoint<T>& mp, int max_order,
                      const std::optional<T>& tol = std::nullopt);

template <class T>
ThetaEval<T> theta_deriv(ThetaIndex j, const T& z, const ModularPoint<T>& mp, int d,
                         const std::optional<T>& tol = std::nullopt);

/// theta_j(0).  theta_1(0) = 0 identically, so j = One is rejected.
template <class T>
ThetaEval<T> theta_null(ThetaIndex j, const ModularPoint<T>& mp,
                        const std::optional<T>& tol = std::nullopt);

/// Sum of exactly `terms` series terms (the constant of theta_3/4 counts as
/// one).  Used to audit tail bounds.
template <class T>
T theta_partial_sum(ThetaIndex j, const T& z, const ModularPoint<T>& mp, int d, int terms);

/// Points closer than this to a real zero of theta_1 / theta_2 are refused.
inline constexpr double kThetaZeroExclusion = 1e-8;

/// First m derivatives of x -> log theta_j(x) at z, from the theta jet via
/// g^{(k)} = r_k - sum_{i=1}^{k-1} C(k-1, i-1) g^{(i)} r_{k-i},  r_k = theta^{(k)}/theta.
/// Throws PoleError within kThetaZeroExclusion of a zero.
template <class T>
std::vector<T> log_theta_derivs(ThetaIndex j, const T& z, const ModularPoint<T>& mp, int m,
                                const std::optional<T>& tol = std::nullopt);

/// Distance from z to the nearest real zero of theta_j (infinite for j = 3, 4).
template <class T>
T distance_to_theta_zero(ThetaIndex j, const T& z);

}  // namespace thetakit
