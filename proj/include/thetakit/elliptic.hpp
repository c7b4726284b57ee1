#pragma once

// Weierstrass data for the lattice with periods 1 and tau = i*pi*t.
//
//   e1 - e3 = pi^2 theta_3^4,  e1 - e2 = pi^2 theta_4^4,  e1 + e2 + e3 = 0
//   g2 = -4(e1 e2 + e2 e3 + e3 e1),  g3 = 4 e1 e2 e3
//   c0 = -(pi^2/3)(1 - 24 sum_{n>=1} n q^{2n} / (1 - q^{2n}))
//
// wp on the two edges used by the convexity proofs comes from theta
// log-derivatives:
//   NearHalf: wp(x - 1/2)         = c0 - (log theta_2)''(x)
//   TopEdge:  wp(x + (tau - 1)/2) = c0 - (log theta_3)''(x)
// for x in (0, 1/2).  Derivatives are taken with respect to x.

#include "thetakit/theta.hpp"

#include <optional>

namespace thetakit {

template <class T>
struct ThetaNulls {
  T th2, th3, th4;
};

template <class T>
struct EllipticData {
  T c0, e1, e2, e3, g2, g3;
};

/// kappa = g2 - 12 c0^2 is the common denominator of r1, s1, s0 and mcoef.
template <class T>
struct DerivedConstants {
  T kappa;
  T delta;
  T p1, p2;  // P1 < P2, roots of A2
  T r1, s1, s0;
  T cconst;
  T mcoef;
};

enum class EdgeId { NearHalf, TopEdge };
const char* to_string(EdgeId edge);

template <class T>
struct WpJet {
  T p, p1, p2, p3;
};

/// Jet plus the first log-derivative l1 = theta'/theta of the edge's theta
/// function at x (theta_2 for NearHalf, theta_3 for TopEdge).
template <class T>
struct EdgeSample {
  T x;
  T l1;
  WpJet<T> jet;
};

inline constexpr double kDefaultPoleMargin = 1e-3;
inline constexpr double kOdeResidualBound = 1e-9;

template <class T>
ThetaNulls<T> theta_nulls(const ModularPoint<T>& mp, const std::optional<T>& tol = std::nullopt);

template <class T>
T eisenstein_c0(const ModularPoint<T>& mp, const std::optional<T>& tol = std::nullopt);

template <class T>
EllipticData<T> half_periods_and_invariants(const ModularPoint<T>& mp,
                                            const std::optional<T>& tol = std::nullopt);

/// Throws InvariantViolation if kappa <= 0 or delta <= 0 beyond rounding, and
/// PrecisionExhausted if either sign is not resolved by the working precision.
template <class T>
DerivedConstants<T> derived_constants(const EllipticData<T>& ed);

/// Throws DomainError outside (0, 1/2), PoleError for NearHalf within
/// pole_margin of 1/2, CrossValidationFailure when the ODE residual exceeds
/// kOdeResidualBound.
template <class T>
EdgeSample<T> edge_sample(EdgeId edge, const T& x, const ModularPoint<T>& mp, const EllipticData<T>& ed,
                          const std::optional<T>& tol = std::nullopt, double pole_margin = kDefaultPoleMargin);

template <class T>
WpJet<T> wp_jet(EdgeId edge, const T& x, const ModularPoint<T>& mp, const EllipticData<T>& ed,
                const std::optional<T>& tol = std::nullopt, double pole_margin = kDefaultPoleMargin);

/// |p1^2 - (4p^3 - g2 p - g3)| / max(1, p1^2)
template <class T>
T ode_residual(const WpJet<T>& jet, const EllipticData<T>& ed);

/// x in (0, 1/2) with wp(edge point of x) = target, by bisection.  wp
/// increases along NearHalf and decreases along TopEdge.  Stops when the
/// bracket width is <= tol * max(1, |x|) or after 200 halvings; returns the
/// lower end of the final bracket.  Throws RangeError when the target is
/// outside (e1, inf) for NearHalf or (e3, e2) for TopEdge.
template <class T>
T invert_wp(EdgeId edge, const T& target, const ModularPoint<T>& mp, const EllipticData<T>& ed, const T& tol);

/// Four-term Laurent expansion of wp(x - 1/2) about the pole:
///   1/w^2 + g2 w^2/20 + g3 w^4/28 + g2^2 w^6/1200,  w = 1/2 - x.
template <class T>
T wp_laurent_near_half(const T& x, const EllipticData<T>& ed);

}  // namespace thetakit
