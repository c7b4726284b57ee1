#pragma once

// Quantities from the convexity proofs for S_2 and S_3, as functions of the
// edge parameter x in (0, 1/2) at a fixed t.
//
// With p = wp(x - 1/2) (NearHalf) and kappa = g2 - 12 c0^2:
//   A1(p) = p (g2/2 - 6 c0^2) + g3 + 2 c0^3 + g2 c0 / 2        = (kappa/2)(p + r1)
//   A2(p) = kappa p^2 + (6 g3 + 4 g2 c0) p + 6 g3 c0 + g2 c0^2 + g2^2/4
//                                                             = kappa (p^2 + s1 p + s0)
//   F2    = 8 l1 (p - c0)^2 / p' - 4 l1^2 + 8 (p - c0) - 4 l1 p''/p' - p'''/p'
//   F2'   = 4 (l1 A2 / p'^2 + A1 / p')
//   G2    = l1 + p' (p + r1) / (2 (p^2 + s1 p + s0))
//   Q     = (p + r1)(2p + s1) / (2 (p^2 + s1 p + s0))
// l1 = theta_2'/theta_2.  F3, F3', G3 are the same expressions over the
// TopEdge jet with l1 = theta_3'/theta_3.

#include "thetakit/elliptic.hpp"

#include <optional>

namespace thetakit {

template <class T>
struct Context {
  ModularPoint<T> mp;
  ThetaNulls<T> nulls;
  EllipticData<T> ed;
  DerivedConstants<T> dc;
};

/// Throws whatever derived_constants throws when kappa or Delta fail.
template <class T>
Context<T> make_context(const T& t);

template <class T>
T A1(const T& p, const EllipticData<T>& ed);
template <class T>
T A2(const T& p, const EllipticData<T>& ed);

template <class T>
struct LemmaPair {
  T direct;
  T factorized;
};

/// A2(e1) and -4(e1-e2)(e1-e3)(c0-e1-pi^2 th3^2 th4^2)(c0-e1+pi^2 th3^2 th4^2).
template <class T>
LemmaPair<T> lemma_T(const EllipticData<T>& ed, const ThetaNulls<T>& nulls);

/// A2(e2) and 4(e1-e2)(e2-e3)((c0-e2)^2 + (e1-e2)(e2-e3)).
template <class T>
LemmaPair<T> lemma_U(const EllipticData<T>& ed);

template <class T>
T F2(const T& x, const Context<T>& ctx, double pole_margin = kDefaultPoleMargin);
template <class T>
T F2_prime(const T& x, const Context<T>& ctx, double pole_margin = kDefaultPoleMargin);
template <class T>
T G2(const T& x, const Context<T>& ctx, double pole_margin = kDefaultPoleMargin);
/// 2 l1 + p'/(p - c0) on NearHalf.
template <class T>
T nu1_check(const T& x, const Context<T>& ctx, double pole_margin = kDefaultPoleMargin);

/// Throws SingularityError where p^2 + s1 p + s0 = 0.
template <class T>
T Qfun(const T& p, const DerivedConstants<T>& dc);

template <class T>
T F3(const T& x, const Context<T>& ctx);
template <class T>
T F3_prime(const T& x, const Context<T>& ctx);
template <class T>
T G3(const T& x, const Context<T>& ctx);

/// 16 (e3 - c0)^3 / (g2 - 12 e3^2) - 12 c0
template <class T>
T F3_at_half(const EllipticData<T>& ed);

template <class T>
struct RootData {
  T a1, a2, x0;
  T wp_target_a1, wp_target_a2, wp_target_x0;
};

/// a1 = wp^{-1}(-r1), a2 = wp^{-1}(P2) on NearHalf.  Throws
/// VerificationFailure unless 0 < a1 < a2 < 1/2.  x0 is left at zero.
template <class T>
RootData<T> roots_a1_a2(const Context<T>& ctx, const T& tol);

/// x0 = wp^{-1}(-C / (2 mcoef)) on TopEdge.  Throws VerificationFailure when
/// mcoef >= 0 or the target is outside (e3, e2).
template <class T>
T root_x0(const Context<T>& ctx, const T& tol);

/// Bisection tolerance used by the CLI and acceptance checks.
template <class T>
T default_root_tol() {
  return digits10_v<T> > 30 ? T(1e-40) : T(4) * eps_v<T>();
}

}  // namespace thetakit
