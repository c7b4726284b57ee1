#include "thetakit/elliptic.hpp"

#include "thetakit/errors.hpp"

#include <cmath>
#include <sstream>

namespace thetakit {

const char* to_string(EdgeId edge) { return edge == EdgeId::NearHalf ? "near-half" : "top-edge"; }

template <class T>
ThetaNulls<T> theta_nulls(const ModularPoint<T>& mp, const std::optional<T>& tol) {
  return ThetaNulls<T>{theta_null(ThetaIndex::Two, mp, tol).value, theta_null(ThetaIndex::Three, mp, tol).value,
                       theta_null(ThetaIndex::Four, mp, tol).value};
}

template <class T>
T eisenstein_c0(const ModularPoint<T>& mp, const std::optional<T>& tol) {
  const T pi = pi_v<T>();
  const T Q = mp.q() * mp.q();
  const T half(0.5);
  // Term n is n Q^n / (1 - Q^n); successive ratios are below (n+1)/n * Q.
  const T scale = 8 * pi * pi;
  T sum(0);
  T qn = Q;
  for (int n = 1;; ++n) {
    if (n > 1'000'000) throw PrecisionExhausted("Eisenstein series did not converge");
    const T term = T(n) * qn / (1 - qn);
    const T ratio = T(n + 1) / T(n) * Q;
    if (ratio <= half) {
      const T tail = term / (1 - ratio);
      const T target = tol ? T(*tol / scale) : T(eps_v<T>() * (sum + 1));
      if (tail <= target) break;
    }
    sum += term;
    qn *= Q;
  }
  return -(pi * pi / 3) * (1 - 24 * sum);
}

template <class T>
EllipticData<T> half_periods_and_invariants(const ModularPoint<T>& mp, const std::optional<T>& tol) {
  const auto nulls = theta_nulls(mp, tol);
  const T pi2 = pi_v<T>() * pi_v<T>();
  const T a = pi2 * nulls.th3 * nulls.th3 * nulls.th3 * nulls.th3;  // e1 - e3
  const T b = pi2 * nulls.th4 * nulls.th4 * nulls.th4 * nulls.th4;  // e1 - e2
  EllipticData<T> ed;
  ed.e1 = (a + b) / 3;
  ed.e2 = ed.e1 - b;
  ed.e3 = ed.e1 - a;
  ed.g2 = -4 * (ed.e1 * ed.e2 + ed.e2 * ed.e3 + ed.e3 * ed.e1);
  ed.g3 = 4 * ed.e1 * ed.e2 * ed.e3;
  ed.c0 = eisenstein_c0(mp, tol);
  return ed;
}

namespace {

template <class T>
void certify_positive(const T& value, const T& err, const char* claim, const char* name) {
  if (value > err) return;
  std::ostringstream os;
  os << name << " = " << to_double(value) << " with rounding bound " << to_double(err);
  if (value <= -err) throw InvariantViolation(claim, os.str());
  throw PrecisionExhausted(os.str() + ": sign not resolved at working precision");
}

}  // namespace

template <class T>
DerivedConstants<T> derived_constants(const EllipticData<T>& ed) {
  using std::abs;
  using std::sqrt;
  const T& c0 = ed.c0;
  const T& g2 = ed.g2;
  const T& g3 = ed.g3;
  const T eps = eps_v<T>();

  DerivedConstants<T> dc;
  dc.kappa = g2 - 12 * c0 * c0;
  const T err_kappa = 64 * eps * (abs(g2) + 12 * c0 * c0);
  certify_positive(dc.kappa, err_kappa, "g2 - 12 c0^2 > 0", "g2 - 12 c0^2");

  const T b = 6 * g3 + 4 * g2 * c0;
  const T c = 6 * g3 * c0 + g2 * c0 * c0 + g2 * g2 / 4;
  dc.delta = b * b - 4 * dc.kappa * c;
  const T b_abs = 6 * abs(g3) + 4 * abs(g2 * c0);
  const T c_abs = 6 * abs(g3 * c0) + abs(g2) * c0 * c0 + g2 * g2 / 4;
  const T err_delta = 64 * eps * (b_abs * b_abs + 4 * (abs(g2) + 12 * c0 * c0) * c_abs);
  certify_positive(dc.delta, err_delta, "discriminant of A2 is positive", "Delta");

  const T root = sqrt(dc.delta);
  dc.p1 = (-b - root) / (2 * dc.kappa);
  dc.p2 = (-b + root) / (2 * dc.kappa);
  dc.r1 = (2 * g3 + 4 * c0 * c0 * c0 + g2 * c0) / dc.kappa;
  dc.s1 = b / dc.kappa;
  dc.s0 = c / dc.kappa;
  dc.cconst = 2 * dc.s0 - dc.s1 * dc.r1;
  dc.mcoef = (g3 + g2 * c0 - 4 * c0 * c0 * c0) / dc.kappa;
  return dc;
}

template <class T>
T ode_residual(const WpJet<T>& jet, const EllipticData<T>& ed) {
  using std::abs;
  const T lhs = jet.p1 * jet.p1;
  const T rhs = 4 * jet.p * jet.p * jet.p - ed.g2 * jet.p - ed.g3;
  const T denom = lhs > 1 ? lhs : T(1);
  return abs(lhs - rhs) / denom;
}

template <class T>
EdgeSample<T> edge_sample(EdgeId edge, const T& x, const ModularPoint<T>& mp, const EllipticData<T>& ed,
                          const std::optional<T>& tol, double pole_margin) {
  if (!(x > 0) || !(x < T(0.5))) {
    std::ostringstream os;
    os << "edge parameter must lie in (0, 1/2), got " << to_double(x);
    throw DomainError(os.str());
  }
  if (edge == EdgeId::NearHalf && T(0.5) - x < T(pole_margin)) {
    std::ostringstream os;
    os << "x = " << to_double(x) << " is within " << pole_margin << " of the pole of wp(x - 1/2)";
    throw PoleError(os.str());
  }
  const ThetaIndex j = edge == EdgeId::NearHalf ? ThetaIndex::Two : ThetaIndex::Three;
  const auto l = log_theta_derivs(j, x, mp, 3, tol);
  EdgeSample<T> s;
  s.x = x;
  s.l1 = l[0];
  s.jet.p = ed.c0 - l[1];
  s.jet.p1 = -l[2];
  s.jet.p2 = 6 * s.jet.p * s.jet.p - ed.g2 / 2;
  s.jet.p3 = 12 * s.jet.p * s.jet.p1;
  const T res = ode_residual(s.jet, ed);
  if (!(res <= T(kOdeResidualBound))) {
    std::ostringstream os;
    os << to_string(edge) << " x = " << to_double(x) << " residual " << to_double(res);
    throw CrossValidationFailure("wp'^2 = 4 wp^3 - g2 wp - g3", os.str());
  }
  return s;
}

template <class T>
WpJet<T> wp_jet(EdgeId edge, const T& x, const ModularPoint<T>& mp, const EllipticData<T>& ed,
                const std::optional<T>& tol, double pole_margin) {
  return edge_sample(edge, x, mp, ed, tol, pole_margin).jet;
}

template <class T>
T invert_wp(EdgeId edge, const T& target, const ModularPoint<T>& mp, const EllipticData<T>& ed, const T& tol) {
  using std::abs;
  const bool increasing = edge == EdgeId::NearHalf;
  const bool in_range = increasing ? target > ed.e1 : (target > ed.e3 && target < ed.e2);
  if (!in_range) {
    std::ostringstream os;
    os << "target " << to_double(target) << " outside the wp range of the " << to_string(edge) << " edge";
    throw RangeError(os.str());
  }
  T lo(0);
  T hi(0.5);
  for (int it = 0; it < 200; ++it) {
    const T scale = abs(lo) > 1 ? abs(lo) : T(1);
    if (hi - lo <= tol * scale) break;
    const T mid = (lo + hi) / 2;
    const T p = edge_sample<T>(edge, mid, mp, ed, std::nullopt, kThetaZeroExclusion).jet.p;
    const bool below = increasing ? p < target : p > target;
    if (below)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

template <class T>
T wp_laurent_near_half(const T& x, const EllipticData<T>& ed) {
  const T w = T(0.5) - x;
  const T w2 = w * w;
  return 1 / w2 + ed.g2 * w2 / 20 + ed.g3 * w2 * w2 / 28 + ed.g2 * ed.g2 * w2 * w2 * w2 / 1200;
}

#define THETAKIT_INSTANTIATE(T)                                                                              \
  template ThetaNulls<T> theta_nulls<T>(const ModularPoint<T>&, const std::optional<T>&);                    \
  template T eisenstein_c0<T>(const ModularPoint<T>&, const std::optional<T>&);                              \
  template EllipticData<T> half_periods_and_invariants<T>(const ModularPoint<T>&, const std::optional<T>&);  \
  template DerivedConstants<T> derived_constants<T>(const EllipticData<T>&);                                 \
  template T ode_residual<T>(const WpJet<T>&, const EllipticData<T>&);                                       \
  template EdgeSample<T> edge_sample<T>(EdgeId, const T&, const ModularPoint<T>&, const EllipticData<T>&,    \
                                        const std::optional<T>&, double);                                    \
  template WpJet<T> wp_jet<T>(EdgeId, const T&, const ModularPoint<T>&, const EllipticData<T>&,              \
                              const std::optional<T>&, double);                                              \
  template T invert_wp<T>(EdgeId, const T&, const ModularPoint<T>&, const EllipticData<T>&, const T&);       \
  template T wp_laurent_near_half<T>(const T&, const EllipticData<T>&);
THETAKIT_FOR_EACH_SCALAR(THETAKIT_INSTANTIATE)
#undef THETAKIT_INSTANTIATE

}  // namespace thetakit
