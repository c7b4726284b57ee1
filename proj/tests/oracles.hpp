#pragma once

// Reference computations that share no code with the library: each theta
// term is formed from scratch with pow/cos, and the log-derivatives and wp
// come from the classical Lambert-type expansions instead of the theta jets.

#include "thetakit/real.hpp"

#include <cmath>
#include <functional>

namespace oracle {

using thetakit::Real;

inline Real pi() { return thetakit::pi_v<Real>(); }
inline Real nome(double t) { return exp(-pi() * pi() * Real(t)); }

/// Sum of the first `terms` series terms of theta_j^{(d)}(z), every term
/// evaluated independently.
inline Real theta(int j, const Real& z, const Real& q, int d, int terms = 120) {
  Real s = (j >= 3 && d == 0) ? Real(1) : Real(0);
  for (int n = (j <= 2 ? 0 : 1); n < terms; ++n) {
    const Real e = j <= 2 ? Real((n + Real(0.5)) * (n + Real(0.5))) : Real(n * n);
    const Real w = j <= 2 ? Real((2 * n + 1) * pi()) : Real(2 * n * pi());
    const Real sign = ((j == 1 || j == 4) && n % 2) ? -1 : 1;
    const Real phase = w * z + (j == 1 ? -pi() / 2 : Real(0)) + d * pi() / 2;  // sin(a) = cos(a - pi/2)
    s += 2 * sign * pow(q, e) * pow(w, d) * cos(phase);
  }
  return s;
}

/// sum_{n>=1} term(n), where |term(n)| <= n^2 base^n / (1 - base); summed
/// until that envelope drops below 1e-175.
template <class Term>
Real lambert(Term term, const Real& base) {
  Real s = 0;
  Real bn = 1;
  for (int n = 1; n < 100000; ++n) {
    bn *= base;
    s += term(n);
    if (Real(n) * n * bn < Real("1e-175") * (1 - base)) break;
  }
  return s;
}

/// c0 from the divisor-sum form -(pi^2/3)(1 - 24 sum sigma_1(n) q^{2n}).
inline Real c0_divisor(const Real& q) {
  const Real Q = q * q;
  Real s = 0;
  Real Qn = 1;
  for (int n = 1; n < 6000; ++n) {
    Qn *= Q;
    long sigma = 0;
    for (int d = 1; d * d <= n; ++d)
      if (n % d == 0) sigma += d + (d * d == n ? 0 : n / d);
    const Real tm = Real(sigma) * Qn;
    s += tm;
    if (tm < Real(1e-170) * (1 + s)) break;
  }
  return -(pi() * pi() / 3) * (1 - 24 * s);
}

/// theta_2'/theta_2 = -pi tan(pi z) + 4 pi sum (-1)^n q^{2n}/(1-q^{2n}) sin(2 n pi z)
inline Real l1_theta2(const Real& z, const Real& q) {
  return -pi() * tan(pi() * z) + 4 * pi() * lambert([&](int n) {
           const Real Q = pow(q, 2 * n);
           return Real((n % 2 ? -1 : 1) * Q / (1 - Q) * sin(2 * n * pi() * z));
         }, q * q);
}

/// theta_3'/theta_3 = 4 pi sum (-1)^n q^n/(1-q^{2n}) sin(2 n pi z)
inline Real l1_theta3(const Real& z, const Real& q) {
  return 4 * pi() * lambert([&](int n) {
           return Real((n % 2 ? -1 : 1) * pow(q, n) / (1 - pow(q, 2 * n)) * sin(2 * n * pi() * z));
         }, q);
}

struct WpPoint {
  Real p, p1;
};

/// wp(x - 1/2) = c0 - (theta_2'/theta_2)'(x) and its x-derivative, termwise.
inline WpPoint wp_near_half(const Real& x, const Real& q, const Real& c0) {
  const Real c = cos(pi() * x);
  const Real s = sin(pi() * x);
  const Real p = c0 + pi() * pi() / (c * c) - 8 * pi() * pi() * lambert([&](int n) {
                   const Real Q = pow(q, 2 * n);
                   return Real((n % 2 ? -1 : 1) * n * Q / (1 - Q) * cos(2 * n * pi() * x));
                 }, q * q);
  const Real p1 = 2 * pi() * pi() * pi() * s / (c * c * c) + 16 * pi() * pi() * pi() * lambert([&](int n) {
                    const Real Q = pow(q, 2 * n);
                    return Real((n % 2 ? -1 : 1) * n * n * Q / (1 - Q) * sin(2 * n * pi() * x));
                  }, q * q);
  return {p, p1};
}

/// wp(x + (tau - 1)/2) = c0 - (theta_3'/theta_3)'(x) and its x-derivative.
inline WpPoint wp_top_edge(const Real& x, const Real& q, const Real& c0) {
  const Real p = c0 - 8 * pi() * pi() * lambert([&](int n) {
                   return Real((n % 2 ? -1 : 1) * n * pow(q, n) / (1 - pow(q, 2 * n)) * cos(2 * n * pi() * x));
                 }, q);
  const Real p1 = 16 * pi() * pi() * pi() * lambert([&](int n) {
                    return Real((n % 2 ? -1 : 1) * n * n * pow(q, n) / (1 - pow(q, 2 * n)) * sin(2 * n * pi() * x));
                  }, q);
  return {p, p1};
}

/// Central difference of f at x with step h.
inline Real central(const std::function<Real(const Real&)>& f, const Real& x, const Real& h) {
  return (f(x + h) - f(x - h)) / (2 * h);
}

inline Real rel(const Real& a, const Real& b) {
  const Real s = abs(a) > abs(b) ? abs(a) : abs(b);
  return s > 0 ? Real(abs(a - b) / s) : Real(0);
}

}  // namespace oracle
