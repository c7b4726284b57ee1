#include "thetakit/quotients.hpp"

#include "thetakit/errors.hpp"

#include <cmath>
#include <sstream>

namespace thetakit {

void validate(const QuotientSpec& spec, bool strict) {
  const bool ordered = strict ? spec.u < spec.v : spec.u <= spec.v;
  if (!(spec.u >= 0.0) || !ordered || !(spec.v < 1.0)) {
    std::ostringstream os;
    os << "(u, v) = (" << spec.u << ", " << spec.v << ") violates 0 <= u " << (strict ? "<" : "<=") << " v < 1";
    throw DomainError(os.str());
  }
  if (spec.j == ThetaIndex::One && spec.v == 0.0) throw PoleError("theta_1(v/2) vanishes at v = 0");
}

namespace {

// N^{(k)} and D^{(k)} for k = 0..order.
template <class T>
std::pair<std::vector<T>, std::vector<T>> numerator_denominator_jets(const QuotientSpec& spec, const T& t,
                                                                     int order, const std::optional<T>& tol) {
  const auto mp = nome_from_time(t);
  const auto num = theta_jet(spec.j, T(spec.u) / 2, mp, 2 * order, tol);
  const auto den = theta_jet(spec.j, T(spec.v) / 2, mp, 2 * order, tol);
  std::vector<T> n(static_cast<std::size_t>(order) + 1);
  std::vector<T> d(n.size());
  T scale(1);
  for (int k = 0; k <= order; ++k) {
    n[k] = num.values[2 * k] * scale;
    d[k] = den.values[2 * k] * scale;
    scale /= 4;
  }
  return {std::move(n), std::move(d)};
}

}  // namespace

template <class T>
T quotient(const QuotientSpec& spec, const T& t, const std::optional<T>& tol) {
  return quotient_t_derivs(spec, t, 0, tol).values[0];
}

template <class T>
DerivSeries<T> quotient_t_derivs(const QuotientSpec& spec, const T& t, int k, const std::optional<T>& tol) {
  validate(spec, false);
  if (k < 0) throw DomainError("derivative order must be >= 0");
  if (k > max_exact_order<T>()) {
    std::ostringstream os;
    os << "t-derivative order " << k << " exceeds " << max_exact_order<T>() << " for this precision";
    throw PrecisionExhausted(os.str());
  }
  const auto [n, d] = numerator_denominator_jets(spec, t, k, tol);

  std::vector<double> binom(static_cast<std::size_t>(k) + 1, 1.0);
  DerivSeries<T> out;
  out.order = k;
  out.values.resize(static_cast<std::size_t>(k) + 1);
  for (int m = 0; m <= k; ++m) {
    // binom holds C(m, i) for i = 0..m
    for (int i = m - 1; i > 0; --i) binom[i] += binom[i - 1];
    T acc = n[m];
    for (int i = 0; i < m; ++i) acc -= T(binom[i]) * out.values[i] * d[m - i];
    out.values[m] = acc / d[0];
  }
  return out;
}

template <class T>
T log_quotient_second_t(const QuotientSpec& spec, const T& t, const std::optional<T>& tol) {
  validate(spec, false);
  if (spec.j != ThetaIndex::Two && spec.j != ThetaIndex::Three)
    throw DomainError("log-quotient second derivative is defined for j in {2, 3}");
  const auto mp = nome_from_time(t);
  auto h = [&](double x) {
    const auto jet = theta_jet(spec.j, T(x) / 2, mp, 4, tol);
    const T r2 = jet.values[2] / jet.values[0];
    return T(jet.values[4] / jet.values[0] - r2 * r2);
  };
  return (h(spec.u) - h(spec.v)) / 16;
}

template <class T>
T fd_oracle(const QuotientSpec& spec, const T& t, int k, const T& h) {
  using std::abs;
  if (k != 1 && k != 2) throw DomainError("finite-difference oracle supports k = 1, 2");
  if (!(t - k * h > 0)) throw DomainError("finite-difference stencil leaves t > 0");
  const T floor_h = 16 * eps_v<T>() * (abs(t) > 1 ? abs(t) : T(1));
  if (h < floor_h) {
    std::ostringstream os;
    os << "step " << to_double(h) << " is below the oracle precision floor " << to_double(floor_h);
    throw PrecisionExhausted(os.str());
  }
  const T plus = quotient<T>(spec, t + h);
  const T minus = quotient<T>(spec, t - h);
  if (k == 1) return (plus - minus) / (2 * h);
  return (plus - 2 * quotient<T>(spec, t) + minus) / (h * h);
}

#define THETAKIT_INSTANTIATE(T)                                                                             \
  template T quotient<T>(const QuotientSpec&, const T&, const std::optional<T>&);                           \
  template DerivSeries<T> quotient_t_derivs<T>(const QuotientSpec&, const T&, int, const std::optional<T>&); \
  template T log_quotient_second_t<T>(const QuotientSpec&, const T&, const std::optional<T>&);              \
  template T fd_oracle<T>(const QuotientSpec&, const T&, int, const T&);
THETAKIT_FOR_EACH_SCALAR(THETAKIT_INSTANTIATE)
#undef THETAKIT_INSTANTIATE

}  // namespace thetakit
