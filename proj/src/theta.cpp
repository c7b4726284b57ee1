#include "thetakit/theta.hpp"

#include "thetakit/errors.hpp"

#include <cmath>
#include <sstream>

namespace thetakit {

ThetaIndex theta_index(int j) {
  if (j < 1 || j > 4) throw DomainError("theta index must be 1..4, got " + std::to_string(j));
  return static_cast<ThetaIndex>(j);
}

template <class T>
double ModularPoint<T>::log10_inv_q() const {
  return to_double(t_) * (M_PI * M_PI) / std::log(10.0);
}

template <class T>
ModularPoint<T> nome_from_time(const T& t) {
  using std::exp;
  using std::isfinite;
  if (!isfinite(t) || !(t > 0)) {
    std::ostringstream os;
    os << "time parameter must be finite and > 0, got " << to_double(t);
    throw DomainError(os.str());
  }
  const T pi = pi_v<T>();
  return ModularPoint<T>(t, exp(-pi * pi * t));
}

namespace {

constexpr int kMaxTerms = 1'000'000;
constexpr int kRotationRefresh = 16;

// d-th derivative with respect to the angle of cos (or sin) at cos = c, sin = s.
template <class T>
T trig_derivative(bool sine, int d, const T& c, const T& s) {
  switch ((d + (sine ? 3 : 0)) % 4) {
    case 0: return c;
    case 1: return -s;
    case 2: return -c;
    default: return s;
  }
}

enum class Stop { Auto, Tolerance, FixedTerms };

template <class T>
ThetaJet<T> sum_series(ThetaIndex j, const T& z, const ModularPoint<T>& mp, int max_order, Stop stop,
                       const T& tol, int fixed_terms) {
  using std::abs;
  using std::cos;
  using std::exp;
  using std::sin;

  if (max_order < 0) throw DomainError("derivative order must be >= 0");
  if (stop == Stop::Tolerance && !(tol > 0)) throw DomainError("tolerance must be > 0");

  const bool half = j == ThetaIndex::One || j == ThetaIndex::Two;
  const bool alternating = j == ThetaIndex::One || j == ThetaIndex::Four;
  const bool sine = j == ThetaIndex::One;
  const T pi = pi_v<T>();
  const T& q = mp.q();
  const T q2 = q * q;
  const auto orders = static_cast<std::size_t>(max_order) + 1;

  ThetaJet<T> jet;
  jet.values.assign(orders, T(0));
  jet.tail_bounds.assign(orders, T(0));
  jet.abs_sums.assign(orders, T(0));
  if (!half) {
    jet.values[0] = T(1);
    jet.abs_sums[0] = T(1);
    jet.terms_used = 1;
  }

  // Term n carries q^{e_n}: e_n = (n + 1/2)^2 from n = 0, or n^2 from n = 1.
  int n = half ? 0 : 1;
  T power = half ? T(exp(-pi * pi * mp.t() / 4)) : q;
  T step = half ? q2 : T(q * q2);
  const T angle_step = (half ? T(2) : T(2)) * pi * z;
  auto angle_of = [&](int k) { return (half ? T(2 * k + 1) : T(2 * k)) * pi * z; };
  T c = cos(angle_of(n));
  T s = sin(angle_of(n));
  const T cd = cos(angle_step);
  const T sd = sin(angle_step);

  std::vector<T> wpow(orders);
  const T half_t(0.5);
  for (int count = 0;; ++n, ++count) {
    if (count > kMaxTerms) throw PrecisionExhausted("theta series did not converge within the term cap");
    const T w = half ? T((2 * n + 1) * pi) : T(2 * n * pi);
    const T w_next_ratio = half ? T(T(2 * n + 3) / T(2 * n + 1)) : T(T(n + 1) / T(n));
    const T magnitude = 2 * power;

    if (stop == Stop::FixedTerms) {
      if (jet.terms_used >= fixed_terms) break;
    } else {
      bool done = true;
      T w_d(1);
      T ratio_d = step;
      std::vector<T> tails(orders);
      for (std::size_t d = 0; d < orders && done; ++d) {
        const T bound = magnitude * w_d;
        if (!(ratio_d <= half_t)) {
          done = false;
          break;
        }
        tails[d] = bound / (1 - ratio_d);
        const T target = stop == Stop::Tolerance ? tol : T(eps_v<T>() * jet.abs_sums[d]);
        if (!(tails[d] <= target)) done = false;
        w_d *= w;
        ratio_d *= w_next_ratio;
      }
      if (done) {
        jet.tail_bounds = std::move(tails);
        break;
      }
    }

    const T coef = (alternating && (n % 2 == 1)) ? T(-magnitude) : magnitude;
    T w_d(1);
    for (std::size_t d = 0; d < orders; ++d) {
      jet.values[d] += coef * w_d * trig_derivative(sine, static_cast<int>(d), c, s);
      jet.abs_sums[d] += magnitude * w_d;
      w_d *= w;
    }
    ++jet.terms_used;

    power *= step;
    step *= q2;
    if ((count + 1) % kRotationRefresh == 0) {
      c = cos(angle_of(n + 1));
      s = sin(angle_of(n + 1));
    } else {
      const T c_next = c * cd - s * sd;
      s = s * cd + c * sd;
      c = c_next;
    }
  }

  if (stop == Stop::Tolerance) {
    for (std::size_t d = 0; d < orders; ++d) {
      const T rounding = 4 * eps_v<T>() * T(jet.terms_used + 2) * jet.abs_sums[d];
      if (tol < rounding) {
        std::ostringstream os;
        os << "tolerance " << to_double(tol) << " is below the rounding floor " << to_double(rounding)
           << " of theta_" << to_int(j) << " derivative order " << d;
        throw PrecisionExhausted(os.str());
      }
    }
  }
  return jet;
}

}  // namespace

template <class T>
ThetaJet<T> theta_jet(ThetaIndex j, const T& z, const ModularPoint<T>& mp, int max_order,
                      const std::optional<T>& tol) {
  using std::isfinite;
  if (!isfinite(z)) throw DomainError("theta argument must be finite");
  return tol ? sum_series(j, z, mp, max_order, Stop::Tolerance, *tol, 0)
             : sum_series(j, z, mp, max_order, Stop::Auto, T(0), 0);
}

template <class T>
ThetaEval<T> theta_deriv(ThetaIndex j, const T& z, const ModularPoint<T>& mp, int d,
                         const std::optional<T>& tol) {
  auto jet = theta_jet(j, z, mp, d, tol);
  const auto k = static_cast<std::size_t>(d);
  return ThetaEval<T>{jet.values[k], d, jet.tail_bounds[k], jet.terms_used};
}

template <class T>
ThetaEval<T> theta_null(ThetaIndex j, const ModularPoint<T>& mp, const std::optional<T>& tol) {
  if (j == ThetaIndex::One) throw DomainError("theta_1(0) is identically zero; theta null requires j in {2,3,4}");
  return theta_deriv(j, T(0), mp, 0, tol);
}

template <class T>
T theta_partial_sum(ThetaIndex j, const T& z, const ModularPoint<T>& mp, int d, int terms) {
  if (terms < 1) throw DomainError("partial sum needs at least one term");
  auto jet = sum_series(j, z, mp, d, Stop::FixedTerms, T(0), terms);
  return jet.values[static_cast<std::size_t>(d)];
}

template <class T>
T distance_to_theta_zero(ThetaIndex j, const T& z) {
  using std::abs;
  using std::floor;
  switch (j) {
    case ThetaIndex::One: return abs(z - floor(z + T(0.5)));
    case ThetaIndex::Two: {
      const T shifted = z - T(0.5);
      return abs(shifted - floor(shifted + T(0.5)));
    }
    default: return std::numeric_limits<T>::infinity();
  }
}

template <class T>
std::vector<T> log_theta_derivs(ThetaIndex j, const T& z, const ModularPoint<T>& mp, int m,
                                const std::optional<T>& tol) {
  if (m < 1) throw DomainError("log-derivative count must be >= 1");
  if (distance_to_theta_zero(j, z) < T(kThetaZeroExclusion)) {
    std::ostringstream os;
    os << "theta_" << to_int(j) << " vanishes within " << kThetaZeroExclusion << " of z = " << to_double(z);
    throw PoleError(os.str());
  }
  const auto jet = theta_jet(j, z, mp, m, tol);
  const T& base = jet.values[0];
  std::vector<T> ratio(static_cast<std::size_t>(m) + 1);
  for (int k = 0; k <= m; ++k) ratio[k] = jet.values[k] / base;

  // binom[k-1][i-1] for 1 <= i < k <= m
  std::vector<std::vector<double>> binom(static_cast<std::size_t>(m));
  for (int r = 0; r < m; ++r) {
    binom[r].assign(static_cast<std::size_t>(r) + 1, 1.0);
    for (int c = 1; c < r; ++c) binom[r][c] = binom[r - 1][c - 1] + binom[r - 1][c];
  }

  std::vector<T> logd(static_cast<std::size_t>(m) + 1, T(0));
  for (int k = 1; k <= m; ++k) {
    T acc = ratio[k];
    for (int i = 1; i < k; ++i) acc -= T(binom[k - 1][i - 1]) * logd[i] * ratio[k - i];
    logd[k] = acc;
  }
  return {logd.begin() + 1, logd.end()};
}

#define THETAKIT_INSTANTIATE(T)                                                                      \
  template class ModularPoint<T>;                                                                    \
  template ModularPoint<T> nome_from_time<T>(const T&);                                              \
  template ThetaJet<T> theta_jet<T>(ThetaIndex, const T&, const ModularPoint<T>&, int,               \
                                    const std::optional<T>&);                                        \
  template ThetaEval<T> theta_deriv<T>(ThetaIndex, const T&, const ModularPoint<T>&, int,            \
                                       const std::optional<T>&);                                     \
  template ThetaEval<T> theta_null<T>(ThetaIndex, const ModularPoint<T>&, const std::optional<T>&);  \
  template T theta_partial_sum<T>(ThetaIndex, const T&, const ModularPoint<T>&, int, int);           \
  template T distance_to_theta_zero<T>(ThetaIndex, const T&);                                        \
  template std::vector<T> log_theta_derivs<T>(ThetaIndex, const T&, const ModularPoint<T>&, int,     \
                                              const std::optional<T>&);
THETAKIT_FOR_EACH_SCALAR(THETAKIT_INSTANTIATE)
#undef THETAKIT_INSTANTIATE

}  // namespace thetakit
