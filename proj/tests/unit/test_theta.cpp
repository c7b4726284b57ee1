#include "oracles.hpp"
#include "thetakit/errors.hpp"
#include "thetakit/theta.hpp"

#include <doctest.h>

#include <random>

using namespace thetakit;
using oracle::rel;

namespace {

Real tiny() { return Real(1e-140); }

}  // namespace

TEST_CASE("nome_from_time") {
  const auto mp = nome_from_time(Real(1) / pi_v<Real>());
  CHECK(abs(mp.q() - exp(-pi_v<Real>())) < tiny());
  CHECK(to_double(mp.q()) == doctest::Approx(0.0432139182637723).epsilon(1e-14));
  CHECK(nome_from_time(Real(100)).q() < Real("1e-428"));
  CHECK(nome_from_time(Real(100)).q() > 0);
  CHECK(nome_from_time(100.0).q() < 1e-300);
  CHECK(nome_from_time(Real(0.3)).log10_inv_q() == doctest::Approx(0.3 * M_PI * M_PI / std::log(10.0)));

  CHECK_THROWS_AS(nome_from_time(0.0), DomainError);
  CHECK_THROWS_AS(nome_from_time(-1.0), DomainError);
  CHECK_THROWS_AS(nome_from_time(std::nan("")), DomainError);
  CHECK_THROWS_AS(nome_from_time(std::numeric_limits<double>::infinity()), DomainError);
  CHECK_THROWS_AS(theta_index(0), DomainError);
  CHECK_THROWS_AS(theta_index(5), DomainError);
}

TEST_CASE("trivial theta values") {
  for (double t : {0.05, 0.7, 3.0}) {
    const auto mp = nome_from_time(Real(t));
    CHECK(abs(theta_deriv(ThetaIndex::One, Real(0), mp, 0).value) < tiny());
    CHECK(abs(theta_deriv(ThetaIndex::Two, Real(0.5), mp, 0).value) < tiny());
  }
  const auto far = nome_from_time(Real(100));
  const Real th3 = theta_deriv(ThetaIndex::Three, Real(0), far, 0).value;
  CHECK(abs(th3 - 1) < tiny());
  CHECK(theta_deriv(ThetaIndex::Three, 0.0, nome_from_time(100.0), 0).value == 1.0);
  CHECK(to_double(theta_null(ThetaIndex::Four, far).value) == doctest::Approx(1.0));
  CHECK_THROWS_AS(theta_null(ThetaIndex::One, far), DomainError);
}

TEST_CASE("theta derivatives against frozen high-precision values") {
  // mpmath jtheta(j, pi*0.3, exp(-pi^2/2), 2) * pi^2, 30 digits
  const auto mp = nome_from_time(Real(0.5));
  const char* expected[] = {"-4.64965592536346628368155380212", "-3.37622862284380556775844774118",
                            "0.175475473620331187361543003413", "-0.175474106496341942920118930941"};
  for (int j = 1; j <= 4; ++j) {
    const Real v = theta_deriv(theta_index(j), Real(0.3), mp, 2).value;
    CHECK(rel(v, Real(expected[j - 1])) < Real(1e-28));
  }
}

TEST_CASE("theta derivatives against independent partial sums") {
  for (double t : {0.05, 0.5, 5.0}) {
    const auto mp = nome_from_time(Real(t));
    for (int j = 1; j <= 4; ++j)
      for (int d : {0, 1, 2, 5, 8})
        for (double z : {0.0, 0.13, 0.3, 0.49}) {
          const auto e = theta_deriv(theta_index(j), Real(z), mp, d);
          const Real ref = oracle::theta(j, Real(z), mp.q(), d, 2 * e.terms_used + 4);
          CHECK(abs(e.value - ref) <= e.tail_bound + tiny() * (1 + abs(ref)));
        }
  }
}

TEST_CASE("tail bound soundness: doubling the term count moves less than the bound") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> zdist(-1.0, 1.0);
  std::uniform_real_distribution<double> tdist(0.01, 3.0);
  for (int trial = 0; trial < 60; ++trial) {
    const auto mp = nome_from_time(Real(tdist(rng)));
    const Real z(zdist(rng));
    const auto j = theta_index(1 + trial % 4);
    const int d = trial % 7;
    const Real tol("1e-60");
    const auto e = theta_deriv(j, z, mp, d, std::optional<Real>(tol));
    CHECK(e.tail_bound <= tol);
    const Real doubled = theta_partial_sum(j, z, mp, d, 2 * e.terms_used);
    CHECK(abs(doubled - e.value) <= e.tail_bound + tiny());
  }
}

TEST_CASE("requested tolerance below rounding is refused") {
  const auto mp = nome_from_time(Real(0.2));
  CHECK_THROWS_AS(theta_deriv(ThetaIndex::Three, Real(0.1), mp, 2, std::optional<Real>(Real("1e-200"))),
                  PrecisionExhausted);
  const auto md = nome_from_time(0.2);
  CHECK_THROWS_AS(theta_deriv(ThetaIndex::Three, 0.1, md, 0, std::optional<double>(1e-20)), PrecisionExhausted);
  CHECK_NOTHROW(theta_deriv(ThetaIndex::Three, 0.1, md, 0, std::optional<double>(1e-12)));
  CHECK_THROWS_AS(theta_deriv(ThetaIndex::Three, 0.1, md, 0, std::optional<double>(-1.0)), DomainError);
}

TEST_CASE("narrow scalars agree with the multiprecision engine") {
  for (double t : {0.05, 0.5, 2.0})
    for (int j = 1; j <= 4; ++j) {
      const Real ref = theta_deriv(theta_index(j), Real(0.21), nome_from_time(Real(t)), 3).value;
      const double d = theta_deriv(theta_index(j), 0.21, nome_from_time(t), 3).value;
      const long double ld = theta_deriv(theta_index(j), 0.21L, nome_from_time(static_cast<long double>(t)), 3).value;
      const double scale = 1 + std::abs(to_double(ref));
      CHECK(std::abs(d - to_double(ref)) < 1e-12 * scale * 1e3);
      CHECK(std::abs(static_cast<double>(ld - static_cast<long double>(ref))) < 1e-15 * scale * 1e3);
    }
}

TEST_CASE("theta null identities") {
  for (double t : {0.05, 0.5, 5.0}) {
    const auto mp = nome_from_time(Real(t));
    const Real th2 = theta_null(ThetaIndex::Two, mp).value;
    const Real th3 = theta_null(ThetaIndex::Three, mp).value;
    const Real th4 = theta_null(ThetaIndex::Four, mp).value;
    const Real th4_2t = theta_null(ThetaIndex::Four, nome_from_time(Real(2 * t))).value;
    CHECK(abs(th3 * th4 - th4_2t * th4_2t) < tiny());
    const Real q = mp.q();
    const Real lam = oracle::lambert([&](int n) {
      const Real qn = pow(q, n);
      return Real((n % 2 ? -1 : 1) * qn / ((1 + qn) * (1 + qn)));
    }, q);
    CHECK(abs(pow(th4, 4) - (1 + 8 * lam)) < tiny());
    CHECK(abs(pow(th2, 4) + pow(th4, 4) - pow(th3, 4)) < tiny());
  }
}

TEST_CASE("parity and periodicity") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> zdist(-0.5, 0.5);
  for (double t : {0.05, 0.5, 5.0}) {
    const auto mp = nome_from_time(Real(t));
    for (int k = 0; k < 12; ++k) {
      const Real z(zdist(rng));
      for (int jj = 1; jj <= 4; ++jj) {
        const auto j = theta_index(jj);
        const Real f = theta_deriv(j, z, mp, 0).value;
        const Real fm = theta_deriv(j, Real(-z), mp, 0).value;
        const Real fp = theta_deriv(j, Real(z + 1), mp, 0).value;
        CHECK(abs(jj == 1 ? Real(fm + f) : Real(fm - f)) < tiny());
        CHECK(abs(jj <= 2 ? Real(fp + f) : Real(fp - f)) < tiny());
      }
    }
  }
}

TEST_CASE("heat equation in t: d theta/dt = theta''/4 with O(h^2) differences") {
  const Real t(0.4);
  for (int jj = 1; jj <= 4; ++jj) {
    const auto j = theta_index(jj);
    const Real z(0.17);
    const Real exact = theta_deriv(j, z, nome_from_time(t), 2).value / 4;
    auto fd = [&](const Real& h) {
      return (theta_deriv(j, z, nome_from_time(Real(t + h)), 0).value -
              theta_deriv(j, z, nome_from_time(Real(t - h)), 0).value) /
             (2 * h);
    };
    const Real e1 = abs(fd(Real(1e-3)) - exact);
    const Real e2 = abs(fd(Real(5e-4)) - exact);
    CHECK(to_double(e1 / e2) == doctest::Approx(4.0).epsilon(0.01));
    CHECK(e1 < Real(1e-4) * abs(exact));
  }
}

TEST_CASE("log-derivatives") {
  const auto mp = nome_from_time(Real(0.5));
  CHECK(abs(log_theta_derivs(ThetaIndex::Two, Real(1e-12), mp, 1)[0]) < Real(1e-10));
  CHECK(abs(log_theta_derivs(ThetaIndex::Three, Real(0.5), mp, 1)[0]) < tiny());
  for (double z : {0.05, 0.25, 0.45}) {
    CHECK(rel(log_theta_derivs(ThetaIndex::Two, Real(z), mp, 1)[0], oracle::l1_theta2(Real(z), mp.q())) < tiny());
    CHECK(rel(log_theta_derivs(ThetaIndex::Three, Real(z), mp, 1)[0], oracle::l1_theta3(Real(z), mp.q())) < tiny());
  }
  // second and third entries against differentiated first entries
  const Real z(0.21);
  const auto l = log_theta_derivs(ThetaIndex::Four, z, mp, 3);
  auto first = [&](const Real& x) { return log_theta_derivs(ThetaIndex::Four, x, mp, 1)[0]; };
  auto second = [&](const Real& x) { return log_theta_derivs(ThetaIndex::Four, x, mp, 2)[1]; };
  CHECK(rel(l[1], oracle::central(first, z, Real(1e-20))) < Real(1e-30));
  CHECK(rel(l[2], oracle::central(second, z, Real(1e-20))) < Real(1e-30));

  CHECK_THROWS_AS(log_theta_derivs(ThetaIndex::One, Real(0), mp, 2), PoleError);
  CHECK_THROWS_AS(log_theta_derivs(ThetaIndex::One, Real(1), mp, 2), PoleError);
  CHECK_THROWS_AS(log_theta_derivs(ThetaIndex::Two, Real(0.5 + 1e-9), mp, 2), PoleError);
  CHECK_NOTHROW(log_theta_derivs(ThetaIndex::Two, Real(0.5 - 1e-7), mp, 2));
  CHECK(distance_to_theta_zero(ThetaIndex::Three, Real(0.5)) > Real(1e300));
  CHECK(abs(distance_to_theta_zero(ThetaIndex::Two, Real("1.4")) - Real("0.1")) < tiny());
}
