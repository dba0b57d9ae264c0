#include <doctest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qwalk/classify.hpp"

using namespace qwalk;
using oracle::cd;

namespace {

const double kPiD = std::numbers::pi;

Angle pi_frac(long long p, long long q) { return Angle::from_pi_fraction(p, q); }

/// mu(1), ..., mu(hi) from transfer iteration.
std::vector<double> measure_values(const Angle& theta, const InitialVector& phi, int hi) {
  const auto mu = hadamard_transfer_measure(theta, phi, 0, hi);
  return {mu.values().begin() + 1, mu.values().end()};
}

}  // namespace

TEST_CASE("region partition") {
  CHECK(theta_region(pi_frac(0, 1)) == Region::K2);
  CHECK(theta_region(pi_frac(1, 6)) == Region::K2);
  CHECK(theta_region(pi_frac(1, 4)) == Region::K1);
  CHECK(theta_region(pi_frac(1, 3)) == Region::K3);
  CHECK(theta_region(pi_frac(1, 2)) == Region::K3);
  CHECK(theta_region(pi_frac(3, 4)) == Region::K1);
  CHECK(theta_region(pi_frac(1, 1)) == Region::K2);
  CHECK(theta_region(pi_frac(5, 4)) == Region::K1);
  CHECK(theta_region(pi_frac(3, 2)) == Region::K3);
  CHECK(theta_region(pi_frac(7, 4)) == Region::K1);
  CHECK(theta_region(pi_frac(11, 6)) == Region::K2);
  CHECK(theta_region(Angle(kPiD / 4)) == Region::K1);
  CHECK(theta_region(Angle(kPiD / 4 - 1e-9)) == Region::K2);
  CHECK(theta_region(Angle(kPiD / 4 + 1e-9)) == Region::K3);
  CHECK(theta_region(Angle(6.2)) == Region::K2);
}

TEST_CASE("double-root eigenvalues of O(zeta)") {
  const auto hadamard = double_root_eigenvalues(kPiD / 4);
  for (int k = 0; k < 4; ++k) {
    CHECK(oracle::close(hadamard[k], std::polar(1.0, (2 * k + 1) * kPiD / 4), 1e-14));
  }
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> zeta(0.05, 2 * kPiD - 0.05);
  for (int i = 0; i < 100; ++i) {
    const double z = zeta(rng);
    if (std::abs(std::cos(z)) < 0.05 || std::abs(std::sin(z)) < 0.05) continue;
    const auto coin = Coin::rotation(z);
    for (const cd lambda : double_root_eigenvalues(z)) {
      CHECK(std::abs(std::abs(lambda) - 1) <= 1e-14);
      CHECK(double_root_distance(coin, lambda) <= 1e-12);
    }
  }
  CHECK_THROWS_AS(double_root_eigenvalues(0.0), Error);
  CHECK_THROWS_AS(double_root_eigenvalues(kPiD / 2), Error);
}

TEST_CASE("z and root moduli against direct evaluation") {
  for (int j = 1; j < 720; ++j) {
    const auto theta = pi_frac(j, 360);
    if (theta_region(theta) == Region::K1) {
      CHECK_THROWS_AS(z_components(theta), Error);
      continue;
    }
    const cd lambda = theta.unit();
    const cd f = lambda * lambda - 1.0;
    const cd g = std::sqrt(lambda * lambda * lambda * lambda + 1.0);
    const cd z = z_components(theta);
    // The tabulated branch of g may differ from the principal one by a sign.
    CHECK(std::min(std::abs(z - std::conj(f) * g), std::abs(z + std::conj(f) * g)) <= 1e-13);

    const auto roots = char_roots(Coin::hadamard(), lambda);
    const auto m = lambda_moduli(theta);
    CHECK(m.plus * m.minus == doctest::Approx(1.0).epsilon(1e-12));
    const double p = std::norm(roots.lambda_plus), q = std::norm(roots.lambda_minus);
    CHECK(std::min(std::max(std::abs(m.plus - p), std::abs(m.minus - q)),
                   std::max(std::abs(m.plus - q), std::abs(m.minus - p))) <= 1e-12);
    if (theta_region(theta) == Region::K2) {
      CHECK(z.real() == 0.0);
      CHECK(m.plus == 1.0);
    } else {
      CHECK(z.imag() == 0.0);
    }
  }
}

TEST_CASE("quadratic coefficients") {
  const auto q = qp_coefficients(InitialVector(1.0, 0.0), pi_frac(1, 4));
  CHECK(q.a == doctest::Approx(1.0));
  CHECK(q.b == doctest::Approx(1.0));
  CHECK(q.c == doctest::Approx(1.0));
  const auto mu = hadamard_transfer_measure(pi_frac(1, 4), InitialVector(1.0, 0.0), -3, 3);
  const double expected[] = {7, 3, 1, 1, 3, 7, 13};
  for (int x = -3; x <= 3; ++x) CHECK(mu.at(x) == doctest::Approx(expected[x + 3]).epsilon(1e-12));

  CHECK_THROWS_AS(qp_coefficients(InitialVector(1.0, 0.0), pi_frac(1, 6)), Error);
}

TEST_CASE("quadratic form reproduces the transfer measure on K1") {
  std::mt19937_64 rng(47);
  for (int k : {1, 3, 5, 7}) {
    for (int s = 0; s < 10; ++s) {
      const InitialVector phi(oracle::random_complex(rng), oracle::random_complex(rng));
      const auto q = qp_coefficients(phi, pi_frac(k, 4));
      CHECK(q.a >= 0);
      const auto mu = hadamard_transfer_measure(pi_frac(k, 4), phi, -15, 15);
      for (int x = -15; x <= 15; ++x) {
        const double model = (q.a * x + q.b) * x + q.c;
        CHECK(std::abs(mu.at(x) - model) <= 1e-10 * std::max(1.0, model));
      }
    }
  }
}

TEST_CASE("uniform condition") {
  CHECK(uniform_condition(InitialVector(cd(1), cd(0, -1)), pi_frac(1, 4)));
  CHECK(uniform_condition(InitialVector(cd(1), cd(0, -1)), pi_frac(5, 4)));
  CHECK_FALSE(uniform_condition(InitialVector(cd(1), cd(0, -1)), pi_frac(3, 4)));
  CHECK(uniform_condition(InitialVector(cd(1), cd(0, 1)), pi_frac(3, 4)));
  // Invariant under global phase and scale.
  const cd g = std::polar(3.5, 1.1);
  CHECK(uniform_condition(InitialVector(g * cd(1), g * cd(0, -1)), pi_frac(1, 4)));
  CHECK_FALSE(uniform_condition(InitialVector(cd(1), cd(0.001, -1)), pi_frac(1, 4)));
  CHECK_FALSE(uniform_condition(InitialVector(cd(1), cd(0)), pi_frac(1, 4)));

  const auto c = classify(pi_frac(1, 4), InitialVector(cd(1), cd(0, -1)));
  REQUIRE(std::holds_alternative<Uniform>(c.kind));
  CHECK(std::get<Uniform>(c.kind).level == doctest::Approx(2.0));
}

TEST_CASE("xi angle") {
  CHECK(xi_angle(pi_frac(1, 6)) == doctest::Approx(3 * kPiD / 2).epsilon(1e-14));
  CHECK(xi_angle(pi_frac(11, 6)) == doctest::Approx(3 * kPiD / 2).epsilon(1e-14));
  CHECK_THROWS_AS(xi_angle(pi_frac(0, 1)), Error);
  CHECK_THROWS_AS(xi_angle(pi_frac(1, 1)), Error);
  CHECK_THROWS_AS(xi_angle(pi_frac(1, 2)), Error);
  // cos xi is the real part of Lambda+ conj(Lambda-), whatever the labelling.
  for (double t : {0.1, 0.5, 0.7, 2.5, 3.0, 3.3, 3.8, 5.6, 6.0}) {
    const auto r = char_roots(Coin::hadamard(), std::polar(1.0, t));
    const double xi = xi_angle(Angle(t));
    CHECK(xi > 0);
    CHECK(xi < 2 * kPiD);
    CHECK(std::cos(xi) == doctest::Approx((r.lambda_plus * std::conj(r.lambda_minus)).real()).epsilon(1e-12));
  }
}

TEST_CASE("W values at pi/6") {
  const auto w = w_values(InitialVector(1.0, 0.0), pi_frac(1, 6));
  CHECK(w.w1 == doctest::Approx(3.0));
  CHECK(w.w3 == doctest::Approx(3.0));
  CHECK(oracle::close(w.w2, cd(0.5, -0.5), 1e-14));
  CHECK(oracle::close(w.w4, cd(0.5, 0.5), 1e-14));
  CHECK_THROWS_AS(w_values(InitialVector(1.0, 0.0), pi_frac(1, 4)), Error);
}

TEST_CASE("measure from W equals the transfer measure") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> angle(0, 2 * kPiD);
  for (int i = 0; i < 100; ++i) {
    const Angle theta(angle(rng));
    if (std::abs(double_root_distance(Coin::hadamard(), theta.unit())) < 1e-3) continue;
    const InitialVector phi(oracle::random_complex(rng), oracle::random_complex(rng));
    const auto w = w_values(phi, theta);
    const auto mu = hadamard_transfer_measure(theta, phi, -25, 25);
    for (int x = -25; x <= 25; ++x) {
      CHECK(std::abs(measure_from_w(w, phi, x) - mu.at(x)) <= 1e-9 * std::max(1.0, mu.at(x)));
    }
  }
}

TEST_CASE("pi/6 measure has whole-line period four") {
  const auto mu = hadamard_transfer_measure(pi_frac(1, 6), InitialVector(1.0, 0.0), -8, 8);
  const double expected[] = {1, 2, 2, 1, 1, 2, 2, 1, 1, 2, 2, 1, 1, 2, 2, 1, 1};
  for (int x = -8; x <= 8; ++x) CHECK(std::abs(mu.at(x) - expected[x + 8]) <= 1e-13);
}

TEST_CASE("rational approximation") {
  const auto a = rational_approximation(0.75);
  CHECK(a.exact);
  CHECK(a.p == 3);
  CHECK(a.q == 4);
  const auto third = rational_approximation(1.0 / 3);
  CHECK(third.exact);
  CHECK(third.q == 3);
  CHECK(rational_approximation(0.0).q == 1);
  const auto golden = rational_approximation((std::sqrt(5.0) - 1) / 2);
  CHECK_FALSE(golden.exact);
  CHECK(golden.q <= kMaxPeriodDenominator);
  CHECK(golden.residual < 1e-5);
  CHECK_THROWS_AS(rational_approximation(1.0), Error);
  CHECK_THROWS_AS(rational_approximation(-0.1), Error);
}

TEST_CASE("period detection against brute force") {
  const InitialVector phi(1.0, 0.0);
  const auto p6 = period_of(pi_frac(1, 6), phi);
  CHECK(p6.kind == PeriodKind::Finite);
  CHECK(p6.m_min == 4);
  CHECK(oracle::brute_force_period(measure_values(pi_frac(1, 6), phi, 60), 20, 1e-10) == 4);

  // cos xi = 1 - 2 cos 2theta; cos 2theta = 3/4 gives xi = 4pi/3, cos 2theta = 1/4 gives 5pi/3.
  for (const auto& [c2, m] : {std::pair{0.75, 3}, std::pair{0.25, 6}}) {
    const Angle theta(0.5 * std::acos(c2));
    const auto v = period_of(theta, InitialVector(cd(0.3, 1), cd(-0.4)));
    CHECK(v.kind == PeriodKind::Finite);
    CHECK(v.m_min == m);
    CHECK(v.confirmation_deviation <= 1e-10);
    CHECK(oracle::brute_force_period(measure_values(theta, InitialVector(cd(0.3, 1), cd(-0.4)), 80), 20, 1e-10) == m);
  }

  for (const auto& theta : {pi_frac(0, 1), pi_frac(1, 1)}) {
    const auto v = period_of(theta, InitialVector(cd(0.2, 0.3), cd(1)));
    CHECK(v.kind == PeriodKind::UniformPeriodOne);
    CHECK(v.m_min == 1);
  }

  const auto aperiodic = period_of(Angle(0.1), phi);
  CHECK(aperiodic.kind == PeriodKind::Aperiodic);
  CHECK(aperiodic.numerical_policy);
  CHECK(oracle::brute_force_period(measure_values(Angle(0.1), phi, 2000), 1000, 1e-9) == 0);

  CHECK_THROWS_AS(period_of(pi_frac(1, 2), phi), Error);
}

TEST_CASE("exponential rates") {
  CHECK(exp_rates(pi_frac(1, 2)).growth_right == doctest::Approx(3 + 2 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(exp_rates(pi_frac(1, 3)).growth_right == doctest::Approx(2 + std::sqrt(3.0)).epsilon(1e-14));
  for (double t : {0.9, 1.3, 2.2, 4.0, 4.7, 5.0, 5.4}) {
    const auto r = exp_rates(Angle(t));
    const auto roots = char_roots(Coin::hadamard(), std::polar(1.0, t));
    const double direct = std::max(std::norm(roots.lambda_plus), std::norm(roots.lambda_minus));
    CHECK(r.growth_right == doctest::Approx(direct).epsilon(1e-12));
    CHECK(r.growth_left == doctest::Approx(direct).epsilon(1e-12));
    CHECK(r.r_plus * r.r_minus == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(exp_rates(pi_frac(1, 6)), Error);
}

TEST_CASE("classification dispatch") {
  const InitialVector phi(cd(1), cd(0));
  const auto q = classify(pi_frac(1, 4), phi);
  CHECK(q.region == Region::K1);
  CHECK(std::string(class_name(q)) == "quadratic");

  const auto b = classify(pi_frac(1, 6), phi);
  CHECK(std::string(class_name(b)) == "bounded");
  CHECK(std::get<BoundedOscillatory>(b.kind).period.m_min == 4);

  const auto u = classify(pi_frac(0, 1), phi);
  CHECK(std::string(class_name(u)) == "uniform");

  const auto e = classify(pi_frac(1, 2), InitialVector(cd(1), cd(1)));
  CHECK(std::string(class_name(e)) == "exponential");

  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> angle(0, 2 * kPiD);
  for (int i = 0; i < 50; ++i) {
    const auto c = classify(Angle(angle(rng)), InitialVector(oracle::random_complex(rng), oracle::random_complex(rng)));
    CHECK(c.cross_check_deviation <= 1e-8);
  }
}
