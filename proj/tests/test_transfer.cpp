#include <doctest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qwalk/evolution.hpp"
#include "qwalk/transfer.hpp"

using namespace qwalk;
using oracle::cd;

namespace {

const double kPiD = std::numbers::pi;

/// Component form of U Psi = lambda Psi at site x:
///   lambda Psi_L(x) = c11 Psi_L(x+1) + c12 Psi_R(x+1),  lambda Psi_R(x) = c21 Psi_L(x-1) + c22 Psi_R(x-1).
double component_residual(const Eigen::Matrix2cd& c, cd lambda, const SpinorField& f) {
  double worst = 0;
  for (int x = f.xmin() + 1; x < f.xmax(); ++x) {
    const auto& up = f.at(x + 1);
    const auto& down = f.at(x - 1);
    const double scale = std::max(1.0, f.at(x).norm());
    worst = std::max(worst, std::abs(lambda * f.at(x)(0) - c(0, 0) * up(0) - c(0, 1) * up(1)) / scale);
    worst = std::max(worst, std::abs(lambda * f.at(x)(1) - c(1, 0) * down(0) - c(1, 1) * down(1)) / scale);
  }
  return worst;
}

}  // namespace

TEST_CASE("Hadamard transfer matrices at lambda = e^{i pi/4}") {
  const auto pair = build_transfer(Coin::hadamard(), std::polar(1.0, kPiD / 4));
  CHECK(oracle::close(pair.t_plus(0, 0), cd(0.5, 1.5), 1e-14));
  CHECK(oracle::close(pair.t_plus(0, 1), cd(0.5, -0.5), 1e-14));
  CHECK(oracle::close(pair.t_plus(1, 0), cd(0.5, -0.5), 1e-14));
  CHECK(oracle::close(pair.t_plus(1, 1), cd(-0.5, 0.5), 1e-14));
  CHECK((pair.t_plus * pair.t_minus - Matrix2cd::Identity()).norm() <= 1e-14);

  const auto bv = boundary_values(Coin::hadamard(), std::polar(1.0, kPiD / 4), InitialVector(1.0, 0.0));
  CHECK(oracle::close(bv.minus_one(0), cd(0.5, -0.5), 1e-14));
  CHECK(oracle::close(bv.minus_one(1), cd(0.5, -0.5), 1e-14));
}

TEST_CASE("T+ of the Hadamard coin is unitary at theta = 0 and pi only") {
  for (double t : {0.0, kPiD}) {
    const auto pair = build_transfer(Coin::hadamard(), std::polar(1.0, t));
    CHECK((pair.t_plus * pair.t_plus.adjoint() - Matrix2cd::Identity()).norm() <= 1e-14);
  }
  for (double t : {0.3, 1.0, 2.0, 4.0}) {
    const auto pair = build_transfer(Coin::hadamard(), std::polar(1.0, t));
    CHECK((pair.t_plus * pair.t_plus.adjoint() - Matrix2cd::Identity()).norm() >= 1e-3);
  }
}

TEST_CASE("transfer eigenfunctions satisfy the eigen-equation componentwise") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> angle(0, 2 * kPiD);
  int checked = 0;
  while (checked < 100) {
    const Eigen::Matrix2cd u = oracle::random_unitary(rng);
    if (std::abs(u(0, 0)) < 0.1 || std::abs(u(1, 1)) < 0.1) continue;
    const auto coin = Coin::from_matrix(u);
    const cd lambda = std::polar(1.0, angle(rng));
    const InitialVector phi(oracle::random_complex(rng), oracle::random_complex(rng));
    const auto field = transfer_eigenfunction(coin, lambda, phi, -12, 12);
    CHECK(component_residual(u, lambda, field) <= 1e-10);
    const auto pair = build_transfer(coin, lambda);
    CHECK((pair.t_plus * pair.t_minus - Matrix2cd::Identity()).cwiseAbs().maxCoeff() <= 1e-12);
    ++checked;
  }
}

TEST_CASE("transfer preconditions") {
  const auto flip = validate_coin(cd(0), cd(1), cd(1), cd(0));
  try {
    build_transfer(flip, cd(1));
    FAIL("expected ZeroCornerEntry");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ZeroCornerEntry);
  }
  try {
    build_transfer(Coin::hadamard(), cd(1.01));
    FAIL("expected NotOnUnitCircle");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotOnUnitCircle);
  }
  const InitialVector phi(1.0, 0.0);
  try {
    transfer_eigenfunction(Coin::hadamard(), cd(1), phi, -2'000'000, 0);
    FAIL("expected WindowTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::WindowTooLarge);
  }
  // theta = pi/2 grows like (3 + 2 sqrt 2)^(x/2) per site and overflows before x = 1000.
  try {
    transfer_eigenfunction(Coin::hadamard(), cd(0, 1), phi, 0, 1000);
    FAIL("expected Overflow");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Overflow);
  }
}

TEST_CASE("KLS eigenfunctions") {
  std::mt19937_64 rng(23);
  for (int sigma : {1, -1}) {
    for (int tau : {1, -1}) {
      const cd lambda = kls_eigenvalue(sigma, tau);
      CHECK(std::abs(std::abs(lambda) - 1) <= 1e-15);
      const cd phi2 = oracle::random_complex(rng);
      const auto f = kls_eigenfunction<double>(sigma, tau, phi2, -20, 20);
      CHECK(component_residual(Coin::hadamard().matrix(), lambda, f) <= 1e-13);
      CHECK(oracle::close(f.at(0)(0), cd(0, sigma * tau) * phi2, 1e-15));
      const auto mu = measure_of(f);
      for (int x = -20; x <= 20; ++x) CHECK(mu.at(x) == doctest::Approx(2 * std::norm(phi2)).epsilon(1e-13));
    }
  }
  CHECK_THROWS_AS(kls_eigenfunction<double>(2, 1, cd(1), -3, 3), Error);
  CHECK_THROWS_AS(kls_eigenfunction<double>(1, 1, cd(0), -3, 3), Error);
}

TEST_CASE("long double transfer iteration") {
  using ld = long double;
  const auto coin = BasicCoin<ld>::hadamard();
  const Complex<ld> lambda = std::polar(ld(1), ld(0.4));
  const BasicInitialVector<ld> phi(Complex<ld>(1), Complex<ld>(0, 1));
  const auto f = transfer_eigenfunction(coin, lambda, phi, -20, 20);
  CHECK(eigen_residual(coin, lambda, f) <= 1e-16L);
}
