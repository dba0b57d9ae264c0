#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qwalk/evolution.hpp"
#include "qwalk/stationarity.hpp"
#include "qwalk/transfer.hpp"

using namespace qwalk;
using oracle::cd;

namespace {

oracle::Lattice to_lattice(const SpinorField& f) {
  oracle::Lattice l{f.xmin(), {}, {}};
  for (int x = f.xmin(); x <= f.xmax(); ++x) {
    l.left.push_back(f.at(x)(0));
    l.right.push_back(f.at(x)(1));
  }
  return l;
}

}  // namespace

TEST_CASE("one Hadamard step from a delta") {
  const auto f = SpinorField::delta(Window::symmetric(3), Spinord(cd(1), cd(0)));
  const auto g = step(Coin::hadamard(), f);
  CHECK(g.window() == Window(-2, 2));
  const auto mu = measure_of(g);
  CHECK(mu.at(-1) == doctest::Approx(0.5));
  CHECK(mu.at(1) == doctest::Approx(0.5));
  CHECK(mu.at(0) == 0.0);
  // The L part moves left, the R part moves right.
  CHECK(std::abs(g.at(1)(0)) == 0.0);
  CHECK(std::abs(g.at(-1)(1)) == 0.0);
}

TEST_CASE("step agrees with a component-wise reference stepper") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Matrix2cd u = oracle::random_unitary(rng);
    const auto coin = Coin::from_matrix(u);
    SpinorField f(Window::symmetric(10));
    for (int x = -10; x <= 10; ++x) f.at(x) = Spinord(oracle::random_complex(rng), oracle::random_complex(rng));
    auto lattice = to_lattice(f);
    for (int s = 0; s < 5; ++s) {
      f = step(coin, f);
      lattice = oracle::naive_step(u, lattice);
    }
    REQUIRE(f.xmin() == lattice.xmin);
    for (int x = f.xmin(); x <= f.xmax(); ++x) {
      const auto i = static_cast<std::size_t>(x - lattice.xmin);
      CHECK(oracle::close(f.at(x)(0), lattice.left[i], 1e-13));
      CHECK(oracle::close(f.at(x)(1), lattice.right[i], 1e-13));
    }
  }
}

TEST_CASE("total probability is conserved while the support stays inside") {
  std::mt19937_64 rng(5);
  const auto coin = Coin::from_matrix(oracle::random_unitary(rng));
  auto f = SpinorField::delta(Window::symmetric(30), Spinord(cd(0.6), cd(0, 0.8)));
  for (int s = 0; s < 10; ++s) {
    f = step(coin, f);
    const auto mu = measure_of(f);
    double total = 0;
    for (double m : mu.values()) total += m;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("identity coin keeps a constant field constant") {
  auto f = SpinorField::constant(Window::symmetric(5), Spinord(cd(1), cd(1)));
  for (int s = 0; s < 3; ++s) f = step(Coin::identity(), f);
  const auto mu = measure_of(f);
  for (double m : mu.values()) CHECK(m == 2.0);
}

TEST_CASE("windows that cannot shrink are rejected") {
  const auto f = SpinorField::delta(Window(0, 5), Spinord(cd(1), cd(0)));
  try {
    step(Coin::hadamard(), f);
    FAIL("expected WindowTooSmall");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::WindowTooSmall);
  }
}

TEST_CASE("eigen residual separates eigenfunctions from other fields") {
  const cd lambda = std::polar(1.0, 0.3);
  const InitialVector phi(cd(1), cd(0.5, -0.2));
  const auto eigen = transfer_eigenfunction(Coin::hadamard(), lambda, phi, -10, 10);
  CHECK(eigen_residual(Coin::hadamard(), lambda, eigen) <= 1e-14);
  const auto delta = SpinorField::delta(Window::symmetric(10), Spinord(cd(1), cd(0)));
  CHECK(eigen_residual(Coin::hadamard(), lambda, delta) >= 0.5);
}

TEST_CASE("stationarity oracle") {
  const cd lambda = std::polar(1.0, 1.2);
  const InitialVector phi(cd(0.3, 0.1), cd(-1));
  const auto report = verify_stationary(Coin::hadamard(), lambda, phi, 32, 10, 1e-10);
  CHECK(report.passed);
  CHECK(report.step_deviation.size() == 10);
  CHECK(report.max_deviation <= 1e-10);
  CHECK(report.eigen_residual <= 1e-12);

  const auto delta = SpinorField::delta(Window::symmetric(20), Spinord(cd(1), cd(0)));
  const auto bad = verify_stationary_field(Coin::hadamard(), lambda, delta, 3, 1e-10);
  CHECK_FALSE(bad.passed);
  CHECK(bad.max_deviation >= 0.4);

  CHECK_THROWS_AS(verify_stationary(Coin::hadamard(), lambda, phi, 10, 10, 1e-10), Error);
  CHECK_THROWS_AS(verify_stationary(Coin::hadamard(), cd(1.1), phi, 32, 10, 1e-10), Error);
}
