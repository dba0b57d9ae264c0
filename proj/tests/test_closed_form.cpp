#include <doctest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qwalk/closed_form.hpp"
#include "qwalk/transfer.hpp"

using namespace qwalk;
using oracle::cd;

namespace {

const double kPiD = std::numbers::pi;

double field_error(const Coin& coin, cd lambda, const InitialVector& phi, int half) {
  const auto tr = transfer_eigenfunction(coin, lambda, phi, -half, half);
  double worst = 0;
  for (int x = -half; x <= half; ++x) {
    const auto cf = closed_form_eigenfunction(coin, lambda, phi, x);
    worst = std::max(worst, (cf - tr.at(x)).norm() / std::max(1.0, tr.at(x).norm()));
  }
  return worst;
}

}  // namespace

TEST_CASE("Hadamard roots at pi/6 and 0") {
  const auto r = char_roots(Coin::hadamard(), std::polar(1.0, kPiD / 6));
  CHECK(oracle::close(r.lambda_plus, std::polar(1.0, kPiD / 4), 1e-14));
  CHECK(oracle::close(r.lambda_minus, std::polar(1.0, 3 * kPiD / 4), 1e-14));
  CHECK(root_type(r).kind == RootKind::Type2);

  const auto r0 = char_roots(Coin::hadamard(), cd(1));
  CHECK(oracle::unordered_error(r0.lambda_plus, r0.lambda_minus, cd(1), cd(-1)) <= 1e-14);
}

TEST_CASE("root taxonomy on the Hadamard walk") {
  CHECK(root_type(char_roots(Coin::hadamard(), std::polar(1.0, kPiD / 4))).kind == RootKind::Type1);
  CHECK(root_type(char_roots(Coin::hadamard(), std::polar(1.0, 3 * kPiD / 4))).kind == RootKind::Type1);
  CHECK(root_type(char_roots(Coin::hadamard(), std::polar(1.0, 0.1))).kind == RootKind::Type2);
  const auto t3 = root_type(char_roots(Coin::hadamard(), cd(0, 1)));
  CHECK(t3.kind == RootKind::Type3);
  CHECK(t3.modulus_plus * t3.modulus_minus == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("roots agree with a companion-matrix eigensolve") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> angle(0, 2 * kPiD);
  for (int i = 0; i < 300; ++i) {
    const Eigen::Matrix2cd u = oracle::random_unitary(rng);
    if (std::abs(u(0, 0)) < 0.05 || std::abs(u(1, 1)) < 0.05) continue;
    const auto coin = Coin::from_matrix(u);
    const cd lambda = std::polar(1.0, angle(rng));
    const auto r = char_roots(coin, lambda);
    const cd l = -(lambda + coin.delta() / lambda) / coin.c11();
    const auto [a, b] = oracle::companion_roots(l, coin.c22() / coin.c11());
    if (r.is_double) continue;
    CHECK(oracle::unordered_error(r.lambda_plus, r.lambda_minus, a, b) <= 1e-10);
    // Left half-line roots are the right ones scaled by c11 / c22.
    const cd s = coin.c11() / coin.c22();
    CHECK(oracle::close(r.gamma_plus, s * r.lambda_plus, 1e-12));
  }
}

TEST_CASE("closed form equals transfer iteration on random coins") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> angle(0, 2 * kPiD);
  int done = 0;
  while (done < 100) {
    const Eigen::Matrix2cd u = oracle::random_unitary(rng);
    if (std::abs(u(0, 0)) < 0.2 || std::abs(u(1, 1)) < 0.2) continue;
    const auto coin = Coin::from_matrix(u);
    const cd lambda = std::polar(1.0, angle(rng));
    if (double_root_distance(coin, lambda) < 1e-3) continue;
    const InitialVector phi(oracle::random_complex(rng), oracle::random_complex(rng));
    CHECK(field_error(coin, lambda, phi, 15) <= 1e-9);
    ++done;
  }
}

TEST_CASE("double-root branch on K1 matches transfer on both half-lines") {
  std::mt19937_64 rng(41);
  for (int k : {1, 3, 5, 7}) {
    const cd lambda = std::polar(1.0, k * kPiD / 4);
    CHECK(double_root_distance(Coin::hadamard(), lambda) <= 1e-12);
    for (int s = 0; s < 5; ++s) {
      const InitialVector phi(oracle::random_complex(rng), oracle::random_complex(rng));
      CHECK(closed_form_evaluate(Coin::hadamard(), lambda, phi, 3).branch == ClosedFormCase::DoubleRoot);
      CHECK(field_error(Coin::hadamard(), lambda, phi, 25) <= 1e-10);
    }
  }
}

TEST_CASE("near the case boundary both formulas are evaluated") {
  const cd lambda = std::polar(1.0, kPiD / 4 + 1e-9);
  const InitialVector phi(1.0, 0.5);
  const auto v = closed_form_evaluate(Coin::hadamard(), lambda, phi, 4);
  CHECK(v.branch == ClosedFormCase::DistinctRoots);
  REQUIRE(v.branch_divergence.has_value());
  CHECK(*v.branch_divergence <= 1e-6);
  CHECK_FALSE(v.warning);

  const auto far = closed_form_evaluate(Coin::hadamard(), std::polar(1.0, 0.3), phi, 4);
  CHECK_FALSE(far.branch_divergence.has_value());
  CHECK(closed_form_evaluate(Coin::hadamard(), std::polar(1.0, 0.3), phi, 0).value == phi.spinor());
}

TEST_CASE("closed form field at pi/6 is bounded") {
  const auto f = closed_form_field(Coin::hadamard(), std::polar(1.0, kPiD / 6), InitialVector(1.0, 0.0), -40, 40);
  for (const auto& v : f.values()) CHECK(v.norm() <= 2);
}

TEST_CASE("long double closed form") {
  using ld = long double;
  const auto coin = BasicCoin<ld>::hadamard();
  const Complex<ld> lambda = std::polar(ld(1), ld(1.3));
  const BasicInitialVector<ld> phi(Complex<ld>(1), Complex<ld>(ld(0.5), ld(-1)));
  const auto tr = transfer_eigenfunction(coin, lambda, phi, -20, 20);
  for (int x = -20; x <= 20; ++x) {
    const auto cf = closed_form_eigenfunction(coin, lambda, phi, x);
    CHECK((cf - tr.at(x)).norm() / std::max(ld(1), tr.at(x).norm()) <= 1e-14L);
  }
}
