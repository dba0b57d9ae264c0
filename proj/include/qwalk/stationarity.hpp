#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "qwalk/evolution.hpp"
#include "qwalk/transfer.hpp"

namespace qwalk {

struct StationarityReport {
  /// Entry k-1 is max_x |mu_k(x) - mu_0(x)| / max(1, mu_0(x)) over the window surviving k steps.
  std::vector<double> step_deviation;
  double max_deviation = 0;
  /// max_x |(U Psi)(x) - lambda Psi(x)| / max(1, |Psi(x)|) over the interior.
  double eigen_residual = 0;
  double tol = 0;
  bool passed = false;
};

/// Evolves `field` n_steps times and compares every intermediate measure with the initial one.
template <typename Real>
StationarityReport verify_stationary_field(const BasicCoin<Real>& coin, Complex<Real> lambda,
                                           const BasicSpinorField<Real>& field, int n_steps,
                                           double tol) {
  if (n_steps < 1 || field.xmin() + n_steps + 1 > 0 || field.xmax() - n_steps - 1 < 0) {
    throw Error(Errc::WindowTooSmall, "window cannot survive " + std::to_string(n_steps) + " steps");
  }
  StationarityReport report;
  report.tol = tol;
  report.eigen_residual = static_cast<double>(eigen_residual(coin, lambda, field));

  const auto mu0 = measure_of(field);
  BasicSpinorField<Real> current = field;
  for (int k = 1; k <= n_steps; ++k) {
    current = step(coin, current);
    const auto mu = measure_of(current);
    double worst = 0;
    for (int x = mu.xmin(); x <= mu.xmax(); ++x) {
      const double ref = static_cast<double>(mu0.at(x));
      const double dev = std::abs(static_cast<double>(mu.at(x)) - ref) / std::max(1.0, ref);
      worst = std::max(worst, dev);
    }
    report.step_deviation.push_back(worst);
    report.max_deviation = std::max(report.max_deviation, worst);
  }
  report.passed = report.max_deviation <= tol;
  return report;
}

/// Builds the transfer eigenfunction on [-L, L] and checks stationarity over n_steps.
template <typename Real>
StationarityReport verify_stationary(const BasicCoin<Real>& coin, Complex<Real> lambda,
                                     const BasicInitialVector<Real>& phi, int L, int n_steps,
                                     double tol) {
  detail::require_unit_circle(lambda);
  if (L <= n_steps + 2) {
    throw Error(Errc::WindowTooSmall, "need L > n_steps + 2");
  }
  const auto field = transfer_eigenfunction(coin, lambda, phi, -L, L);
  return verify_stationary_field(coin, lambda, field, n_steps, tol);
}

}  // namespace qwalk
