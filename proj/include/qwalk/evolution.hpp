#pragma once

#include <algorithm>
#include <cmath>

#include "qwalk/coin.hpp"
#include "qwalk/field.hpp"

namespace qwalk {

/// One application of U_C: Psi'(x) = P Psi(x+1) + Q Psi(x-1).
///
/// Sites outside the input window are never read, so the result lives on
/// [xmin+1, xmax-1]. That window must still contain the origin.
template <typename Real>
BasicSpinorField<Real> step(const BasicCoin<Real>& coin, const BasicSpinorField<Real>& field) {
  if (field.size() < 3 || field.xmin() + 1 > 0 || field.xmax() - 1 < 0) {
    throw Error(Errc::WindowTooSmall, "step needs a window whose interior contains the origin, got [" +
                                          std::to_string(field.xmin()) + ", " +
                                          std::to_string(field.xmax()) + "]");
  }
  const auto& c = coin.matrix();
  BasicSpinorField<Real> out(Window(field.xmin() + 1, field.xmax() - 1));
  for (int x = out.xmin(); x <= out.xmax(); ++x) {
    const auto& right = field.at(x + 1);
    const auto& left = field.at(x - 1);
    out.at(x)(0) = c(0, 0) * right(0) + c(0, 1) * right(1);
    out.at(x)(1) = c(1, 0) * left(0) + c(1, 1) * left(1);
  }
  return out;
}

/// max over interior sites of |(U_C Psi)(x) - lambda Psi(x)| / max(1, |Psi(x)|).
///
/// The relative scaling only engages where the field is larger than one, so
/// bounded fields are judged absolutely and exponential ones relatively.
template <typename Real>
Real eigen_residual(const BasicCoin<Real>& coin, Complex<Real> lambda,
                    const BasicSpinorField<Real>& field) {
  const auto next = step(coin, field);
  Real worst = 0;
  for (int x = next.xmin(); x <= next.xmax(); ++x) {
    const auto& psi = field.at(x);
    const Real scale = std::max(Real(1), psi.norm());
    worst = std::max(worst, (next.at(x) - lambda * psi).norm() / scale);
  }
  return worst;
}

}  // namespace qwalk
