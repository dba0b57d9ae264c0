#pragma once

#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>

#include "qwalk/coin.hpp"
#include "qwalk/evolution.hpp"
#include "qwalk/field.hpp"

namespace qwalk {

inline constexpr int kMaxTransferSite = 1'000'000;

namespace detail {

template <typename Real>
void require_unit_circle(Complex<Real> lambda) {
  if (!(std::abs(std::abs(lambda) - Real(1)) <= Real(1e-12))) {
    throw Error(Errc::NotOnUnitCircle,
                "|lambda| = " + std::to_string(static_cast<double>(std::abs(lambda))));
  }
}

template <typename Real>
void require_corner(const BasicCoin<Real>& coin) {
  // Unitarity makes |c11| = |c22|, so one check covers both.
  if (!(std::abs(coin.c11()) > Real(1e-12))) {
    throw Error(Errc::ZeroCornerEntry, "transfer matrices need c11 != 0");
  }
}

}  // namespace detail

/// T+ maps Psi(x-1) to Psi(x), T- maps Psi(x+1) to Psi(x), along an eigenfunction.
template <typename Real = double>
struct BasicTransferPair {
  Matrix2c<Real> t_plus;
  Matrix2c<Real> t_minus;
  Complex<Real> lambda;
};

using TransferPair = BasicTransferPair<double>;

template <typename Real>
BasicTransferPair<Real> build_transfer(const BasicCoin<Real>& coin, Complex<Real> lambda) {
  detail::require_corner(coin);
  detail::require_unit_circle(lambda);
  const auto c11 = coin.c11(), c12 = coin.c12(), c21 = coin.c21(), c22 = coin.c22();
  const auto diag = lambda * lambda - c12 * c21;

  BasicTransferPair<Real> pair;
  pair.lambda = lambda;
  pair.t_plus << diag / (c11 * lambda), -c12 * c22 / (c11 * lambda),  //
      c21 / lambda, c22 / lambda;
  pair.t_minus << c11 / lambda, c12 / lambda,  //
      -c11 * c21 / (c22 * lambda), diag / (c22 * lambda);

  const Matrix2c<Real> id = Matrix2c<Real>::Identity();
  const Real err = std::max(max_abs(pair.t_plus * pair.t_minus - id),
                            max_abs(pair.t_minus * pair.t_plus - id));
  if (!(err <= Real(1e-12))) {
    throw Error(Errc::InvalidArgument,
                "transfer pair is not mutually inverse (deviation " +
                    std::to_string(static_cast<double>(err)) + ")");
  }
  return pair;
}

template <typename Real>
struct BasicBoundaryValues {
  Spinor<Real> plus_one;   // Psi(1)
  Spinor<Real> minus_one;  // Psi(-1)
};

using BoundaryValues = BasicBoundaryValues<double>;

/// Psi(+1) and Psi(-1) from the explicit one-site formulas.
template <typename Real>
BasicBoundaryValues<Real> boundary_values(const BasicCoin<Real>& coin, Complex<Real> lambda,
                                          const BasicInitialVector<Real>& phi) {
  const auto pair = build_transfer(coin, lambda);
  const auto c11 = coin.c11(), c12 = coin.c12(), c21 = coin.c21(), c22 = coin.c22();
  const auto p1 = phi.phi1(), p2 = phi.phi2();
  const auto l2 = lambda * lambda;

  BasicBoundaryValues<Real> bv;
  bv.plus_one(0) = (p1 * l2 - c12 * (c21 * p1 + c22 * p2)) / (c11 * lambda);
  bv.plus_one(1) = (c21 * p1 + c22 * p2) / lambda;
  bv.minus_one(0) = (c11 * p1 + c12 * p2) / lambda;
  bv.minus_one(1) = (p2 * l2 - c21 * (c11 * p1 + c12 * p2)) / (c22 * lambda);

  const auto v = phi.spinor();
  const Real scale = std::max(Real(1), v.norm());
  const Real err = std::max((pair.t_plus * v - bv.plus_one).norm(),
                            (pair.t_minus * v - bv.minus_one).norm()) / scale;
  if (!(err <= Real(1e-12))) {
    throw Error(Errc::InvalidArgument, "boundary values disagree with T+/- phi");
  }
  return bv;
}

/// Eigenfunction built by repeated multiplication: T+^x phi for x > 0, T-^|x| phi for x < 0.
template <typename Real>
BasicSpinorField<Real> transfer_eigenfunction(const BasicCoin<Real>& coin, Complex<Real> lambda,
                                              const BasicInitialVector<Real>& phi, int xmin,
                                              int xmax) {
  const Window w(xmin, xmax);
  if (std::abs(xmin) > kMaxTransferSite || std::abs(xmax) > kMaxTransferSite) {
    throw Error(Errc::WindowTooLarge,
                "|x| is capped at " + std::to_string(kMaxTransferSite) + " per call");
  }
  const auto pair = build_transfer(coin, lambda);

  BasicSpinorField<Real> field(w);
  field.at(0) = phi.spinor();
  Spinor<Real> v = phi.spinor();
  for (int x = 1; x <= xmax; ++x) {
    v = pair.t_plus * v;
    if (!v.allFinite()) throw Error(Errc::Overflow, "field overflows at x = " + std::to_string(x));
    field.at(x) = v;
  }
  v = phi.spinor();
  for (int x = -1; x >= xmin; --x) {
    v = pair.t_minus * v;
    if (!v.allFinite()) throw Error(Errc::Overflow, "field overflows at x = " + std::to_string(x));
    field.at(x) = v;
  }
  return field;
}

/// Eigenvalue (sigma + tau i)/sqrt2 of the Hadamard walk carried by the KLS field.
template <typename Real = double>
Complex<Real> kls_eigenvalue(int sigma, int tau) {
  return Complex<Real>(Real(sigma), Real(tau)) / std::sqrt(Real(2));
}

/// Piecewise eigenfunction of U_H with uniform measure, phi1 = sigma tau i phi2.
///
/// Sites x <= -1 carry phi2 (sigma tau i, 1), x >= 1 carry phi1 (1, -sigma tau i),
/// both scaled by (tau i sgn x)^|x|. The postcondition checks the eigen-residual
/// against (sigma + tau i)/sqrt2 whenever the window has an interior.
template <typename Real = double>
BasicSpinorField<Real> kls_eigenfunction(int sigma, int tau, Complex<Real> phi2, int xmin,
                                         int xmax) {
  if ((sigma != 1 && sigma != -1) || (tau != 1 && tau != -1)) {
    throw Error(Errc::InvalidArgument, "sigma and tau must be +1 or -1");
  }
  if (phi2 == Complex<Real>(0)) throw Error(Errc::ZeroInput, "phi2 must be nonzero");

  const Window w(xmin, xmax);
  const Complex<Real> i(0, 1);
  const Complex<Real> st_i = Real(sigma * tau) * i;
  const Complex<Real> phi1 = st_i * phi2;

  BasicSpinorField<Real> field(w);
  field.at(0) = Spinor<Real>(phi1, phi2);
  Complex<Real> factor(1);
  const Complex<Real> up = Real(tau) * i;
  for (int x = 1; x <= xmax; ++x) {
    factor *= up;
    field.at(x) = factor * phi1 * Spinor<Real>(Complex<Real>(1), -st_i);
  }
  factor = Complex<Real>(1);
  const Complex<Real> down = -Real(tau) * i;
  for (int x = -1; x >= xmin; --x) {
    factor *= down;
    field.at(x) = factor * phi2 * Spinor<Real>(st_i, Complex<Real>(1));
  }

  if (w.xmin <= -1 && w.xmax >= 1) {
    const Real res = eigen_residual(BasicCoin<Real>::hadamard(), kls_eigenvalue<Real>(sigma, tau),
                                    field);
    if (!(res <= Real(1e-12) * std::max(Real(1), std::abs(phi2)))) {
      throw Error(Errc::InvalidArgument, "KLS field failed its eigen-residual postcondition");
    }
  }
  return field;
}

}  // namespace qwalk
