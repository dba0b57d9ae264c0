#pragma once

#include <cmath>
#include <sstream>

#include "qwalk/types.hpp"

namespace qwalk {

template <typename Real>
struct BasicCoinDecomposition {
  Matrix2c<Real> P;  // top row of C
  Matrix2c<Real> Q;  // bottom row of C
  Complex<Real> delta;        // c11 c22 - c12 c21
  Complex<Real> delta_tilde;  // c11 c22 + c12 c21
};

/// A 2x2 unitary coin. Instances only exist once unitarity has been checked.
template <typename Real = double>
class BasicCoin {
 public:
  using Scalar = Complex<Real>;
  using Matrix = Matrix2c<Real>;

  static constexpr Real kUnitaryTol = Real(1e-12);

  static BasicCoin identity() { return BasicCoin(Matrix::Identity()); }

  static BasicCoin hadamard() {
    const Real r = std::sqrt(Real(0.5));
    Matrix m;
    m << r, r, r, -r;
    return BasicCoin(m);
  }

  /// The real orthogonal coin [[cos z, sin z], [sin z, -cos z]].
  static BasicCoin rotation(Real zeta) {
    const Real c = std::cos(zeta);
    const Real s = std::sin(zeta);
    Matrix m;
    m << c, s, s, -c;
    return BasicCoin(m);
  }

  static BasicCoin from_matrix(const Matrix& m, Real tol = kUnitaryTol) {
    const Matrix deviation = m * m.adjoint() - Matrix::Identity();
    const Real worst = max_abs(deviation);
    if (!(worst <= tol) || !m.allFinite()) {
      std::ostringstream msg;
      msg << "C C^dagger - I has max entrywise deviation " << worst << " (tolerance " << tol
          << "); entrywise |deviation| = [[" << std::abs(deviation(0, 0)) << ", "
          << std::abs(deviation(0, 1)) << "], [" << std::abs(deviation(1, 0)) << ", "
          << std::abs(deviation(1, 1)) << "]]";
      throw Error(Errc::NotUnitary, msg.str());
    }
    return BasicCoin(m);
  }

  const Matrix& matrix() const { return m_; }
  Scalar c11() const { return m_(0, 0); }
  Scalar c12() const { return m_(0, 1); }
  Scalar c21() const { return m_(1, 0); }
  Scalar c22() const { return m_(1, 1); }

  Scalar delta() const { return c11() * c22() - c12() * c21(); }
  Scalar delta_tilde() const { return c11() * c22() + c12() * c21(); }

  bool operator==(const BasicCoin&) const = default;

 private:
  explicit BasicCoin(const Matrix& m) : m_(m) {}

  Matrix m_;
};

using Coin = BasicCoin<double>;
using CoinDecomposition = BasicCoinDecomposition<double>;

template <typename Real>
BasicCoin<Real> validate_coin(Complex<Real> c11, Complex<Real> c12, Complex<Real> c21,
                              Complex<Real> c22, Real tol = BasicCoin<Real>::kUnitaryTol) {
  Matrix2c<Real> m;
  m << c11, c12, c21, c22;
  return BasicCoin<Real>::from_matrix(m, tol);
}

inline Coin validate_coin(std::complex<double> c11, std::complex<double> c12,
                          std::complex<double> c21, std::complex<double> c22) {
  return validate_coin<double>(c11, c12, c21, c22);
}

template <typename Real>
BasicCoinDecomposition<Real> decompose(const BasicCoin<Real>& coin) {
  BasicCoinDecomposition<Real> d;
  d.P.setZero();
  d.Q.setZero();
  d.P.row(0) = coin.matrix().row(0);
  d.Q.row(1) = coin.matrix().row(1);
  d.delta = coin.delta();
  d.delta_tilde = coin.delta_tilde();
  return d;
}

}  // namespace qwalk
