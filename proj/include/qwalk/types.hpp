#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace qwalk {

template <typename Real>
using Complex = std::complex<Real>;

/// 2x2 complex matrix; coins, transfer matrices and Fourier symbols all use it.
template <typename Real>
using Matrix2c = Eigen::Matrix<std::complex<Real>, 2, 2>;

/// Internal state at one lattice site: component 0 is L, component 1 is R.
template <typename Real>
using Spinor = Eigen::Matrix<std::complex<Real>, 2, 1>;

using Matrix2cd = Matrix2c<double>;
using Spinord = Spinor<double>;

enum class Errc {
  NotUnitary,
  WindowTooSmall,
  WindowTooLarge,
  ZeroCornerEntry,
  NotOnUnitCircle,
  ZeroInput,
  DegeneratePrefactor,
  DegenerateCoin,
  DegenerateTheta,
  NotK1,
  NotK2,
  NotK3,
  OnK1,
  Overflow,
  InvalidArgument,
};

constexpr std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::NotUnitary: return "NotUnitary";
    case Errc::WindowTooSmall: return "WindowTooSmall";
    case Errc::WindowTooLarge: return "WindowTooLarge";
    case Errc::ZeroCornerEntry: return "ZeroCornerEntry";
    case Errc::NotOnUnitCircle: return "NotOnUnitCircle";
    case Errc::ZeroInput: return "ZeroInput";
    case Errc::DegeneratePrefactor: return "DegeneratePrefactor";
    case Errc::DegenerateCoin: return "DegenerateCoin";
    case Errc::DegenerateTheta: return "DegenerateTheta";
    case Errc::NotK1: return "NotK1";
    case Errc::NotK2: return "NotK2";
    case Errc::NotK3: return "NotK3";
    case Errc::OnK1: return "OnK1";
    case Errc::Overflow: return "Overflow";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Domain error raised by every operation in the library.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// z^n for n >= 0 by repeated squaring.
template <typename T>
T ipow(T base, long long n) {
  T result(1);
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

/// Largest entrywise modulus, the norm used for every matrix tolerance.
template <typename Derived>
auto max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

}  // namespace qwalk
