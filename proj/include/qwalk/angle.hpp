#pragma once

#include <complex>
#include <numbers>
#include <optional>

namespace qwalk {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// theta = num * pi / den in lowest terms with 0 <= num < 2 den.
struct PiFraction {
  long long num = 0;
  long long den = 1;
  bool operator==(const PiFraction&) const = default;
};

/// Eigenvalue argument theta in [0, 2 pi), remembering an exact p pi / q form when known.
class Angle {
 public:
  Angle(double radians);  // NOLINT(google-explicit-constructor)

  static Angle from_pi_fraction(long long num, long long den);

  double radians() const { return radians_; }
  const std::optional<PiFraction>& pi_fraction() const { return exact_; }

  std::complex<double> unit() const { return std::polar(1.0, radians_); }

 private:
  Angle() = default;

  double radians_ = 0;
  std::optional<PiFraction> exact_;
};

}  // namespace qwalk
