#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qwalk/angle.hpp"
#include "qwalk/coin.hpp"
#include "qwalk/field.hpp"

namespace qwalk::cli {

/// Malformed command-line value; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double parse_real(std::string_view text);

/// "a+bi" with either part optional: "1", "-i", "2.5i", "0.5-0.5i", "1e-3+2i".
std::complex<double> parse_complex(std::string_view text);

/// Decimal radians, or a rational multiple of pi: "pi", "pi/6", "3pi/4", "-2*pi/3".
Angle parse_angle(std::string_view text);

/// "hadamard", "identity", "rotation:<angle>", or "c11,c12,c21,c22" complex literals.
/// Throws qwalk::Error (NotUnitary) for a literal matrix that is not unitary.
Coin parse_coin(std::string_view text);

/// "phi1,phi2".
InitialVector parse_phi(std::string_view text);

struct InitSpec {
  enum class Kind { Delta, Constant } kind = Kind::Delta;
  std::complex<double> left{1, 0};
  std::complex<double> right{0, 0};
};

/// "delta:a,b" (a, b at the origin) or "const:a,b" (every site).
InitSpec parse_init(std::string_view text);

/// Shortest text for an angle: "p*pi/q" when exact, radians otherwise.
std::string format_angle(const Angle& a);

/// 17 significant digits, '.' separator, independent of the locale.
std::string format_real(double v);

}  // namespace qwalk::cli
