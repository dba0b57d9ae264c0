#include "qwalk/angle.hpp"

#include <cmath>
#include <numeric>

#include "qwalk/types.hpp"

namespace qwalk {

Angle::Angle(double radians) {
  if (!std::isfinite(radians)) throw Error(Errc::InvalidArgument, "angle must be finite");
  double r = std::fmod(radians, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r = 0;
  radians_ = r;
}

Angle Angle::from_pi_fraction(long long num, long long den) {
  if (den == 0) throw Error(Errc::InvalidArgument, "zero denominator in pi fraction");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  const long long period = 2 * den;
  num %= period;
  if (num < 0) num += period;

  Angle a;
  a.exact_ = PiFraction{num, den};
  a.radians_ = kPi * static_cast<double>(num) / static_cast<double>(den);
  return a;
}

}  // namespace qwalk
