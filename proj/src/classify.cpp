#include "qwalk/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qwalk/coin.hpp"
#include "qwalk/transfer.hpp"

namespace qwalk {

namespace {

constexpr double kK1Tol = 1e-12;
constexpr double kDegenerateThetaTol = 1e-12;
constexpr double kCrossCheckWindow = 40;

/// Index k in {1,3,5,7} of the K1 point k pi/4 nearest to theta.
int nearest_k1_index(double t) {
  int best = 1;
  for (int k : {3, 5, 7}) {
    if (std::abs(t - k * kPi / 4) < std::abs(t - best * kPi / 4)) best = k;
  }
  return best;
}

bool is_zero_or_pi(double t) {
  return std::abs(t) <= kDegenerateThetaTol || std::abs(t - kPi) <= kDegenerateThetaTol ||
         std::abs(t - kTwoPi) <= kDegenerateThetaTol;
}

/// First xi branch: [0, pi/4) u (3pi/4, pi]; the second branch covers [pi, 5pi/4) u (7pi/4, 2pi).
bool upper_half(double t) { return t <= kPi; }

double rel_dev(double value, double reference) {
  return std::abs(value - reference) / std::max(1.0, std::abs(reference));
}

}  // namespace

const char* to_string(Region r) {
  switch (r) {
    case Region::K1: return "K1";
    case Region::K2: return "K2";
    case Region::K3: return "K3";
  }
  return "?";
}

const char* to_string(PeriodKind k) {
  switch (k) {
    case PeriodKind::Finite: return "finite";
    case PeriodKind::Aperiodic: return "aperiodic";
    case PeriodKind::UniformPeriodOne: return "uniform";
  }
  return "?";
}

Region theta_region(const Angle& theta) {
  if (const auto& f = theta.pi_fraction()) {
    // theta / pi = num / den in [0, 2)
    const long long n4 = 4 * f->num;
    const long long d = f->den;
    if (d == 4 && f->num % 2 == 1) return Region::K1;
    if (n4 < d || (n4 > 3 * d && n4 < 5 * d) || n4 > 7 * d) return Region::K2;
    return Region::K3;
  }
  const double t = theta.radians();
  for (int k : {1, 3, 5, 7}) {
    if (std::abs(t - k * kPi / 4) <= kK1Tol) return Region::K1;
  }
  if (t < kPi / 4 || (t > 3 * kPi / 4 && t < 5 * kPi / 4) || t > 7 * kPi / 4) return Region::K2;
  return Region::K3;
}

std::array<std::complex<double>, 4> double_root_eigenvalues(double zeta) {
  const double c = std::cos(zeta);
  const double s = std::sin(zeta);
  if (std::abs(c) <= 1e-12 || std::abs(s) <= 1e-12) {
    throw Error(Errc::DegenerateCoin, "O(zeta) needs cos zeta != 0 and sin zeta != 0");
  }
  // The four-point set is closed under conjugation, so |2cs| picks eta in (0, pi)
  // whatever the sign of cs.
  const double eta = std::atan2(std::abs(2 * c * s), -(c * c - s * s));
  const double half = eta / 2;
  return {std::polar(1.0, half), std::polar(1.0, kPi - half), std::polar(1.0, kPi + half),
          std::polar(1.0, kTwoPi - half)};
}

std::complex<double> z_components(const Angle& theta) {
  const Region region = theta_region(theta);
  if (region == Region::K1) throw Error(Errc::OnK1, "z(lambda) sign table excludes K1");
  const double t = theta.radians();
  const double c2 = std::cos(2 * t);
  if (region == Region::K2) {
    const double mag = 2 * std::sin(t) * std::sqrt(std::max(0.0, 2 * c2));
    return {0.0, upper_half(t) ? -mag : mag};
  }
  const double mag = 2 * std::sin(t) * std::sqrt(std::max(0.0, -2 * c2));
  const bool positive = (t > kPi / 4 && t < kPi / 2) || (t >= 3 * kPi / 2 && t < 7 * kPi / 4);
  return {positive ? mag : -mag, 0.0};
}

LambdaModuli lambda_moduli(const Angle& theta) {
  if (theta_region(theta) != Region::K3) return {1.0, 1.0};
  const double t = theta.radians();
  const double c2 = std::cos(2 * t);
  const double base = 1 - 2 * c2;
  const double split = 2 * std::sin(t) * std::sqrt(std::max(0.0, -2 * c2));
  const bool first = (t > kPi / 4 && t < kPi / 2) || (t >= 3 * kPi / 2 && t < 7 * kPi / 4);
  return first ? LambdaModuli{base + split, base - split} : LambdaModuli{base - split, base + split};
}

QuadraticCoefficients qp_coefficients(const InitialVector& phi, const Angle& theta) {
  if (theta_region(theta) != Region::K1) throw Error(Errc::NotK1, "quadratic coefficients need theta in K1");
  const int k = theta.pi_fraction() ? static_cast<int>(theta.pi_fraction()->num)
                                    : nearest_k1_index(theta.radians());
  // sin 2theta is exactly +1 at pi/4, 5pi/4 and -1 at 3pi/4, 7pi/4.
  const double sin2 = (k == 1 || k == 5) ? 1.0 : -1.0;
  const auto p1 = phi.phi1(), p2 = phi.phi2();
  const auto cross = p1 * std::conj(p2);
  const double n1 = std::norm(p1), n2 = std::norm(p2);

  QuadraticCoefficients q;
  q.a = std::max(0.0, n1 + n2 - 2 * sin2 * cross.imag());
  q.b = n1 - n2 - 2 * cross.real();
  q.c = n1 + n2;
  return q;
}

bool uniform_condition(const InitialVector& phi, const Angle& theta) {
  if (theta_region(theta) != Region::K1) throw Error(Errc::NotK1, "uniform condition needs theta in K1");
  const int k = theta.pi_fraction() ? static_cast<int>(theta.pi_fraction()->num)
                                    : nearest_k1_index(theta.radians());
  const double target = (k == 1 || k == 5) ? kPi / 2 : 3 * kPi / 2;
  const double m1 = std::abs(phi.phi1()), m2 = std::abs(phi.phi2());
  if (std::abs(m1 - m2) > 1e-10 * std::max(m1, m2)) return false;
  // arg(phi1) - arg(phi2) = arg(phi1 conj phi2); compare modulo 2 pi.
  const double diff = std::arg(phi.phi1() * std::conj(phi.phi2())) - target;
  const double wrapped = std::remainder(diff, kTwoPi);
  return std::abs(wrapped) <= 1e-10;
}

double xi_angle(const Angle& theta) {
  if (theta_region(theta) != Region::K2) throw Error(Errc::NotK2, "xi is defined on K2");
  const double t = theta.radians();
  if (is_zero_or_pi(t)) {
    throw Error(Errc::DegenerateTheta, "oscillatory part vanishes at theta = 0, pi");
  }
  const double c2 = std::cos(2 * t);
  const double cos_xi = 1 - 2 * c2;
  const double sin_xi = -2 * std::sqrt(std::max(0.0, 2 * c2)) * std::sin(t);
  double xi1 = std::atan2(sin_xi, cos_xi);
  if (xi1 <= 0) xi1 += kTwoPi;
  if (upper_half(t)) return xi1;
  return kTwoPi - xi1;
}

WValues w_values(const InitialVector& phi, const Angle& theta) {
  if (theta_region(theta) == Region::K1) throw Error(Errc::OnK1, "W values need distinct roots");
  const auto coin = Coin::hadamard();
  const auto lambda = theta.unit();
  WValues w;
  w.roots = char_roots(coin, lambda);
  const auto bv = boundary_values(coin, lambda, phi);
  const auto p1 = phi.phi1(), p2 = phi.phi2();
  const auto& r = w.roots;

  w.h = {bv.plus_one(0) - r.lambda_minus * p1, bv.plus_one(0) - r.lambda_plus * p1,
         bv.plus_one(1) - r.lambda_minus * p2, bv.plus_one(1) - r.lambda_plus * p2};
  w.k = {bv.minus_one(0) - r.gamma_minus * p1, bv.minus_one(0) - r.gamma_plus * p1,
         bv.minus_one(1) - r.gamma_minus * p2, bv.minus_one(1) - r.gamma_plus * p2};

  for (const auto& v : w.h) w.w1 += std::norm(v);
  for (const auto& v : w.k) w.w3 += std::norm(v);
  w.w2 = w.h[0] * std::conj(w.h[1]) + w.h[2] * std::conj(w.h[3]);
  w.w4 = w.k[0] * std::conj(w.k[1]) + w.k[2] * std::conj(w.k[3]);
  w.w5 = std::norm(w.h[0]) + std::norm(w.h[2]);
  w.w6 = std::norm(w.h[1]) + std::norm(w.h[3]);
  return w;
}

double measure_from_w(const WValues& w, const InitialVector& phi, int x) {
  if (x == 0) return phi.norm2();
  const auto& r = w.roots;
  if (x >= 1) {
    const double gap = std::norm(r.lambda_plus - r.lambda_minus);
    const double grow = std::pow(std::norm(r.lambda_plus), x) * w.w5;
    const double decay = std::pow(std::norm(r.lambda_minus), x) * w.w6;
    const auto osc = ipow(r.lambda_plus * std::conj(r.lambda_minus), x) * w.w2;
    return (grow + decay - 2 * osc.real()) / gap;
  }
  const int n = -x;
  const double gap = std::norm(r.gamma_plus - r.gamma_minus);
  const double left_plus = std::norm(w.k[0]) + std::norm(w.k[2]);
  const double left_minus = std::norm(w.k[1]) + std::norm(w.k[3]);
  const double grow = std::pow(std::norm(r.gamma_plus), n) * left_plus;
  const double decay = std::pow(std::norm(r.gamma_minus), n) * left_minus;
  const auto osc = ipow(r.gamma_plus * std::conj(r.gamma_minus), n) * w.w4;
  return (grow + decay - 2 * osc.real()) / gap;
}

RationalApprox rational_approximation(double value, long long max_den, double tol) {
  if (!(value >= 0 && value < 1)) {
    throw Error(Errc::InvalidArgument, "rational approximation expects a value in [0, 1)");
  }
  RationalApprox best{0, 1, value, value < tol};
  if (best.exact) return best;

  long long h_prev = 1, h_prev2 = 0;
  long long k_prev = 0, k_prev2 = 1;
  double x = value;
  for (int iter = 0; iter < 64; ++iter) {
    const double a_real = std::floor(x);
    if (a_real > static_cast<double>(max_den)) break;
    const auto a = static_cast<long long>(a_real);
    const long long h = a * h_prev + h_prev2;
    const long long k = a * k_prev + k_prev2;
    if (k > max_den) break;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    if (k > 0) {
      const double residual = std::abs(static_cast<double>(k) * value - static_cast<double>(h));
      best = {h, k, residual, residual < tol};
      if (best.exact) return best;
    }
    const double frac = x - a_real;
    if (frac <= std::numeric_limits<double>::min()) break;
    x = 1.0 / frac;
  }
  return best;
}

Measure hadamard_transfer_measure(const Angle& theta, const InitialVector& phi, int xmin, int xmax) {
  return measure_of(transfer_eigenfunction(Coin::hadamard(), theta.unit(), phi, xmin, xmax));
}

namespace {

/// max |mu(x+m) - mu(x)| / max(1, mu(x)) with x, x+m on the same side of the origin.
double shift_deviation(const Measure& mu, long long m) {
  double worst = 0;
  for (long long x = 1; x + m <= mu.xmax(); ++x) {
    worst = std::max(worst, rel_dev(mu.at(static_cast<int>(x + m)), mu.at(static_cast<int>(x))));
  }
  for (long long x = mu.xmin(); x + m <= -1; ++x) {
    worst = std::max(worst, rel_dev(mu.at(static_cast<int>(x + m)), mu.at(static_cast<int>(x))));
  }
  return worst;
}

}  // namespace

PeriodVerdict period_of(const Angle& theta, const InitialVector& phi) {
  if (theta_region(theta) != Region::K2) throw Error(Errc::NotK2, "periodicity is defined on K2");
  PeriodVerdict v;
  const double t = theta.radians();

  bool uniform = is_zero_or_pi(t);
  if (!uniform) {
    const auto w = w_values(phi, theta);
    const double scale = std::max(1.0, w.w1 + w.w3);
    uniform = std::abs(w.w2) <= 1e-12 * scale && std::abs(w.w4) <= 1e-12 * scale;
  }
  if (uniform) {
    v.kind = PeriodKind::UniformPeriodOne;
    v.m_min = 1;
    v.confirmation_deviation = shift_deviation(hadamard_transfer_measure(theta, phi, -8, 8), 1);
    return v;
  }

  v.xi = xi_angle(theta);
  v.approximant = rational_approximation(*v.xi / kTwoPi);
  if (!v.approximant->exact) {
    v.kind = PeriodKind::Aperiodic;
    v.m_min = 0;
    v.numerical_policy = true;
    return v;
  }

  const long long m = v.approximant->q;
  const long long reach = std::min<long long>(4 * m, kMaxTransferSite);
  const auto mu = hadamard_transfer_measure(theta, phi, -static_cast<int>(reach), static_cast<int>(reach));
  v.confirmation_deviation = shift_deviation(mu, m);
  if (v.confirmation_deviation <= 1e-8) {
    v.kind = PeriodKind::Finite;
    v.m_min = m;
  } else {
    v.kind = PeriodKind::Aperiodic;
    v.m_min = 0;
    v.numerical_policy = true;
  }
  return v;
}

ExponentialRates exp_rates(const Angle& theta) {
  if (theta_region(theta) != Region::K3) throw Error(Errc::NotK3, "exponential rates are defined on K3");
  const auto mods = lambda_moduli(theta);
  ExponentialRates r;
  r.r_plus = mods.plus;
  r.r_minus = mods.minus;
  if (!(std::abs(r.r_plus * r.r_minus - 1) <= 1e-10)) {
    throw Error(Errc::InvalidArgument, "root moduli do not multiply to one");
  }
  // Gamma = -Lambda for the Hadamard coin, so both directions share the dominant factor.
  r.growth_right = std::max(r.r_plus, r.r_minus);
  r.growth_left = r.growth_right;
  return r;
}

const char* class_name(const StationaryClass& c) {
  struct Visitor {
    const char* operator()(const QuadraticPolynomial&) const { return "quadratic"; }
    const char* operator()(const Uniform&) const { return "uniform"; }
    const char* operator()(const BoundedOscillatory&) const { return "bounded"; }
    const char* operator()(const Exponential&) const { return "exponential"; }
  };
  return std::visit(Visitor{}, c.kind);
}

StationaryClass classify(const Angle& theta, const InitialVector& phi) {
  StationaryClass out;
  out.region = theta_region(theta);
  const int half = static_cast<int>(kCrossCheckWindow);
  const auto mu = hadamard_transfer_measure(theta, phi, -half, half);
  const double level = phi.norm2();

  auto check = [&](auto&& model) {
    double worst = 0;
    for (int x = -half; x <= half; ++x) worst = std::max(worst, rel_dev(model(x), mu.at(x)));
    out.cross_check_deviation = worst;
  };

  switch (out.region) {
    case Region::K1: {
      const auto q = qp_coefficients(phi, theta);
      if (q.a <= 1e-12 * level) {
        // a = 0 forces |phi1| = |phi2| and Re(phi1 conj phi2) = 0, hence b = 0.
        if (std::abs(q.b) > 1e-9 * level) {
          throw Error(Errc::InvalidArgument, "quadratic coefficient vanished without the linear one");
        }
        out.kind = Uniform{q.c};
        check([&](int) { return q.c; });
      } else {
        out.kind = QuadraticPolynomial{q};
        check([&](int x) { return (q.a * x + q.b) * x + q.c; });
      }
      break;
    }
    case Region::K2: {
      const auto period = period_of(theta, phi);
      if (period.kind == PeriodKind::UniformPeriodOne) {
        out.kind = Uniform{level};
        check([&](int) { return level; });
      } else {
        BoundedOscillatory b{*period.xi, w_values(phi, theta), period};
        check([&](int x) { return measure_from_w(b.w, phi, x); });
        out.kind = std::move(b);
      }
      break;
    }
    case Region::K3: {
      Exponential e{exp_rates(theta), w_values(phi, theta)};
      check([&](int x) { return measure_from_w(e.w, phi, x); });
      out.kind = std::move(e);
      break;
    }
  }
  return out;
}

}  // namespace qwalk
