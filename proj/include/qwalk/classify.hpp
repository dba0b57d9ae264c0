#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <variant>

#include "qwalk/angle.hpp"
#include "qwalk/closed_form.hpp"
#include "qwalk/field.hpp"

// Classification of the stationary measures of the Hadamard walk by the
// eigenvalue argument theta (lambda = e^{i theta}):
//   K1 = {pi/4, 3pi/4, 5pi/4, 7pi/4}             double root  -> quadratic or uniform
//   K2 = [0,pi/4) u (3pi/4,5pi/4) u (7pi/4,2pi)  |Lambda| = 1  -> bounded, possibly periodic
//   K3 = the rest                                split moduli -> exponential

namespace qwalk {

enum class Region { K1, K2, K3 };

const char* to_string(Region r);

Region theta_region(const Angle& theta);

/// Arguments where O(zeta) has a double characteristic root:
/// e^{i eta/2}, e^{i(pi - eta/2)}, e^{i(pi + eta/2)}, e^{i(2pi - eta/2)}, eta in (0, pi).
std::array<std::complex<double>, 4> double_root_eigenvalues(double zeta);

/// z = conj(lambda^2 - 1) * sqrt(lambda^4 + 1), sqrt branch fixed by the sign table:
/// purely imaginary on K2, purely real on K3.
std::complex<double> z_components(const Angle& theta);

/// Squared root moduli (|Lambda+|^2, |Lambda-|^2) for the Hadamard walk.
struct LambdaModuli {
  double plus = 1;
  double minus = 1;
};

LambdaModuli lambda_moduli(const Angle& theta);

/// mu(x) = a x^2 + b x + c on K1.
struct QuadraticCoefficients {
  double a = 0;
  double b = 0;
  double c = 0;
};

QuadraticCoefficients qp_coefficients(const InitialVector& phi, const Angle& theta);

/// |phi1| = |phi2| and arg phi1 - arg phi2 = pi/2 (theta = pi/4, 5pi/4) or 3pi/2 (3pi/4, 7pi/4).
bool uniform_condition(const InitialVector& phi, const Angle& theta);

/// Oscillation angle xi in (0, 2pi) of Lambda+ conj(Lambda-) on K2 \ {0, pi}.
double xi_angle(const Angle& theta);

/// Interpolation coefficients of the distinct-root eigenfunction and their quadratic forms.
struct WValues {
  std::array<std::complex<double>, 4> h{};  // right half-line, from Psi(1)
  std::array<std::complex<double>, 4> k{};  // left half-line, from Psi(-1)
  double w1 = 0;                            // sum |h_i|^2
  std::complex<double> w2;                  // h1 conj h2 + h3 conj h4
  double w3 = 0;                            // sum |k_i|^2
  std::complex<double> w4;                  // k1 conj k2 + k3 conj k4
  double w5 = 0;                            // |h1|^2 + |h3|^2
  double w6 = 0;                            // |h2|^2 + |h4|^2
  CharRoots roots;
};

WValues w_values(const InitialVector& phi, const Angle& theta);

/// mu(x) rebuilt from the W-form (distinct roots); x = 0 gives |phi|^2.
double measure_from_w(const WValues& w, const InitialVector& phi, int x);

/// Best rational p/q for a value in [0, 1) from its continued-fraction convergents.
struct RationalApprox {
  long long p = 0;
  long long q = 1;
  double residual = 0;  // |q * value - p|
  bool exact = false;   // residual below the detection threshold
};

inline constexpr long long kMaxPeriodDenominator = 1'000'000;
inline constexpr double kRationalResidual = 1e-9;

RationalApprox rational_approximation(double value, long long max_den = kMaxPeriodDenominator,
                                      double tol = kRationalResidual);

enum class PeriodKind { Finite, Aperiodic, UniformPeriodOne };

const char* to_string(PeriodKind k);

struct PeriodVerdict {
  PeriodKind kind = PeriodKind::UniformPeriodOne;
  long long m_min = 1;                          // meaningful for Finite and UniformPeriodOne
  std::optional<double> xi;                     // absent for UniformPeriodOne
  std::optional<RationalApprox> approximant;    // xi / 2pi
  double confirmation_deviation = 0;            // max |mu(x+m) - mu(x)| over the checked sites
  bool numerical_policy = false;                // Aperiodic is a detection-policy verdict
};

PeriodVerdict period_of(const Angle& theta, const InitialVector& phi);

/// Per-site growth of the measure on K3.
struct ExponentialRates {
  double r_plus = 1;       // |Lambda+|^2
  double r_minus = 1;      // |Lambda-|^2 = 1 / r_plus
  double growth_right = 1; // dominant factor toward +infinity
  double growth_left = 1;  // dominant factor toward -infinity
};

ExponentialRates exp_rates(const Angle& theta);

struct QuadraticPolynomial {
  QuadraticCoefficients coefficients;
};

struct Uniform {
  double level = 0;
};

struct BoundedOscillatory {
  double xi = 0;
  WValues w;
  PeriodVerdict period;
};

struct Exponential {
  ExponentialRates rates;
  WValues w;
};

struct StationaryClass {
  Region region = Region::K2;
  std::variant<QuadraticPolynomial, Uniform, BoundedOscillatory, Exponential> kind;
  /// Largest relative deviation between the class formula and transfer iteration on [-40, 40].
  double cross_check_deviation = 0;
};

const char* class_name(const StationaryClass& c);

StationaryClass classify(const Angle& theta, const InitialVector& phi);

/// Transfer-iteration measure of the Hadamard eigenfunction on [xmin, xmax].
Measure hadamard_transfer_measure(const Angle& theta, const InitialVector& phi, int xmin, int xmax);

}  // namespace qwalk
