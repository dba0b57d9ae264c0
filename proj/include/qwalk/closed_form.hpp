#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "qwalk/coin.hpp"
#include "qwalk/field.hpp"
#include "qwalk/transfer.hpp"

namespace qwalk {

/// Roots of x^2 + l x + c22/c11 = 0, l = -(lambda + Delta/lambda)/c11, and their
/// left-half-line counterparts Gamma = (c11/c22) Lambda.
template <typename Real = double>
struct BasicCharRoots {
  Complex<Real> lambda;
  Complex<Real> h;             // lambda^2 + Delta
  Complex<Real> discriminant;  // h^2 - 4 lambda^2 c11 c22
  Complex<Real> lambda_plus;
  Complex<Real> lambda_minus;
  Complex<Real> gamma_plus;
  Complex<Real> gamma_minus;
  bool is_double = false;
};

using CharRoots = BasicCharRoots<double>;

enum class RootKind { Type1, Type2, Type3 };

constexpr const char* to_string(RootKind k) {
  switch (k) {
    case RootKind::Type1: return "Type1";
    case RootKind::Type2: return "Type2";
    case RootKind::Type3: return "Type3";
  }
  return "?";
}

template <typename Real = double>
struct BasicRootType {
  RootKind kind;
  Real modulus_plus;
  Real modulus_minus;
};

using RootType = BasicRootType<double>;

template <typename Real>
BasicCharRoots<Real> char_roots(const BasicCoin<Real>& coin, Complex<Real> lambda) {
  detail::require_corner(coin);
  detail::require_unit_circle(lambda);
  const auto c11 = coin.c11(), c22 = coin.c22();

  BasicCharRoots<Real> r;
  r.lambda = lambda;
  r.h = lambda * lambda + coin.delta();
  r.discriminant = r.h * r.h - Real(4) * lambda * lambda * c11 * c22;
  // Principal branch; swapping the branch only exchanges the +/- labels.
  const auto d = std::sqrt(r.discriminant);
  r.lambda_plus = (r.h + d) / (Real(2) * c11 * lambda);
  r.lambda_minus = (r.h - d) / (Real(2) * c11 * lambda);
  r.gamma_plus = (r.h + d) / (Real(2) * c22 * lambda);
  r.gamma_minus = (r.h - d) / (Real(2) * c22 * lambda);
  r.is_double = std::abs(r.discriminant) <= Real(1e-12);
  if (r.is_double) {
    // sqrt of an O(eps) discriminant would split the root by O(sqrt(eps)).
    r.lambda_plus = r.lambda_minus = r.h / (Real(2) * c11 * lambda);
    r.gamma_plus = r.gamma_minus = r.h / (Real(2) * c22 * lambda);
  }

  const auto l = -(lambda + coin.delta() / lambda) / c11;
  const auto c0 = c22 / c11;
  auto residual = [&](Complex<Real> x) {
    return std::abs(x * x + l * x + c0) / std::max(Real(1), std::norm(x));
  };
  const Real err = std::max({residual(r.lambda_plus), residual(r.lambda_minus),
                             std::abs(r.lambda_plus * r.lambda_minus - c0)});
  if (!(err <= Real(1e-12))) {
    throw Error(Errc::InvalidArgument, "characteristic roots fail their residual check (" +
                                           std::to_string(static_cast<double>(err)) + ")");
  }
  return r;
}

/// Type1 double root, Type2 distinct roots of equal modulus, Type3 split moduli.
///
/// Root equality uses the discriminant flag as well as |Lambda+ - Lambda-| <= 1e-12:
/// at an exact double root the computed discriminant is O(eps), so the computed
/// roots differ by O(sqrt(eps)).
template <typename Real>
BasicRootType<Real> root_type(const BasicCharRoots<Real>& roots) {
  BasicRootType<Real> t;
  t.modulus_plus = std::abs(roots.lambda_plus);
  t.modulus_minus = std::abs(roots.lambda_minus);
  if (roots.is_double || std::abs(roots.lambda_plus - roots.lambda_minus) <= Real(1e-12)) {
    t.kind = RootKind::Type1;
  } else if (std::abs(t.modulus_plus - t.modulus_minus) <= Real(1e-10)) {
    t.kind = RootKind::Type2;
  } else {
    t.kind = RootKind::Type3;
  }
  return t;
}

enum class ClosedFormCase { DoubleRoot, DistinctRoots };

template <typename Real = double>
struct BasicClosedFormValue {
  Spinor<Real> value;
  ClosedFormCase branch;
  /// Set when lambda sits within 1e-6 of the case boundary and both formulas
  /// could be evaluated: the norm of their difference.
  std::optional<Real> branch_divergence;
  bool warning = false;
};

using ClosedFormValue = BasicClosedFormValue<double>;

/// Distance |lambda^2 - (Delta~ +/- 2 sqrt(c11 c12 c21 c22))| to the nearer double-root value.
template <typename Real>
Real double_root_distance(const BasicCoin<Real>& coin, Complex<Real> lambda) {
  const auto s = Real(2) * std::sqrt(coin.c11() * coin.c12() * coin.c21() * coin.c22());
  const auto l2 = lambda * lambda;
  return std::min(std::abs(l2 - (coin.delta_tilde() + s)), std::abs(l2 - (coin.delta_tilde() - s)));
}

namespace detail {

inline constexpr double kCaseTol = 1e-10;
inline constexpr double kNearCaseTol = 1e-6;

template <typename Real>
Spinor<Real> double_root_value(const BasicCoin<Real>& coin, Complex<Real> lambda,
                               const BasicInitialVector<Real>& phi, int x) {
  const auto c11 = coin.c11(), c12 = coin.c12(), c21 = coin.c21(), c22 = coin.c22();
  const auto delta = coin.delta(), delta_t = coin.delta_tilde();
  const auto l2 = lambda * lambda;
  const auto h = l2 + delta;
  if (!(std::abs(h) > Real(1e-12))) {
    throw Error(Errc::DegeneratePrefactor, "lambda^2 + Delta = 0 at a double root");
  }
  const auto p1 = phi.phi1(), p2 = phi.phi2();
  const Real xr = Real(x);
  Spinor<Real> bracket;
  bracket(0) = p1 * (Real(1) + xr) * l2 - (p1 * delta_t + Real(2) * c12 * c22 * p2) * xr + p1 * delta;
  bracket(1) = p2 * (Real(1) - xr) * l2 + (p2 * delta_t + Real(2) * c11 * c21 * p1) * xr + p2 * delta;
  const auto prefactor = x >= 1 ? ipow(h / (Real(2) * c11 * lambda), x)
                                : ipow(h / (Real(2) * c22 * lambda), -x);
  return prefactor / h * bracket;
}

template <typename Real>
Spinor<Real> distinct_root_value(const BasicCoin<Real>& coin, Complex<Real> lambda,
                                 const BasicInitialVector<Real>& phi, int x) {
  const auto roots = char_roots(coin, lambda);
  const auto bv = boundary_values(coin, lambda, phi);
  const auto v0 = phi.spinor();
  if (x >= 1) {
    const auto lp = roots.lambda_plus, lm = roots.lambda_minus;
    if (lp == lm) throw Error(Errc::InvalidArgument, "distinct-root formula at a double root");
    const auto ap = ipow(lp, x), am = ipow(lm, x);
    return (ap * (bv.plus_one - lm * v0) - am * (bv.plus_one - lp * v0)) / (lp - lm);
  }
  const auto gp = roots.gamma_plus, gm = roots.gamma_minus;
  if (gp == gm) throw Error(Errc::InvalidArgument, "distinct-root formula at a double root");
  const auto bp = ipow(gp, -x), bm = ipow(gm, -x);
  return (bp * (bv.minus_one - gm * v0) - bm * (bv.minus_one - gp * v0)) / (gp - gm);
}

}  // namespace detail

/// Closed-form eigenfunction value at site x, with branch bookkeeping.
template <typename Real>
BasicClosedFormValue<Real> closed_form_evaluate(const BasicCoin<Real>& coin, Complex<Real> lambda,
                                                const BasicInitialVector<Real>& phi, int x) {
  detail::require_corner(coin);
  detail::require_unit_circle(lambda);
  const Real dist = double_root_distance(coin, lambda);
  BasicClosedFormValue<Real> out;
  out.branch = dist <= Real(detail::kCaseTol) ? ClosedFormCase::DoubleRoot
                                              : ClosedFormCase::DistinctRoots;
  if (x == 0) {
    out.value = phi.spinor();
    return out;
  }
  out.value = out.branch == ClosedFormCase::DoubleRoot
                  ? detail::double_root_value(coin, lambda, phi, x)
                  : detail::distinct_root_value(coin, lambda, phi, x);

  if (dist < Real(detail::kNearCaseTol)) {
    try {
      const Spinor<Real> other = out.branch == ClosedFormCase::DoubleRoot
                                     ? detail::distinct_root_value(coin, lambda, phi, x)
                                     : detail::double_root_value(coin, lambda, phi, x);
      const Real scale = std::max(Real(1), out.value.norm());
      out.branch_divergence = (other - out.value).norm() / scale;
      out.warning = *out.branch_divergence > Real(1e-6);
    } catch (const Error&) {
      // The alternative formula is undefined here; nothing to compare against.
    }
  }
  return out;
}

template <typename Real>
Spinor<Real> closed_form_eigenfunction(const BasicCoin<Real>& coin, Complex<Real> lambda,
                                       const BasicInitialVector<Real>& phi, int x) {
  return closed_form_evaluate(coin, lambda, phi, x).value;
}

template <typename Real>
BasicSpinorField<Real> closed_form_field(const BasicCoin<Real>& coin, Complex<Real> lambda,
                                         const BasicInitialVector<Real>& phi, int xmin, int xmax) {
  BasicSpinorField<Real> field(Window(xmin, xmax));
  for (int x = xmin; x <= xmax; ++x) field.at(x) = closed_form_eigenfunction(coin, lambda, phi, x);
  return field;
}

}  // namespace qwalk
