#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/types.hpp"

namespace qwalk {

/// Closed integer window [xmin, xmax] that always contains the origin.
struct Window {
  int xmin = 0;
  int xmax = 0;

  Window() = default;
  Window(int lo, int hi) : xmin(lo), xmax(hi) {
    if (lo > 0 || hi < 0) {
      throw Error(Errc::InvalidArgument, "window [" + std::to_string(lo) + ", " +
                                             std::to_string(hi) + "] must contain the origin");
    }
  }

  static Window symmetric(int half_width) { return Window(-half_width, half_width); }

  std::size_t size() const { return static_cast<std::size_t>(xmax - xmin + 1); }
  bool contains(int x) const { return x >= xmin && x <= xmax; }
  std::size_t index(int x) const { return static_cast<std::size_t>(x - xmin); }

  bool operator==(const Window&) const = default;
};

/// Dense spinor field on a finite window.
template <typename Real = double>
class BasicSpinorField {
 public:
  using value_type = Spinor<Real>;

  BasicSpinorField() : window_(0, 0), values_(1, value_type::Zero()) {}

  explicit BasicSpinorField(Window w) : window_(w), values_(w.size(), value_type::Zero()) {}

  BasicSpinorField(Window w, std::vector<value_type> values)
      : window_(w), values_(std::move(values)) {
    if (values_.size() != window_.size()) {
      throw Error(Errc::InvalidArgument, "field length does not match window");
    }
  }

  /// Same spinor at every site.
  static BasicSpinorField constant(Window w, const value_type& v) {
    return BasicSpinorField(w, std::vector<value_type>(w.size(), v));
  }

  /// v at the origin, zero elsewhere.
  static BasicSpinorField delta(Window w, const value_type& v) {
    BasicSpinorField f(w);
    f.at(0) = v;
    return f;
  }

  const Window& window() const { return window_; }
  int xmin() const { return window_.xmin; }
  int xmax() const { return window_.xmax; }
  std::size_t size() const { return values_.size(); }

  value_type& at(int x) { return values_[window_.index(x)]; }
  const value_type& at(int x) const { return values_[window_.index(x)]; }

  const std::vector<value_type>& values() const { return values_; }

  bool is_zero() const {
    for (const auto& v : values_) {
      if (v(0) != Complex<Real>(0) || v(1) != Complex<Real>(0)) return false;
    }
    return true;
  }

 private:
  Window window_;
  std::vector<value_type> values_;
};

/// Nonnegative function on a finite window.
template <typename Real = double>
class BasicMeasure {
 public:
  BasicMeasure(Window w, std::vector<Real> values) : window_(w), values_(std::move(values)) {
    if (values_.size() != window_.size()) {
      throw Error(Errc::InvalidArgument, "measure length does not match window");
    }
    for (Real v : values_) {
      if (!(v >= Real(0))) throw Error(Errc::InvalidArgument, "measure values must be >= 0");
    }
  }

  const Window& window() const { return window_; }
  int xmin() const { return window_.xmin; }
  int xmax() const { return window_.xmax; }
  std::size_t size() const { return values_.size(); }

  Real at(int x) const { return values_[window_.index(x)]; }
  const std::vector<Real>& values() const { return values_; }

 private:
  Window window_;
  std::vector<Real> values_;
};

/// Psi(0) = (phi1, phi2), never the zero vector.
template <typename Real = double>
class BasicInitialVector {
 public:
  BasicInitialVector(Complex<Real> phi1, Complex<Real> phi2) : phi1_(phi1), phi2_(phi2) {
    if (phi1 == Complex<Real>(0) && phi2 == Complex<Real>(0)) {
      throw Error(Errc::ZeroInput, "initial vector (phi1, phi2) must be nonzero");
    }
  }

  Complex<Real> phi1() const { return phi1_; }
  Complex<Real> phi2() const { return phi2_; }
  Real norm2() const { return std::norm(phi1_) + std::norm(phi2_); }

  Spinor<Real> spinor() const { return Spinor<Real>(phi1_, phi2_); }

 private:
  Complex<Real> phi1_;
  Complex<Real> phi2_;
};

using SpinorField = BasicSpinorField<double>;
using Measure = BasicMeasure<double>;
using InitialVector = BasicInitialVector<double>;

/// mu(x) = |Psi_L(x)|^2 + |Psi_R(x)|^2 on the same window.
template <typename Real>
BasicMeasure<Real> measure_of(const BasicSpinorField<Real>& field) {
  std::vector<Real> mu;
  mu.reserve(field.size());
  for (const auto& v : field.values()) mu.push_back(std::norm(v(0)) + std::norm(v(1)));
  return BasicMeasure<Real>(field.window(), std::move(mu));
}

}  // namespace qwalk
