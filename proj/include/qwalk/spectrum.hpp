#pragma once

#include <complex>
#include <vector>

#include "qwalk/coin.hpp"

namespace qwalk {

/// Fourier symbol e^{ik} P + e^{-ik} Q: row 1 of C times e^{ik}, row 2 times e^{-ik}.
Matrix2cd fourier_symbol(const Coin& coin, double k);

struct SymbolEigenvalues {
  double k = 0;
  std::complex<double> lambda1;
  std::complex<double> lambda2;
  double residual = 0;  // max ||U v - lambda v|| over the two unit eigenvectors
};

/// Closed form for the Hadamard coin, quadratic formula otherwise.
SymbolEigenvalues symbol_eigenvalues(const Coin& coin, double k);

struct Arc {
  double lo = 0;
  double hi = 0;
};

/// Arguments of both eigenvalue branches over k_j = -pi + 2 pi j / grid_size, merged into
/// closed intervals of [0, 2pi) wherever consecutive points are within 3 grid steps.
/// The sweep does not wrap: an arc touching 0 and one touching 2pi stay separate.
std::vector<Arc> spectrum_arcs(const Coin& coin, int grid_size);

struct DispersionPoint {
  double k = 0;
  double arg1 = 0;  // in [0, 2pi)
  double arg2 = 0;
};

std::vector<DispersionPoint> dispersion_table(const Coin& coin, int grid_size);

}  // namespace qwalk
