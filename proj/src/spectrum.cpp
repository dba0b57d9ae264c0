#include "qwalk/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "qwalk/angle.hpp"

namespace qwalk {

namespace {

bool is_hadamard(const Coin& coin) {
  return max_abs(Matrix2cd(coin.matrix() - Coin::hadamard().matrix())) <= 1e-15;
}

/// Unit eigenvector of m for eigenvalue lambda, from whichever row of (m - lambda) is larger.
Eigen::Vector2cd eigenvector(const Matrix2cd& m, std::complex<double> lambda) {
  const Eigen::Vector2cd from_row1(m(0, 1), lambda - m(0, 0));
  const Eigen::Vector2cd from_row2(lambda - m(1, 1), m(1, 0));
  Eigen::Vector2cd v = from_row1.norm() >= from_row2.norm() ? from_row1 : from_row2;
  // Scalar matrix: every vector is an eigenvector.
  if (v.norm() <= 1e-300) v = Eigen::Vector2cd(1, 0);
  return v.normalized();
}

double wrap_arg(std::complex<double> z) {
  double a = std::arg(z);
  if (a < 0) a += kTwoPi;
  if (a >= kTwoPi) a = 0;
  return a;
}

void require_grid(int grid_size) {
  if (grid_size < 16) throw Error(Errc::InvalidArgument, "grid size must be at least 16");
}

}  // namespace

Matrix2cd fourier_symbol(const Coin& coin, double k) {
  Matrix2cd u = coin.matrix();
  u.row(0) *= std::polar(1.0, k);
  u.row(1) *= std::polar(1.0, -k);
  return u;
}

SymbolEigenvalues symbol_eigenvalues(const Coin& coin, double k) {
  const Matrix2cd u = fourier_symbol(coin, k);
  SymbolEigenvalues out;
  out.k = k;
  if (is_hadamard(coin)) {
    const double root = std::sqrt(1 + std::cos(k) * std::cos(k));
    const double s = std::sin(k);
    out.lambda1 = std::complex<double>(root, s) / std::sqrt(2.0);
    out.lambda2 = std::complex<double>(-root, s) / std::sqrt(2.0);
  } else {
    const std::complex<double> half_trace = u.trace() / 2.0;
    const std::complex<double> disc = std::sqrt(half_trace * half_trace - u.determinant());
    out.lambda1 = half_trace + disc;
    out.lambda2 = half_trace - disc;
  }
  for (const auto lambda : {out.lambda1, out.lambda2}) {
    const Eigen::Vector2cd v = eigenvector(u, lambda);
    out.residual = std::max(out.residual, (u * v - lambda * v).norm());
  }
  return out;
}

std::vector<DispersionPoint> dispersion_table(const Coin& coin, int grid_size) {
  require_grid(grid_size);
  std::vector<DispersionPoint> table;
  table.reserve(static_cast<std::size_t>(grid_size));
  for (int j = 0; j < grid_size; ++j) {
    const double k = -kPi + kTwoPi * j / grid_size;
    const auto ev = symbol_eigenvalues(coin, k);
    table.push_back({k, wrap_arg(ev.lambda1), wrap_arg(ev.lambda2)});
  }
  return table;
}

std::vector<Arc> spectrum_arcs(const Coin& coin, int grid_size) {
  const auto table = dispersion_table(coin, grid_size);
  std::vector<double> args;
  args.reserve(2 * table.size());
  for (const auto& p : table) {
    args.push_back(p.arg1);
    args.push_back(p.arg2);
  }
  std::sort(args.begin(), args.end());

  const double merge = 3 * kTwoPi / grid_size;
  std::vector<Arc> arcs;
  Arc current{args.front(), args.front()};
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] - current.hi <= merge) {
      current.hi = args[i];
    } else {
      arcs.push_back(current);
      current = {args[i], args[i]};
    }
  }
  arcs.push_back(current);
  return arcs;
}

}  // namespace qwalk
