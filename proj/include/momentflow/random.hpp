#pragma once

#include "momentflow/cartan.hpp"

#include <cmath>
#include <random>

namespace momentflow {

using Rng = std::mt19937_64;

inline Matrix random_matrix(int rows, int cols, Rng& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = u(rng);
  return m;
}

inline Vector random_vector(int n, Rng& rng) { return random_matrix(n, 1, rng).col(0); }

/// Q factor of a random matrix, sign-fixed so the diagonal of R is positive.
inline Matrix random_orthogonal(int n, Rng& rng) {
  Eigen::HouseholderQR<Matrix> qr(random_matrix(n, n, rng));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i)
    if (r(i, i) < 0) q.col(i) *= -1.0;
  return q;
}

/// Q1 diag(exp(s_i)) Q2 with s_i uniform in [-spread, spread]; condition number <= exp(2 spread).
inline Matrix random_well_conditioned(int n, Rng& rng, double spread = 0.5) {
  std::uniform_real_distribution<double> u(-spread, spread);
  Vector d(n);
  for (int i = 0; i < n; ++i) d[i] = std::exp(u(rng));
  return random_orthogonal(n, rng) * d.asDiagonal() * random_orthogonal(n, rng);
}

/// Random SPD matrix with eigenvalues in [lo, hi].
inline Matrix random_spd(int n, Rng& rng, double lo = 0.1, double hi = 10.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector d(n);
  for (int i = 0; i < n; ++i) d[i] = u(rng);
  const Matrix q = random_orthogonal(n, rng);
  Matrix s = q * d.asDiagonal() * q.transpose();
  return 0.5 * (s + s.transpose());
}

}  // namespace momentflow
