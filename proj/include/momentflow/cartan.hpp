#pragma once

#include "momentflow/rational.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

namespace momentflow {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class GroupKind { GL, SL };

std::string to_string(GroupKind g);
GroupKind parse_group(const std::string& s);

/// Concrete Cartan data for GL_n(R) or SL_n(R) with K = O_n.
///
/// The Lie algebra splits as k (skew-symmetric) + p (symmetric), both carrying
/// the trace form tr(X^T Y). The diagonal (torus) part of p comes first in
/// p_basis(): {E_ii} for GL, a Gram-Schmidt orthonormalization of
/// {E_ii - E_{i+1,i+1}} for SL. Off-diagonal p elements are (E_ij + E_ji)/sqrt2
/// and k elements are (E_ij - E_ji)/sqrt2, for i < j in lexicographic order.
class CartanContext {
 public:
  CartanContext(int n, GroupKind group);

  int n() const { return n_; }
  GroupKind group() const { return group_; }
  const std::vector<Matrix>& p_basis() const { return p_basis_; }
  const std::vector<Matrix>& k_basis() const { return k_basis_; }

  /// Number of leading p_basis elements spanning the diagonal subalgebra a.
  int torus_rank() const { return group_ == GroupKind::GL ? n_ : n_ - 1; }

  /// tr(X^T Y).
  static double inner(const Matrix& x, const Matrix& y) { return (x.array() * y.array()).sum(); }

  /// Differential of the Cartan involution, X -> -X^T.
  static Matrix involution(const Matrix& x) { return -x.transpose(); }

  /// Orthogonal projection of an arbitrary matrix onto p.
  Matrix project_to_p(const Matrix& x) const;

  /// Expands sum_k coeffs[k] * p_basis()[k].
  Matrix from_p_coordinates(const Vector& coeffs) const;

 private:
  int n_;
  GroupKind group_;
  std::vector<Matrix> p_basis_;
  std::vector<Matrix> k_basis_;
};

CartanContext build_context(int n, GroupKind group);

/// Unique symmetric positive-definite square root via a symmetric eigendecomposition.
Matrix spd_sqrt(const Matrix& s);

/// Basis of q_beta, the sum of the non-negative eigenspaces of ad(beta), in the
/// Lie algebra of ctx (trace-zero for SL).
std::vector<Matrix> parabolic_lie_algebra(const CartanContext& ctx, const Matrix& beta);

/// Canonical S_n-orbit representative: coordinates sorted non-increasing.
template <class T>
std::vector<T> weyl_normalize(std::vector<T> v) {
  std::sort(v.begin(), v.end(), std::greater<T>());
  return v;
}

Vector weyl_normalize(const Vector& v);

/// Max absolute deviation from symmetry.
double asymmetry(const Matrix& x);

}  // namespace momentflow
