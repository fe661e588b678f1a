#include "momentflow/cartan.hpp"

#include <cmath>
#include <stdexcept>

namespace momentflow {

namespace {

constexpr double kGradingTol = 1e-12;

Matrix unit(int n, int i, int j) {
  Matrix e = Matrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

}  // namespace

std::string to_string(GroupKind g) { return g == GroupKind::GL ? "GL" : "SL"; }

GroupKind parse_group(const std::string& s) {
  if (s == "GL" || s == "gl") return GroupKind::GL;
  if (s == "SL" || s == "sl") return GroupKind::SL;
  throw std::invalid_argument("unknown group '" + s + "' (expected GL or SL)");
}

CartanContext::CartanContext(int n, GroupKind group) : n_(n), group_(group) {
  if (n < 1) throw std::invalid_argument("build_context: n must be positive");
  if (group == GroupKind::SL && n < 2) throw std::invalid_argument("build_context: SL requires n >= 2");

  const double r = 1.0 / std::sqrt(2.0);
  if (group == GroupKind::GL) {
    for (int i = 0; i < n; ++i) p_basis_.push_back(unit(n, i, i));
  } else {
    std::vector<Matrix> diag;
    for (int i = 0; i + 1 < n; ++i) {
      Matrix d = unit(n, i, i) - unit(n, i + 1, i + 1);
      for (const auto& b : diag) d -= inner(b, d) * b;
      d /= std::sqrt(inner(d, d));
      diag.push_back(d);
    }
    p_basis_ = std::move(diag);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      p_basis_.push_back(r * (unit(n, i, j) + unit(n, j, i)));
      k_basis_.push_back(r * (unit(n, i, j) - unit(n, j, i)));
    }
}

Matrix CartanContext::project_to_p(const Matrix& x) const {
  Matrix out = Matrix::Zero(n_, n_);
  for (const auto& b : p_basis_) out += inner(b, x) * b;
  return out;
}

Matrix CartanContext::from_p_coordinates(const Vector& coeffs) const {
  if (coeffs.size() != static_cast<Eigen::Index>(p_basis_.size()))
    throw std::invalid_argument("from_p_coordinates: wrong coefficient count");
  Matrix out = Matrix::Zero(n_, n_);
  for (std::size_t k = 0; k < p_basis_.size(); ++k) out += coeffs[static_cast<Eigen::Index>(k)] * p_basis_[k];
  return out;
}

CartanContext build_context(int n, GroupKind group) { return CartanContext(n, group); }

double asymmetry(const Matrix& x) {
  if (x.rows() != x.cols()) return INFINITY;
  return (x - x.transpose()).cwiseAbs().maxCoeff();
}

Matrix spd_sqrt(const Matrix& s) {
  if (s.rows() != s.cols() || s.rows() == 0) throw std::invalid_argument("spd_sqrt: matrix must be square");
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  if (asymmetry(s) > 1e-12 * scale) throw std::invalid_argument("spd_sqrt: matrix is not symmetric");

  if (s.isDiagonal(0.0)) {
    Vector d = s.diagonal();
    if ((d.array() <= 0.0).any()) throw std::invalid_argument("spd_sqrt: matrix is not positive definite");
    return d.cwiseSqrt().asDiagonal();
  }

  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (s + s.transpose()));
  if (es.info() != Eigen::Success) throw std::runtime_error("spd_sqrt: eigendecomposition failed");
  const Vector& ev = es.eigenvalues();
  if (ev.minCoeff() <= 0.0) throw std::invalid_argument("spd_sqrt: matrix is not positive definite");
  const Matrix& q = es.eigenvectors();
  Matrix h = q * ev.cwiseSqrt().asDiagonal() * q.transpose();
  return 0.5 * (h + h.transpose());
}

std::vector<Matrix> parabolic_lie_algebra(const CartanContext& ctx, const Matrix& beta) {
  const int n = ctx.n();
  if (beta.rows() != n || beta.cols() != n) throw std::invalid_argument("parabolic_lie_algebra: beta has wrong size");
  if (asymmetry(beta) > 1e-12 * std::max(1.0, beta.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("parabolic_lie_algebra: beta must be symmetric");

  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (beta + beta.transpose()));
  const Vector& lam = es.eigenvalues();
  const Matrix& q = es.eigenvectors();

  // ad(beta)(Q E_ij Q^T) = (lam_i - lam_j) Q E_ij Q^T.
  std::vector<Matrix> out;
  std::vector<Matrix> diagonal;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (lam[i] - lam[j] < -kGradingTol) continue;
      Matrix x = q * unit(n, i, j) * q.transpose();
      if (i == j && ctx.group() == GroupKind::SL)
        diagonal.push_back(x);
      else
        out.push_back(x);
    }
  for (std::size_t i = 0; i + 1 < diagonal.size(); ++i) out.push_back(diagonal[i] - diagonal[i + 1]);
  return out;
}

Vector weyl_normalize(const Vector& v) {
  std::vector<double> tmp(v.data(), v.data() + v.size());
  tmp = weyl_normalize(std::move(tmp));
  return Eigen::Map<Vector>(tmp.data(), static_cast<Eigen::Index>(tmp.size()));
}

}  // namespace momentflow
