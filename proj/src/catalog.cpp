#include "momentflow/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace momentflow {

namespace {

/// Orthonormal basis (columns) of the column span of a, rank cut at tol.
Matrix orthonormal_span(const Matrix& a, double tol = 1e-10) {
  if (a.cols() == 0) return Matrix(a.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU);
  const Vector& s = svd.singularValues();
  Eigen::Index rank = 0;
  const double cut = tol * std::max(1.0, s.size() ? s[0] : 0.0);
  while (rank < s.size() && s[rank] > cut) ++rank;
  return svd.matrixU().leftCols(rank);
}

Rational block_q(int k) { return Rational(static_cast<long>(k - 1) * k * (k + 1), 12); }

}  // namespace

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw std::invalid_argument("Partition: no parts");
  for (int p : parts_)
    if (p < 1) throw std::invalid_argument("Partition: parts must be positive");
  std::sort(parts_.begin(), parts_.end(), std::greater<int>());
}

Partition Partition::parse(const std::string& text) {
  std::vector<int> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
    if (item.empty() || !std::all_of(item.begin(), item.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw std::invalid_argument("Partition: cannot parse '" + text + "'");
    parts.push_back(std::stoi(item));
  }
  return Partition(std::move(parts));
}

int Partition::n() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

bool Partition::all_ones() const { return parts_.front() == 1; }

std::string Partition::str() const {
  std::string s;
  for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "," : "") + std::to_string(parts_[i]);
  return s;
}

std::vector<Partition> partitions_of(int n) {
  if (n < 1) throw std::invalid_argument("partitions_of: n must be positive");
  std::vector<Partition> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      cur.push_back(p);
      rec(remaining - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

bool dominates(const Partition& a, const Partition& b) {
  if (a.n() != b.n()) return false;
  int sa = 0, sb = 0;
  const std::size_t len = std::max(a.parts().size(), b.parts().size());
  for (std::size_t i = 0; i < len; ++i) {
    sa += i < a.parts().size() ? a.parts()[i] : 0;
    sb += i < b.parts().size() ? b.parts()[i] : 0;
    if (sa < sb) return false;
  }
  return true;
}

Vector jordan_vector(const Partition& p) {
  if (p.all_ones()) throw std::invalid_argument("jordan_vector: all-ones partition gives the zero matrix");
  const int n = p.n();
  std::vector<bool> cut(static_cast<std::size_t>(n + 1), false);
  int s = 0;
  for (int part : p.parts()) cut[static_cast<std::size_t>(s += part)] = true;
  Vector x = Vector::Zero(n * n);
  for (int i = 1; i < n; ++i)  // 1-based J membership
    if (!cut[static_cast<std::size_t>(i)]) x[(i - 1) * n + i] = 1.0;
  return x;
}

RationalVector jordan_block_diagonal(const Partition& p) {
  RationalVector out;
  for (int k : p.parts())
    for (int i = 0; i < k; ++i) out.emplace_back(k - 1 - 2 * i, 2);
  return out;
}

JordanLabel jordan_label(const Partition& p) {
  const Vector x = jordan_vector(p);
  const RepSpec spec = RepSpec::make(Family::Adjoint, p.n());
  auto label = optimal_class(spec, x);
  if (!label) throw std::logic_error("jordan_label: nilpotent representative reported semistable");

  JordanLabel out;
  out.label = *label;
  out.beta_paper = label->eta_normalized;
  out.q_paper = dot(out.beta_paper, out.beta_paper);
  out.q_formula = 0;
  for (int k : p.parts()) out.q_formula += block_q(k);

  out.display_ok = out.beta_paper == weyl_normalize(jordan_block_diagonal(p));
  out.formula_ok = out.q_paper == out.q_formula;
  out.identity_ok = label->q * out.q_paper == 1;

  out.bound_ok = true;
  for (int k : p.parts()) {
    const Rational lower(k - 1, 2);
    if (!(lower <= block_q(k) && block_q(k) <= out.q_paper)) out.bound_ok = false;
  }

  // ad(beta) has eigenvector E_kl with eigenvalue beta_k - beta_l.
  const auto& b = out.beta_paper;
  out.max_negdef_eigenvalue = -out.q_paper;
  for (const auto& bi : b)
    for (const auto& bj : b) out.max_negdef_eigenvalue = std::max(out.max_negdef_eigenvalue, Rational(bi - bj - out.q_paper));
  out.negdef_ok = out.max_negdef_eigenvalue <= 0;
  return out;
}

BracketTensor::BracketTensor(int n, Vector coords) : n_(n), coords_(std::move(coords)) {
  if (n < 2) throw std::invalid_argument("BracketTensor: n must be >= 2");
  if (coords_.size() != n * n * (n - 1) / 2) throw std::invalid_argument("BracketTensor: wrong coordinate count");
  if (!coords_.allFinite()) throw std::invalid_argument("BracketTensor: non-finite structure constant");
}

double BracketTensor::constant(int l, int i, int j) const {
  if (i == j) return 0.0;
  if (i > j) return -constant(l, j, i);
  return coords_[pair_index(n_, i, j) * n_ + l];
}

Vector BracketTensor::operator()(const Vector& x, const Vector& y) const {
  Vector out = Vector::Zero(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      const double w = x[i] * y[j] - x[j] * y[i];
      if (w != 0.0) out += w * coords_.segment(pair_index(n_, i, j) * n_, n_);
    }
  return out;
}

double BracketTensor::jacobi_residual() const {
  double worst = 0.0;
  const Matrix id = Matrix::Identity(n_, n_);
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      for (int c = 0; c < n_; ++c) {
        const Vector ea = id.col(a), eb = id.col(b), ec = id.col(c);
        const Vector j = (*this)((*this)(ea, eb), ec) + (*this)((*this)(eb, ec), ea) + (*this)((*this)(ec, ea), eb);
        worst = std::max(worst, j.cwiseAbs().maxCoeff());
      }
  return worst;
}

BracketPreset parse_bracket_preset(const std::string& s) {
  if (s == "heisenberg") return BracketPreset::Heisenberg;
  if (s == "chain") return BracketPreset::Chain;
  throw std::invalid_argument("unknown bracket preset '" + s + "' (expected heisenberg or chain)");
}

BracketTensor bracket_preset(BracketPreset preset, int n) {
  if (preset == BracketPreset::Heisenberg && n != 3) throw std::invalid_argument("heisenberg preset requires n = 3");
  if (preset == BracketPreset::Chain && n < 3) throw std::invalid_argument("chain preset requires n >= 3");
  Vector c = Vector::Zero(n * n * (n - 1) / 2);
  // mu(e_1, e_i) = e_{i+1}; 0-based pair (0, i) -> l = i + 1.
  const int last = preset == BracketPreset::Heisenberg ? 1 : n - 2;
  for (int i = 1; i <= last; ++i) c[pair_index(n, 0, i) * n + (i + 1)] = 1.0;
  return BracketTensor(n, c);
}

DerivationReport derivation_report(const BracketTensor& mu, const Matrix& d) {
  const int n = mu.n();
  if (d.rows() != n || d.cols() != n) throw std::invalid_argument("derivation_report: D has wrong size");
  DerivationReport out;
  out.d = d;

  const Matrix id = Matrix::Identity(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Vector r = d * mu(id.col(i), id.col(j)) - mu(d.col(i), id.col(j)) - mu(id.col(i), d.col(j));
      out.derivation_residual = std::max(out.derivation_residual, r.norm());
    }

  Eigen::EigenSolver<Matrix> es(d, false);
  out.eigenvalues = es.eigenvalues();
  out.all_positive = n > 0;
  for (Eigen::Index k = 0; k < out.eigenvalues.size(); ++k) {
    const auto ev = out.eigenvalues[k];
    if (std::abs(ev.imag()) > 1e-10 || ev.real() <= 1e-12) out.all_positive = false;
  }

  // Lower central series V_1 = R^n, V_{i+1} = mu(R^n, V_i).
  std::vector<Matrix> spans{id};
  for (;;) {
    const Matrix& cur = spans.back();
    Matrix gens(n, n * cur.cols());
    for (int a = 0; a < n; ++a)
      for (Eigen::Index c = 0; c < cur.cols(); ++c) gens.col(a * cur.cols() + c) = mu(id.col(a), cur.col(c));
    Matrix next = orthonormal_span(gens);
    if (next.cols() == 0 || next.cols() == cur.cols()) break;
    spans.push_back(next);
  }

  const double dscale = std::max(1.0, d.norm());
  out.preserves_filtration = true;
  for (const auto& q : spans) {
    out.filtration_dims.push_back(static_cast<int>(q.cols()));
    const Matrix leak = (id - q * q.transpose()) * d * q;
    if (leak.norm() > 1e-10 * dscale) out.preserves_filtration = false;
  }
  for (std::size_t i = 0; i < spans.size(); ++i) {
    Matrix w = spans[i];
    if (i + 1 < spans.size()) {
      const Matrix& nxt = spans[i + 1];
      w = orthonormal_span((id - nxt * nxt.transpose()) * spans[i]);
    }
    const Matrix pw = w * w.transpose();
    out.transpose_invariance_residuals.push_back(((id - pw) * d.transpose() * pw).norm());
  }
  return out;
}

CriticalBracketCheck critical_bracket_check(const CartanContext& ctx, const BracketTensor& mu) {
  if (!(mu.coords().norm() > 0.0)) throw std::invalid_argument("critical_bracket_check: zero bracket");
  const RepSpec spec = mu.spec();
  const MomentValue m = moment(ctx, spec, mu.coords());
  const double residual = criticality_residual(spec, mu.coords(), m);
  if (residual > 1e-9)
    throw std::invalid_argument("critical_bracket_check: bracket is not a critical direction (residual " +
                                std::to_string(residual) + "); run the gradient flow first");

  CriticalBracketCheck out;
  out.beta = m;
  const int n = mu.n();
  out.beta_plus = m.matrix + m.energy * Matrix::Identity(n, n);
  const auto report = derivation_report(mu, out.beta_plus);
  out.derivation_residual = report.derivation_residual;
  out.is_derivation = report.derivation_residual <= 1e-10;
  Eigen::SelfAdjointEigenSolver<Matrix> es(out.beta_plus, Eigen::EigenvaluesOnly);
  out.positive = es.eigenvalues().minCoeff() > 1e-12;
  out.trace_beta = m.matrix.trace();
  out.orthogonality = CartanContext::inner(out.beta_plus, m.matrix);
  if (std::abs(out.trace_beta + 1.0) <= 1e-12) out.orthogonality_ok = std::abs(out.orthogonality) <= 1e-12;
  return out;
}

}  // namespace momentflow
