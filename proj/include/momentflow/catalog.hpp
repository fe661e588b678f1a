#pragma once

#include "momentflow/hesselink.hpp"

#include <string>
#include <vector>

namespace momentflow {

/// Integer partition n_1 >= n_2 >= ... >= n_s >= 1 (Jordan block sizes).
class Partition {
 public:
  /// Sorts the parts; throws on empty input or non-positive parts.
  explicit Partition(std::vector<int> parts);

  /// Parses "3,2,1".
  static Partition parse(const std::string& text);

  const std::vector<int>& parts() const { return parts_; }
  int n() const;
  bool all_ones() const;
  std::string str() const;

  bool operator==(const Partition&) const = default;

 private:
  std::vector<int> parts_;
};

/// All partitions of n, in reverse lexicographic order.
std::vector<Partition> partitions_of(int n);

/// Dominance order: a dominates b iff every partial sum of a is >= that of b.
bool dominates(const Partition& a, const Partition& b);

/// x_J = sum_{i in J} E_{i,i+1}, J = {1..n} minus the partial sums of the parts,
/// as Adjoint coordinates.
Vector jordan_vector(const Partition& p);

/// Concatenated blocks ((n_j - 1)/2, (n_j - 3)/2, ..., (1 - n_j)/2).
RationalVector jordan_block_diagonal(const Partition& p);

struct JordanLabel {
  HesselinkLabel label;         // optimal class of x_J
  RationalVector beta_paper;    // label.eta_normalized
  Rational q_paper;             // <beta_paper, beta_paper>
  Rational q_formula;           // sum_j (n_j - 1) n_j (n_j + 1) / 12
  bool display_ok = false;      // beta_paper == sorted jordan_block_diagonal
  bool formula_ok = false;      // q_paper == q_formula
  bool identity_ok = false;     // q(eta) * q_paper == 1
  bool bound_ok = false;        // (n_j - 1)/2 <= (n_j - 1) n_j (n_j + 1)/12 <= q_paper for every block
  bool negdef_ok = false;       // every eigenvalue of ad(beta_paper) - q_paper id on gl_n is <= 0
  Rational max_negdef_eigenvalue;
};

JordanLabel jordan_label(const Partition& p);

/// Structure constants of an alternating bilinear map mu: R^n x R^n -> R^n,
/// stored in Brackets coordinates.
class BracketTensor {
 public:
  BracketTensor(int n, Vector coords);

  int n() const { return n_; }
  const Vector& coords() const { return coords_; }
  RepSpec spec() const { return RepSpec::make(Family::Brackets, n_); }

  /// c^l_ij with 0-based indices, any i, j.
  double constant(int l, int i, int j) const;
  Vector operator()(const Vector& x, const Vector& y) const;

  /// max over basis triples of |mu(mu(a,b),c) + mu(mu(b,c),a) + mu(mu(c,a),b)|.
  double jacobi_residual() const;
  bool jacobi_ok() const { return jacobi_residual() <= 1e-12; }

 private:
  int n_;
  Vector coords_;
};

enum class BracketPreset { Heisenberg, Chain };
BracketPreset parse_bracket_preset(const std::string& s);

/// heisenberg (n = 3): mu(e1, e2) = e3. chain (n >= 3): mu(e1, e_i) = e_{i+1}, 2 <= i < n.
BracketTensor bracket_preset(BracketPreset preset, int n);

struct DerivationReport {
  Matrix d;
  double derivation_residual = 0.0;
  Eigen::VectorXcd eigenvalues;
  bool all_positive = false;
  std::vector<int> filtration_dims;      // dim V_i, V_1 = R^n, V_{i+1} = mu(R^n, V_i)
  bool preserves_filtration = false;     // D V_i subset V_i for all i
  std::vector<double> transpose_invariance_residuals;  // |(I - P_{W_i}) D^T P_{W_i}| per W_i
};

DerivationReport derivation_report(const BracketTensor& mu, const Matrix& d);

struct CriticalBracketCheck {
  MomentValue beta;
  Matrix beta_plus;
  double derivation_residual = 0.0;
  bool is_derivation = false;
  bool positive = false;
  double trace_beta = 0.0;
  double orthogonality = 0.0;  // <beta_plus, beta>_p
  bool orthogonality_ok = true;  // checked only when tr(beta) = -1
};

/// Requires criticality_residual(mu) <= 1e-9; flow to a critical direction first.
CriticalBracketCheck critical_bracket_check(const CartanContext& ctx, const BracketTensor& mu);

}  // namespace momentflow
