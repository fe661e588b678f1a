#pragma once

#include "momentflow/flows.hpp"
#include "momentflow/rational.hpp"
#include "momentflow/reps.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace momentflow {

/// Exact minimizer of <eta, eta> over the convex hull of a finite weight set, with
/// a KKT certificate: eta is the min-norm point iff <chi, eta> >= q for all chi.
struct MinNormCertificate {
  RationalVector eta;
  Rational q;
  std::vector<RationalVector> support;  // weights with positive barycentric coefficient
  std::vector<Rational> coefficients;   // > 0, sum to 1
  Rational optimality_margin;           // min_chi <chi, eta> - q, >= 0

  /// Checks every certificate invariant exactly against the input weights.
  bool verify(const std::vector<RationalVector>& weights) const;
};

/// Wolfe's nearest-point algorithm carried out in exact rational arithmetic.
/// Ties between entering weights go to the lexicographically smallest weight.
MinNormCertificate min_norm_point(const std::vector<RationalVector>& weights);

/// Hesselink stratum label for the diagonal torus.
struct HesselinkLabel {
  RationalVector eta;             // Weyl-normalized (non-increasing)
  Rational q;                     // <eta, eta>
  RationalVector eta_normalized;  // eta / q, the optimal-class representative
  RationalVector eta_coordinates; // eta before Weyl normalization

  /// Lie(eta) = diag(eta) as a matrix in a.
  Matrix beta() const;

  static HesselinkLabel from_eta(const RationalVector& eta_coordinates);
};

/// Support of the weight decomposition, sorted lexicographically.
std::vector<WeightVector> state_of(const RepSpec& spec, const Vector& v, double zero_tol = 1e-12);

/// m(x, eta) = min over the state of <chi, eta>, or minus infinity when that
/// minimum is negative.
struct InstabilityMeasure {
  bool minus_infinity = false;
  Rational value;

  static InstabilityMeasure neg_inf() { return {true, Rational(0)}; }
  bool operator==(const InstabilityMeasure&) const = default;
};

InstabilityMeasure instability_measure(const std::vector<WeightVector>& state, const RationalVector& eta);

/// Optimal class of v under the diagonal torus of GL_n (or of SL_n, where the
/// state is first projected to the trace-zero hyperplane). nullopt means v is
/// semistable for the torus, i.e. 0 lies in the convex hull of its state.
std::optional<HesselinkLabel> optimal_class(const RepSpec& spec, const Vector& v, GroupKind group = GroupKind::GL,
                                            double zero_tol = 1e-12);

struct LabelEnumeration {
  std::vector<HesselinkLabel> labels;  // nonzero labels, Weyl-deduplicated
  bool includes_zero = false;
};

/// {min_norm_point(S) : S a non-empty subset of the distinct weights}, sorted by q
/// descending then lexicographically. Refuses weight sets larger than the cap.
LabelEnumeration enumerate_labels(const RepSpec& spec, int max_weight_count = 20);

struct StratumReport {
  Matrix beta;
  Rational q;
  std::map<WeightVector, Rational> grading;  // r(chi) = <chi, eta> - q over the state
  bool in_V_ge0 = false;
  Vector v0;  // coordinates with r = 0
  bool in_U_ge0 = false;
  bool matches_optimal_class = false;  // raw optimal class of v equals the label's eta
};

/// Membership of v in V^{>=0} and U^{>=0} for the label's eta (taken in coordinates
/// as given). The U^{>=0} test is the torus Hilbert-Mumford criterion for H_beta:
/// 0 must lie in the hull of the state of v0 projected onto eta^perp.
/// Non-abelian H_beta is not supported.
StratumReport stratum_membership(const RepSpec& spec, const Vector& v, const HesselinkLabel& label,
                                 double zero_tol = 1e-12);

struct KnLabelReport {
  Vector spectrum;  // non-increasing
  HesselinkLabel hesselink;
  bool match = false;
  double max_deviation = 0.0;
  bool converged = false;
  std::string diagnostic;
};

/// Compares the gradient-flow limit spectrum with Lie(eta) of the optimal class.
KnLabelReport kn_label_via_flow(const CartanContext& ctx, const RepSpec& spec, const Vector& v,
                                const FlowParams& params, double match_tol = 1e-5);

/// eta - (sum eta_i / n) (1, ..., 1).
RationalVector project_to_sl(const RationalVector& eta);

/// Gram matrix of integer cocharacters under the trace form.
std::vector<std::vector<std::int64_t>> cochar_gram_check(const std::vector<std::vector<std::int64_t>>& lams);

}  // namespace momentflow
