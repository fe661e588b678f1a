#include "momentflow/hesselink.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace momentflow {

namespace {

/// Barycentric coefficients of the point of aff(points) nearest to the origin:
/// [G 1; 1^T 0] [alpha; mu] = [0; 1] with G the Gram matrix.
std::optional<RationalVector> affine_minimizer(const std::vector<RationalVector>& points) {
  const std::size_t k = points.size();
  RationalMatrix a(k + 1, RationalVector(k + 1, Rational(0)));
  RationalVector b(k + 1, Rational(0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) a[i][j] = a[j][i] = dot(points[i], points[j]);
    a[i][k] = 1;
    a[k][i] = 1;
  }
  b[k] = 1;
  auto sol = solve_exact(a, b);
  if (!sol) return std::nullopt;
  sol->pop_back();
  return sol;
}

RationalVector combine(const std::vector<RationalVector>& points, const std::vector<Rational>& coeffs) {
  RationalVector x(points.front().size(), Rational(0));
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t d = 0; d < x.size(); ++d) x[d] += coeffs[i] * points[i][d];
  return x;
}

std::vector<RationalVector> to_rational_weights(const std::vector<WeightVector>& ws) {
  std::vector<RationalVector> out;
  out.reserve(ws.size());
  for (const auto& w : ws) out.push_back(to_rational(w));
  return out;
}

}  // namespace

bool MinNormCertificate::verify(const std::vector<RationalVector>& weights) const {
  if (support.empty() || support.size() != coefficients.size()) return false;
  Rational total = 0;
  for (const auto& c : coefficients) {
    if (c <= 0) return false;
    total += c;
  }
  if (total != 1) return false;
  if (combine(support, coefficients) != eta) return false;
  if (q != dot(eta, eta)) return false;
  for (const auto& s : support) {
    if (std::find(weights.begin(), weights.end(), s) == weights.end()) return false;
    if (dot(s, eta) != q) return false;
  }
  Rational margin = dot(weights.front(), eta) - q;
  for (const auto& w : weights) margin = std::min(margin, Rational(dot(w, eta) - q));
  return margin == optimality_margin && margin >= 0;
}

MinNormCertificate min_norm_point(const std::vector<RationalVector>& weights) {
  if (weights.empty()) throw std::invalid_argument("min_norm_point: empty weight set");
  const std::size_t dim = weights.front().size();
  for (const auto& w : weights)
    if (w.size() != dim) throw std::invalid_argument("min_norm_point: weights have inconsistent lengths");

  // Sorted distinct points; "first in order" is the lexicographic tie-break.
  std::vector<RationalVector> pts(weights.begin(), weights.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  std::size_t start = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (dot(pts[i], pts[i]) < dot(pts[start], pts[start])) start = i;

  std::vector<RationalVector> corral{pts[start]};
  std::vector<Rational> lambda{Rational(1)};
  RationalVector x = pts[start];

  for (;;) {
    const Rational xx = dot(x, x);
    std::size_t best = 0;
    Rational best_val = dot(x, pts[0]);
    for (std::size_t i = 1; i < pts.size(); ++i) {
      Rational val = dot(x, pts[i]);
      if (val < best_val) {
        best_val = val;
        best = i;
      }
    }
    if (best_val >= xx) break;
    if (std::find(corral.begin(), corral.end(), pts[best]) != corral.end())
      throw std::logic_error("min_norm_point: entering weight already in corral");
    corral.push_back(pts[best]);
    lambda.emplace_back(0);

    for (;;) {
      auto alpha = affine_minimizer(corral);
      if (!alpha) throw std::logic_error("min_norm_point: corral became affinely dependent");
      if (std::all_of(alpha->begin(), alpha->end(), [](const Rational& a) { return a > 0; })) {
        lambda = std::move(*alpha);
        x = combine(corral, lambda);
        break;
      }
      std::optional<Rational> theta;
      for (std::size_t i = 0; i < corral.size(); ++i) {
        if ((*alpha)[i] > 0) continue;
        Rational t = lambda[i] / (lambda[i] - (*alpha)[i]);
        if (!theta || t < *theta) theta = t;
      }
      for (std::size_t i = 0; i < corral.size(); ++i) lambda[i] = *theta * (*alpha)[i] + (1 - *theta) * lambda[i];
      std::vector<RationalVector> kept;
      std::vector<Rational> kept_lambda;
      for (std::size_t i = 0; i < corral.size(); ++i) {
        if (lambda[i] > 0) {
          kept.push_back(corral[i]);
          kept_lambda.push_back(lambda[i]);
        }
      }
      corral = std::move(kept);
      lambda = std::move(kept_lambda);
      x = combine(corral, lambda);
    }
  }

  MinNormCertificate cert;
  cert.eta = x;
  cert.q = dot(x, x);
  cert.support = corral;
  cert.coefficients = lambda;
  Rational margin = dot(pts.front(), x) - cert.q;
  for (const auto& p : pts) margin = std::min(margin, Rational(dot(p, x) - cert.q));
  cert.optimality_margin = margin;
  return cert;
}

Matrix HesselinkLabel::beta() const {
  const auto d = to_double(eta);
  Matrix b = Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d[i];
  return b;
}

HesselinkLabel HesselinkLabel::from_eta(const RationalVector& eta_coordinates) {
  HesselinkLabel l;
  l.eta_coordinates = eta_coordinates;
  l.eta = weyl_normalize(eta_coordinates);
  l.q = dot(l.eta, l.eta);
  if (l.q == 0) throw std::invalid_argument("HesselinkLabel: zero eta has no label");
  l.eta_normalized = scaled(l.eta, 1 / l.q);
  return l;
}

std::vector<WeightVector> state_of(const RepSpec& spec, const Vector& v, double zero_tol) {
  std::vector<WeightVector> out;
  for (const auto& [w, comp] : weight_components(spec, v, zero_tol)) out.push_back(w);
  return out;
}

InstabilityMeasure instability_measure(const std::vector<WeightVector>& state, const RationalVector& eta) {
  if (state.empty()) throw std::invalid_argument("instability_measure: empty state");
  Rational m = dot(to_rational(state.front()), eta);
  for (const auto& chi : state) m = std::min(m, dot(to_rational(chi), eta));
  if (m < 0) return InstabilityMeasure::neg_inf();
  return {false, m};
}

std::optional<HesselinkLabel> optimal_class(const RepSpec& spec, const Vector& v, GroupKind group, double zero_tol) {
  auto weights = to_rational_weights(state_of(spec, v, zero_tol));
  if (group == GroupKind::SL)
    for (auto& w : weights) w = project_to_sl(w);
  const auto cert = min_norm_point(weights);
  if (is_zero(cert.eta)) return std::nullopt;
  return HesselinkLabel::from_eta(cert.eta);
}

LabelEnumeration enumerate_labels(const RepSpec& spec, int max_weight_count) {
  std::set<WeightVector> distinct;
  for (const auto& w : weights_of(spec)) distinct.insert(w);
  if (static_cast<int>(distinct.size()) > max_weight_count)
    throw std::invalid_argument("enumerate_labels: " + std::to_string(distinct.size()) +
                                " distinct weights exceed the cap of " + std::to_string(max_weight_count));
  if (distinct.size() >= 63) throw std::invalid_argument("enumerate_labels: weight set too large");

  const auto ws = to_rational_weights(std::vector<WeightVector>(distinct.begin(), distinct.end()));
  const std::uint64_t subsets = std::uint64_t{1} << ws.size();

  LabelEnumeration out;
  std::set<RationalVector> seen;
  for (std::uint64_t mask = 1; mask < subsets; ++mask) {
    std::vector<RationalVector> subset;
    for (std::size_t i = 0; i < ws.size(); ++i)
      if (mask & (std::uint64_t{1} << i)) subset.push_back(ws[i]);
    const auto cert = min_norm_point(subset);
    if (is_zero(cert.eta)) {
      out.includes_zero = true;
      continue;
    }
    auto label = HesselinkLabel::from_eta(cert.eta);
    if (seen.insert(label.eta).second) {
      label.eta_coordinates = label.eta;
      out.labels.push_back(std::move(label));
    }
  }
  std::sort(out.labels.begin(), out.labels.end(), [](const HesselinkLabel& a, const HesselinkLabel& b) {
    if (a.q != b.q) return a.q > b.q;
    return a.eta < b.eta;
  });
  return out;
}

StratumReport stratum_membership(const RepSpec& spec, const Vector& v, const HesselinkLabel& label, double zero_tol) {
  if (label.q <= 0) throw std::invalid_argument("stratum_membership: label must be nonzero");
  const RationalVector& eta = label.eta_coordinates.empty() ? label.eta : label.eta_coordinates;
  if (static_cast<int>(eta.size()) != spec.n) throw std::invalid_argument("stratum_membership: label has wrong length");
  const Rational q = dot(eta, eta);

  StratumReport out;
  out.q = q;
  out.beta = Matrix::Zero(spec.n, spec.n);
  for (int i = 0; i < spec.n; ++i) out.beta(i, i) = to_double(eta[static_cast<std::size_t>(i)]);

  const auto state = state_of(spec, v, zero_tol);
  out.in_V_ge0 = true;
  std::vector<WeightVector> zero_graded;
  for (const auto& chi : state) {
    Rational r = dot(to_rational(chi), eta) - q;
    if (r < 0) out.in_V_ge0 = false;
    if (r == 0) zero_graded.push_back(chi);
    out.grading.emplace(chi, r);
  }

  const auto ws = weights_of(spec);
  out.v0 = Vector::Zero(v.size());
  for (std::size_t k = 0; k < ws.size(); ++k) {
    auto it = out.grading.find(ws[k]);
    if (it != out.grading.end() && it->second == 0) out.v0[static_cast<Eigen::Index>(k)] = v[static_cast<Eigen::Index>(k)];
  }

  if (out.in_V_ge0 && !zero_graded.empty()) {
    // On the r = 0 part, <chi, eta> = q, so the projection onto eta^perp is chi - eta.
    std::vector<RationalVector> projected;
    for (const auto& chi : zero_graded) projected.push_back(subtract(to_rational(chi), eta));
    out.in_U_ge0 = is_zero(min_norm_point(projected).eta);
  }

  if (auto own = optimal_class(spec, v, GroupKind::GL, zero_tol)) out.matches_optimal_class = own->eta_coordinates == eta;
  return out;
}

KnLabelReport kn_label_via_flow(const CartanContext& ctx, const RepSpec& spec, const Vector& v,
                                const FlowParams& params, double match_tol) {
  auto label = optimal_class(spec, v, ctx.group());
  if (!label) throw std::invalid_argument("kn_label_via_flow: vector is semistable for the torus");
  const FlowResult flow = gradient_flow(ctx, spec, v, params);

  KnLabelReport out;
  out.hesselink = *label;
  out.spectrum = flow.limit_moment.spectrum;
  out.converged = flow.converged;
  out.diagnostic = flow.diagnostic;
  const auto expected = to_double(label->eta);
  for (std::size_t i = 0; i < expected.size(); ++i)
    out.max_deviation = std::max(out.max_deviation, std::abs(out.spectrum[static_cast<Eigen::Index>(i)] - expected[i]));
  out.match = out.converged && out.max_deviation <= match_tol;
  return out;
}

RationalVector project_to_sl(const RationalVector& eta) {
  if (eta.empty()) return {};
  Rational mean = 0;
  for (const auto& x : eta) mean += x;
  mean /= static_cast<long>(eta.size());
  RationalVector out(eta.size());
  for (std::size_t i = 0; i < eta.size(); ++i) out[i] = eta[i] - mean;
  return out;
}

std::vector<std::vector<std::int64_t>> cochar_gram_check(const std::vector<std::vector<std::int64_t>>& lams) {
  std::vector<std::vector<std::int64_t>> g(lams.size(), std::vector<std::int64_t>(lams.size(), 0));
  for (std::size_t i = 0; i < lams.size(); ++i)
    for (std::size_t j = 0; j < lams.size(); ++j) {
      if (lams[i].size() != lams[j].size()) throw std::invalid_argument("cochar_gram_check: length mismatch");
      std::int64_t s = 0;
      for (std::size_t k = 0; k < lams[i].size(); ++k) s += lams[i][k] * lams[j][k];
      g[i][j] = s;
    }
  return g;
}

}  // namespace momentflow
