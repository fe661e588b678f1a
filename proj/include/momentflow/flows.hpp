#pragma once

#include "momentflow/moment.hpp"

#include <string>
#include <utility>
#include <vector>

namespace momentflow {

struct FlowParams {
  double dt0 = 1e-2;
  double t_max = 1e3;
  double residual_tol = 1e-9;
  long max_steps = 1'000'000;
  double sample_stride = 0.1;  // time between recorded samples
  bool renormalize = true;
  double local_tol = 1e-10;
  double dt_max = 1.0;
  bool stop_at_critical = true;  // false: integrate to t_max regardless of the residual

  void validate() const;
};

struct FlowSample {
  double t = 0.0;
  Vector v;
  double energy = 0.0;
  double residual = 0.0;
};

struct FlowResult {
  std::vector<FlowSample> samples;
  std::vector<std::pair<double, double>> energy_trace;    // (t, F), every accepted step
  std::vector<std::pair<double, double>> residual_trace;  // (t, residual)
  bool converged = false;
  Vector limit;  // unit norm
  MomentValue limit_moment;
  double final_residual = 0.0;
  double max_energy_increase = 0.0;  // largest F(t_{k+1}) - F(t_k), should be <= 1e-10
  long steps = 0;
  std::string diagnostic;
};

/// Integrates v' = -pi(m(v)) v until the criticality residual drops below
/// params.residual_tol or the horizon/step budget is exhausted.
/// `converged` reports whether the final residual is within tolerance.
FlowResult gradient_flow(const CartanContext& ctx, const RepSpec& spec, const Vector& v0, const FlowParams& params);

struct GroupFlowResult {
  std::vector<double> times;
  std::vector<Vector> v_samples;
  std::vector<Matrix> h_samples;
};

/// Co-integrates the raw gradient flow from v0 = rho(h0) vbar with h' = -m(v(t)) h,
/// h(0) = h0, over [0, params.t_max].
GroupFlowResult coupled_group_flow(const CartanContext& ctx, const RepSpec& spec, const Vector& vbar, const Matrix& h0,
                                   const FlowParams& params);

struct SpdMetric {
  Matrix s;
};

struct MetricSample {
  double t = 0.0;
  SpdMetric metric;
};

/// Integrates S' = -(M^T S + S M), M = h^-1 m(rho(h) vbar) h with h = spd_sqrt(S),
/// over [0, params.t_max]. Throws std::runtime_error if S leaves the SPD cone.
std::vector<MetricSample> metric_flow(const CartanContext& ctx, const RepSpec& spec, const Vector& vbar,
                                      const SpdMetric& s0, const FlowParams& params);

struct FlowEquivalenceReport {
  double max_dev_v = 0.0;
  double max_dev_s = 0.0;
  bool passed = false;
};

FlowEquivalenceReport verify_flow_equivalence(const CartanContext& ctx, const RepSpec& spec, const Vector& vbar,
                                              const Matrix& h0, double horizon, const FlowParams& params);

}  // namespace momentflow
