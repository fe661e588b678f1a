#include "momentflow/flows.hpp"

#include "momentflow/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace momentflow {

namespace {

constexpr double kEquivalenceTol = 1e-6;

Rk4Doubling::Options integrator_options(const FlowParams& p) {
  Rk4Doubling::Options o;
  o.dt0 = p.dt0;
  o.dt_max = std::max(p.dt_max, p.dt0);
  o.local_tol = p.local_tol;
  return o;
}

Vector flatten(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

Matrix unflatten(const Vector& v, Eigen::Index offset, int n) {
  return Eigen::Map<const Matrix>(v.data() + offset, n, n);
}

/// Integrates y over [0, horizon], calling `record(t, y)` at every multiple of
/// `stride` and at the horizon.
template <class Record>
void integrate_sampled(const Rk4Doubling::Rhs& rhs, Vector y, const FlowParams& params, double horizon, Record record) {
  Rk4Doubling rk(rhs, integrator_options(params));
  double t = 0.0;
  record(t, y);
  long k = 1;
  long steps = 0;
  while (t < horizon) {
    const double next = std::min(static_cast<double>(k) * params.sample_stride, horizon);
    while (t < next) {
      if (++steps > params.max_steps) throw std::runtime_error("flow integration exceeded max_steps");
      rk.advance(t, y, next - t);
      if (next - t <= 1e-12 * std::max(1.0, next)) t = next;
    }
    record(t, y);
    ++k;
  }
}

}  // namespace

void FlowParams::validate() const {
  if (!(dt0 > 0 && t_max > 0 && residual_tol > 0 && max_steps > 0 && sample_stride > 0 && local_tol > 0 &&
        dt_max > 0))
    throw std::invalid_argument("FlowParams: all parameters must be positive");
  if (!(residual_tol < 1)) throw std::invalid_argument("FlowParams: residual_tol must be < 1");
}

FlowResult gradient_flow(const CartanContext& ctx, const RepSpec& spec, const Vector& v0, const FlowParams& params) {
  params.validate();
  if (!(v0.norm() > 0.0)) throw std::invalid_argument("gradient_flow: zero initial vector");

  auto rhs = [&](double, const Vector& y) -> Vector {
    return -apply_lie(spec, moment(ctx, spec, y).matrix, y);
  };
  Rk4Doubling rk(rhs, integrator_options(params));

  FlowResult out;
  Vector y = params.renormalize ? Vector(v0 / v0.norm()) : v0;
  double t = 0.0;
  MomentValue m = moment(ctx, spec, y);
  double r = criticality_residual(spec, y, m);

  auto record_traces = [&] {
    out.energy_trace.emplace_back(t, m.energy);
    out.residual_trace.emplace_back(t, r);
  };
  auto record_sample = [&] { out.samples.push_back({t, y, m.energy, r}); };

  record_traces();
  record_sample();
  out.converged = r <= params.residual_tol;

  long k = 1;
  bool sampled = true;
  while ((!out.converged || !params.stop_at_critical) && t < params.t_max && out.steps < params.max_steps) {
    const double next = std::min(static_cast<double>(k) * params.sample_stride, params.t_max);
    try {
      rk.advance(t, y, next - t);
    } catch (const Rk4Doubling::StepUnderflow& e) {
      out.diagnostic = e.what();
      break;
    }
    ++out.steps;
    if (next - t <= 1e-12 * std::max(1.0, next)) t = next;
    if (params.renormalize) y /= y.norm();

    const double prev_energy = m.energy;
    m = moment(ctx, spec, y);
    r = criticality_residual(spec, y, m);
    out.max_energy_increase = std::max(out.max_energy_increase, m.energy - prev_energy);
    record_traces();

    sampled = false;
    if (t >= next) {
      record_sample();
      sampled = true;
      ++k;
    }
    out.converged = r <= params.residual_tol;
  }
  if (!sampled) record_sample();

  if (!out.converged && out.diagnostic.empty()) {
    out.diagnostic = out.steps >= params.max_steps ? "max_steps reached" : "t_max reached";
    out.diagnostic += " with residual " + std::to_string(r);
  }
  out.limit = y / y.norm();
  out.limit_moment = m;
  out.final_residual = r;
  return out;
}

GroupFlowResult coupled_group_flow(const CartanContext& ctx, const RepSpec& spec, const Vector& vbar, const Matrix& h0,
                                   const FlowParams& params) {
  params.validate();
  const int n = ctx.n();
  if (!(vbar.norm() > 0.0)) throw std::invalid_argument("coupled_group_flow: zero vector");
  if (h0.rows() != n || h0.cols() != n) throw std::invalid_argument("coupled_group_flow: h0 has wrong size");

  const Vector v0 = apply_group(spec, h0, vbar);
  const auto dim = v0.size();
  Vector y(dim + n * n);
  y << v0, flatten(h0);

  auto rhs = [&](double, const Vector& s) -> Vector {
    const Vector v = s.head(dim);
    const Matrix h = unflatten(s, dim, n);
    const Matrix m = moment(ctx, spec, v).matrix;
    Vector ds(s.size());
    ds << -apply_lie(spec, m, v), flatten(-m * h);
    return ds;
  };

  GroupFlowResult out;
  try {
    integrate_sampled(rhs, y, params, params.t_max, [&](double t, const Vector& s) {
      out.times.push_back(t);
      out.v_samples.push_back(s.head(dim));
      out.h_samples.push_back(unflatten(s, dim, n));
    });
  } catch (const Rk4Doubling::StepUnderflow& e) {
    throw std::runtime_error(std::string("coupled_group_flow: ") + e.what());
  }
  return out;
}

std::vector<MetricSample> metric_flow(const CartanContext& ctx, const RepSpec& spec, const Vector& vbar,
                                      const SpdMetric& s0, const FlowParams& params) {
  params.validate();
  const int n = ctx.n();
  if (!(vbar.norm() > 0.0)) throw std::invalid_argument("metric_flow: zero vector");
  if (s0.s.rows() != n || s0.s.cols() != n) throw std::invalid_argument("metric_flow: S0 has wrong size");
  spd_sqrt(s0.s);  // validates S0

  auto rhs = [&](double t, const Vector& y) -> Vector {
    Matrix s = unflatten(y, 0, n);
    s = 0.5 * (s + s.transpose());
    Matrix h;
    try {
      h = spd_sqrt(s);
    } catch (const std::invalid_argument&) {
      throw std::runtime_error("metric_flow: metric lost positive definiteness at t = " + std::to_string(t));
    }
    const Matrix hinv = h.inverse();
    const Matrix m = moment(ctx, spec, apply_group(spec, h, vbar)).matrix;
    const Matrix big_m = hinv * m * h;
    return flatten(-(big_m.transpose() * s + s * big_m));
  };

  std::vector<MetricSample> out;
  try {
    integrate_sampled(rhs, flatten(s0.s), params, params.t_max, [&](double t, const Vector& y) {
      Matrix s = unflatten(y, 0, n);
      s = 0.5 * (s + s.transpose());
      Eigen::SelfAdjointEigenSolver<Matrix> es(s, Eigen::EigenvaluesOnly);
      if (es.eigenvalues().minCoeff() <= 0.0)
        throw std::runtime_error("metric_flow: metric lost positive definiteness at t = " + std::to_string(t));
      out.push_back({t, SpdMetric{s}});
    });
  } catch (const Rk4Doubling::StepUnderflow& e) {
    throw std::runtime_error(std::string("metric_flow: ") + e.what());
  }
  return out;
}

FlowEquivalenceReport verify_flow_equivalence(const CartanContext& ctx, const RepSpec& spec, const Vector& vbar,
                                              const Matrix& h0, double horizon, const FlowParams& params) {
  if (!(horizon > 0.0)) throw std::invalid_argument("verify_flow_equivalence: horizon must be positive");
  FlowParams p = params;
  p.t_max = horizon;
  p.renormalize = false;

  const GroupFlowResult group = coupled_group_flow(ctx, spec, vbar, h0, p);
  const auto metric = metric_flow(ctx, spec, vbar, SpdMetric{h0.transpose() * h0}, p);
  if (metric.size() != group.times.size()) throw std::logic_error("verify_flow_equivalence: sample grids differ");

  FlowEquivalenceReport out;
  for (std::size_t i = 0; i < group.times.size(); ++i) {
    const Vector& v = group.v_samples[i];
    const Matrix& h = group.h_samples[i];
    out.max_dev_v = std::max(out.max_dev_v, (v - apply_group(spec, h, vbar)).norm() / v.norm());
    const Matrix& s = metric[i].metric.s;
    out.max_dev_s = std::max(out.max_dev_s, (s - h.transpose() * h).norm() / s.norm());
  }
  out.passed = out.max_dev_v <= kEquivalenceTol && out.max_dev_s <= kEquivalenceTol;
  return out;
}

}  // namespace momentflow
