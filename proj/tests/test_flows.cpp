#include "momentflow/flows.hpp"
#include "momentflow/integrator.hpp"
#include "momentflow/moment.hpp"
#include "momentflow/random.hpp"

#include <doctest.h>

#include <cmath>

using namespace momentflow;

TEST_CASE("integrator reproduces exponential decay") {
  Rk4Doubling rk([](double, const Rk4Doubling::State& y) { return Rk4Doubling::State(-y); }, {});
  Rk4Doubling::State y(1);
  y[0] = 1;
  double t = 0;
  while (t < 3.0) rk.advance(t, y, 3.0 - t);
  CHECK(std::abs(t - 3.0) < 1e-12);
  CHECK(std::abs(y[0] - std::exp(-3.0)) < 1e-9);
}

TEST_CASE("integrator respects the step limit and grows its step") {
  Rk4Doubling::Options o;
  o.dt0 = 1e-3;
  Rk4Doubling rk([](double, const Rk4Doubling::State& y) { return Rk4Doubling::State(0 * y); }, o);
  Rk4Doubling::State y = Rk4Doubling::State::Ones(2);
  double t = 0;
  CHECK(rk.advance(t, y, 1e-4) == doctest::Approx(1e-4));
  for (int i = 0; i < 200; ++i) rk.advance(t, y, 10.0);
  CHECK(rk.dt() == 1.0);
}

TEST_CASE("integrator signals underflow on a blow-up") {
  Rk4Doubling::Options o;
  o.dt_min = 1e-6;
  Rk4Doubling rk([](double, const Rk4Doubling::State& y) { return Rk4Doubling::State(y.array().square() * y.array().square()); }, o);
  Rk4Doubling::State y(1);
  y[0] = 1;
  double t = 0;
  CHECK_THROWS_AS(
      [&] {
        for (int i = 0; i < 100000; ++i) rk.advance(t, y, 1.0);
      }(),
      Rk4Doubling::StepUnderflow);
}

TEST_CASE("flow parameters are validated") {
  FlowParams p;
  CHECK_NOTHROW(p.validate());
  p.dt0 = 0;
  CHECK_THROWS(p.validate());
  p = FlowParams{};
  p.residual_tol = 2;
  CHECK_THROWS(p.validate());
}

TEST_CASE("gradient flow decreases energy and converges to a critical point") {
  Rng rng(20);
  const auto ctx = build_context(3, GroupKind::GL);
  for (Family f : {Family::Adjoint, Family::Lambda2, Family::Brackets, Family::Dual}) {
    const auto spec = RepSpec::make(f, 3);
    const Vector v0 = random_vector(rep_dim(spec), rng);
    FlowParams p;
    p.t_max = 200;
    const auto r = gradient_flow(ctx, spec, v0, p);
    CHECK(r.max_energy_increase <= 1e-10);
    for (std::size_t i = 1; i < r.energy_trace.size(); ++i)
      CHECK(r.energy_trace[i].second <= r.energy_trace[i - 1].second + 1e-10);
    CHECK(std::abs(r.limit.norm() - 1) < 1e-12);
    if (r.converged) {
      CHECK(r.final_residual <= p.residual_tol);
      CHECK(criticality_residual(ctx, spec, r.limit) <= 1.0001 * p.residual_tol);
    }
    for (std::size_t i = 1; i < r.samples.size(); ++i) CHECK(r.samples[i].t > r.samples[i - 1].t);
  }
}

TEST_CASE("Standard flow is stationary") {
  const auto ctx = build_context(3, GroupKind::GL);
  const auto spec = RepSpec::make(Family::Standard, 3);
  const auto r = gradient_flow(ctx, spec, Vector::Ones(3), FlowParams{});
  CHECK(r.converged);
  CHECK(r.steps == 0);
  CHECK(r.limit_moment.energy == doctest::Approx(1.0));
}

TEST_CASE("Standard flow stays at energy one when forced to run") {
  const auto ctx = build_context(3, GroupKind::GL);
  const auto spec = RepSpec::make(Family::Standard, 3);
  FlowParams p;
  p.t_max = 1;
  p.stop_at_critical = false;
  const auto r = gradient_flow(ctx, spec, Vector::Ones(3), p);
  CHECK(r.converged);
  CHECK(r.samples.size() == 11);
  for (const auto& s : r.samples) CHECK(std::abs(s.energy - 1) < 1e-12);
  CHECK(r.samples.back().t == 1.0);
}

TEST_CASE("raw flow from a nilpotent shrinks toward the regular nilpotent direction") {
  const auto ctx = build_context(3, GroupKind::GL);
  const auto spec = RepSpec::make(Family::Adjoint, 3);
  Vector x = Vector::Zero(9);
  x[1] = 1;  // E12
  x[5] = 2;  // 2 E23, not critical
  REQUIRE(criticality_residual(ctx, spec, x) > 1e-2);
  FlowParams p;
  p.renormalize = false;
  p.t_max = 1e3;
  const auto r = gradient_flow(ctx, spec, x, p);
  CHECK(r.converged);
  CHECK(r.samples.back().v.norm() < x.norm());
  CHECK(r.limit_moment.energy == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("flow rejects bad input") {
  const auto ctx = build_context(2, GroupKind::GL);
  const auto spec = RepSpec::make(Family::Standard, 2);
  CHECK_THROWS(gradient_flow(ctx, spec, Vector::Zero(2), FlowParams{}));
  FlowParams p;
  p.t_max = -1;
  CHECK_THROWS(gradient_flow(ctx, spec, Vector::Ones(2), p));
}

TEST_CASE("group flow transports the initial vector") {
  Rng rng(21);
  const auto ctx = build_context(3, GroupKind::GL);
  const auto spec = RepSpec::make(Family::Adjoint, 3);
  const Vector vbar = random_vector(9, rng);
  const Matrix h0 = random_well_conditioned(3, rng);
  FlowParams p;
  p.t_max = 2;
  p.renormalize = false;
  const auto g = coupled_group_flow(ctx, spec, vbar, h0, p);
  REQUIRE(g.times.size() == 21);
  CHECK(g.times.back() == 2.0);
  for (std::size_t i = 0; i < g.times.size(); ++i)
    CHECK((g.v_samples[i] - apply_group(spec, g.h_samples[i], vbar)).norm() < 1e-7);
}

TEST_CASE("metric flow stays symmetric positive definite") {
  Rng rng(22);
  const auto ctx = build_context(3, GroupKind::GL);
  const auto spec = RepSpec::make(Family::Lambda2, 3);
  FlowParams p;
  p.t_max = 3;
  const auto samples = metric_flow(ctx, spec, random_vector(3, rng), SpdMetric{random_spd(3, rng, 0.5, 2.0)}, p);
  CHECK(samples.size() == 31);
  for (const auto& s : samples) {
    CHECK(asymmetry(s.metric.s) == 0.0);
    Eigen::SelfAdjointEigenSolver<Matrix> es(s.metric.s);
    CHECK(es.eigenvalues().minCoeff() > 0);
  }
}

TEST_CASE("flow equivalence on assorted representations") {
  Rng rng(23);
  for (int n = 2; n <= 3; ++n) {
    const auto ctx = build_context(n, GroupKind::GL);
    for (Family f : {Family::Standard, Family::Dual, Family::Adjoint, Family::Lambda2}) {
      const auto spec = RepSpec::make(f, n);
      const Vector vbar = random_vector(rep_dim(spec), rng);
      const Matrix h0 = random_well_conditioned(n, rng);
      const auto rep = verify_flow_equivalence(ctx, spec, vbar, h0, 2.0, FlowParams{});
      CHECK(rep.passed);
      CHECK(rep.max_dev_v <= 1e-6);
      CHECK(rep.max_dev_s <= 1e-6);
    }
  }
  CHECK_THROWS(verify_flow_equivalence(build_context(2, GroupKind::GL), RepSpec::make(Family::Standard, 2),
                                       Vector::Ones(2), Matrix::Identity(2, 2), 0.0, FlowParams{}));
}

TEST_CASE("closed-form group and metric flows for Standard e1") {
  const auto ctx = build_context(3, GroupKind::GL);
  const auto spec = RepSpec::make(Family::Standard, 3);
  Vector e1 = Vector::Zero(3);
  e1[0] = 1;
  FlowParams p;
  p.t_max = 3;
  const auto g = coupled_group_flow(ctx, spec, e1, Matrix::Identity(3, 3), p);
  const auto s = metric_flow(ctx, spec, e1, SpdMetric{Matrix::Identity(3, 3)}, p);
  REQUIRE(g.times.size() == s.size());
  for (std::size_t i = 0; i < g.times.size(); ++i) {
    const double t = g.times[i];
    CHECK((g.v_samples[i] - std::exp(-t) * e1).norm() < 1e-8);
    Matrix h = Matrix::Identity(3, 3);
    h(0, 0) = std::exp(-t);
    CHECK((g.h_samples[i] - h).norm() < 1e-8);
    Matrix sm = Matrix::Identity(3, 3);
    sm(0, 0) = std::exp(-2 * t);
    CHECK((s[i].metric.s - sm).norm() < 1e-8);
  }
  const auto rep = verify_flow_equivalence(ctx, spec, e1, Matrix::Identity(3, 3), 5.0, FlowParams{});
  CHECK(rep.passed);
}

TEST_CASE("normal matrices do not move") {
  const auto ctx = build_context(2, GroupKind::GL);
  const auto spec = RepSpec::make(Family::Adjoint, 2);
  Vector x(4);
  x << 1, 0, 0, 2;
  FlowParams p;
  p.t_max = 2;
  const auto g = coupled_group_flow(ctx, spec, x, Matrix::Identity(2, 2), p);
  for (std::size_t i = 0; i < g.times.size(); ++i) {
    CHECK((g.v_samples[i] - x).norm() < 1e-14);
    CHECK((g.h_samples[i] - Matrix::Identity(2, 2)).norm() < 1e-14);
  }
  for (const auto& s : metric_flow(ctx, spec, x, SpdMetric{Matrix::Identity(2, 2)}, p))
    CHECK((s.metric.s - Matrix::Identity(2, 2)).norm() < 1e-14);
}

TEST_CASE("E12 is a fixed direction") {
  const auto ctx = build_context(2, GroupKind::GL);
  Vector e12 = Vector::Zero(4);
  e12[1] = 1;
  const auto r = gradient_flow(ctx, RepSpec::make(Family::Adjoint, 2), e12, FlowParams{});
  CHECK(r.converged);
  CHECK((r.limit - e12).norm() < 1e-15);
  CHECK(r.limit_moment.matrix(0, 0) == 1.0);
  CHECK(r.limit_moment.matrix(1, 1) == -1.0);
}
