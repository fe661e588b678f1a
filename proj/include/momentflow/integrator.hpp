#pragma once

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>

namespace momentflow {

/// Classical RK4 with step-doubling error control.
///
/// A step of size dt is compared with two steps of size dt/2; it is accepted when
/// the difference is <= local_tol * max(1, |y|), otherwise dt is halved. After
/// ten consecutive accepts the step grows by 1.5x, capped at dt_max.
class Rk4Doubling {
 public:
  using State = Eigen::VectorXd;
  using Rhs = std::function<State(double, const State&)>;

  struct Options {
    double dt0 = 1e-2;
    double dt_max = 1.0;
    double dt_min = 1e-14;
    double local_tol = 1e-10;
  };

  Rk4Doubling(Rhs rhs, Options opts) : rhs_(std::move(rhs)), opts_(opts), dt_(opts.dt0) {
    if (!(opts.dt0 > 0.0)) throw std::invalid_argument("Rk4Doubling: dt0 must be positive");
  }

  /// Advances (t, y) by one accepted step no longer than `limit`.
  /// Throws StepUnderflow when dt drops below dt_min.
  double advance(double& t, State& y, double limit);

  double dt() const { return dt_; }

  struct StepUnderflow : std::runtime_error {
    using std::runtime_error::runtime_error;
  };

 private:
  State rk4(double t, const State& y, double h) const;

  Rhs rhs_;
  Options opts_;
  double dt_;
  int accepts_ = 0;
};

}  // namespace momentflow
