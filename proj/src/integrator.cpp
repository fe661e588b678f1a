#include "momentflow/integrator.hpp"

#include <algorithm>
#include <cmath>

namespace momentflow {

Rk4Doubling::State Rk4Doubling::rk4(double t, const State& y, double h) const {
  const State k1 = rhs_(t, y);
  const State k2 = rhs_(t + 0.5 * h, y + 0.5 * h * k1);
  const State k3 = rhs_(t + 0.5 * h, y + 0.5 * h * k2);
  const State k4 = rhs_(t + h, y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

double Rk4Doubling::advance(double& t, State& y, double limit) {
  for (;;) {
    if (!(dt_ >= opts_.dt_min)) throw StepUnderflow("step size underflow at t = " + std::to_string(t));
    const double h = std::min(dt_, limit);
    const State full = rk4(t, y, h);
    const State half = rk4(t + 0.5 * h, rk4(t, y, 0.5 * h), 0.5 * h);
    const double err = (half - full).norm();
    const double scale = std::max(1.0, y.norm());
    if (std::isfinite(err) && err <= opts_.local_tol * scale) {
      y = half;
      t += h;
      if (h == dt_ && ++accepts_ >= 10) {
        dt_ = std::min(1.5 * dt_, opts_.dt_max);
        accepts_ = 0;
      }
      return h;
    }
    dt_ = 0.5 * h;
    accepts_ = 0;
  }
}

}  // namespace momentflow
