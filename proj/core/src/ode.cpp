#include "cpdirac/ode.hpp"

#include <boost/numeric/odeint.hpp>

#include <cmath>
#include <limits>
#include <string>

namespace cpdirac {

namespace odeint = boost::numeric::odeint;

SampledTrajectory integrate_sampled(const OdeRhs& rhs, OdeState y0, double x0,
                                    std::span<const double> xs,
                                    const OdeOptions& opts) {
  using Stepper = odeint::runge_kutta_dopri5<OdeState>;
  auto stepper = odeint::make_controlled<Stepper>(opts.abs_tol, opts.rel_tol);

  SampledTrajectory out;
  out.states.reserve(xs.size());
  out.log_scale.reserve(xs.size());

  const auto system = [&rhs](const OdeState& y, OdeState& dydx, double x) {
    rhs(x, y, dydx);
  };
  constexpr double kEps = std::numeric_limits<double>::epsilon();

  OdeState y = y0;
  double x = x0;
  double log_scale = 0.0;
  double dt = 0.0;

  for (double target : xs) {
    const double dir = target > x ? 1.0 : -1.0;
    if (dt == 0.0 || dt * dir < 0.0) {
      dt = dir * std::max(1e-300, std::min(1e-2, std::abs(target - x)));
    }
    while (dir * (target - x) > 0.0) {
      const double remaining = target - x;
      if (std::abs(remaining) <= 8.0 * kEps * std::max(1.0, std::abs(target))) {
        break;  // within rounding of the sample point
      }
      if ((x + dt - target) * dir > 0.0) dt = remaining;
      const double dt_attempt = dt;
      int rejects = 0;
      while (stepper.try_step(system, y, x, dt) == odeint::fail) {
        if (++rejects > 80 ||
            std::abs(dt) < 1e-14 * std::max(1.0, std::abs(x))) {
          throw StiffnessError(
              "adaptive step size underflow near x=" + std::to_string(x) +
              " (dt=" + std::to_string(dt_attempt) +
              "); the direct system is too stiff here, use the "
              "envelope-split (phi) route");
        }
      }
    }
    x = target;
    double mag = 0.0;
    for (double v : y) mag = std::max(mag, std::abs(v));
    if (mag > opts.renorm_threshold) {
      const double f = 1.0 / mag;
      for (double& v : y) v *= f;
      log_scale += std::log(mag);
    }
    out.states.push_back(y);
    out.log_scale.push_back(log_scale);
  }
  return out;
}

}  // namespace cpdirac
