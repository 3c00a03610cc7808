#pragma once

#include <array>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace cpdirac {

class StiffnessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using OdeState = std::array<double, 4>;
using OdeRhs = std::function<void(double x, const OdeState& y, OdeState& dydx)>;

struct OdeOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  // states larger than this are rescaled and the factor tracked in log_scale
  double renorm_threshold = 1e250;
};

struct SampledTrajectory {
  std::vector<OdeState> states;     // one per requested sample point
  std::vector<double> log_scale;    // true value = state * exp(log_scale)
};

/// Integrates y' = f(x, y) from x0 through the strictly monotone sample
/// points xs (all on the same side of x0), recording the state at each.
/// Adaptive embedded Runge-Kutta 4(5); throws StiffnessError on step-size
/// underflow with a hint to use the envelope-split route.
SampledTrajectory integrate_sampled(const OdeRhs& rhs, OdeState y0, double x0,
                                    std::span<const double> xs,
                                    const OdeOptions& opts = {});

}  // namespace cpdirac
