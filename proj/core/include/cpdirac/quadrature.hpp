#pragma once

#include <functional>
#include <stdexcept>

namespace cpdirac {

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive Simpson integration of a smooth integrand over [a, b].
/// Throws QuadratureError (with the offending subinterval) if the local
/// error estimate does not converge before the recursion depth limit.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol = 1e-10,
                        double rel_tol = 1e-10);

}  // namespace cpdirac
