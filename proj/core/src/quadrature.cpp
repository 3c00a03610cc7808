#include "cpdirac/quadrature.hpp"

#include <cmath>
#include <string>

namespace cpdirac {
namespace {

constexpr int kMaxDepth = 48;

double simpson(double fa, double fm, double fb, double a, double b) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double recurse(const std::function<double(double)>& f, double a, double b,
               double fa, double fm, double fb, double whole, double tol,
               int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(fa, flm, fm, a, m);
  const double right = simpson(fm, frm, fb, m, b);
  const double delta = left + right - whole;
  if (!std::isfinite(delta)) {
    throw QuadratureError("adaptive Simpson: non-finite integrand on [" +
                          std::to_string(a) + ", " + std::to_string(b) + "]");
  }
  if (std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  if (depth <= 0) {
    throw QuadratureError("adaptive Simpson: no convergence on [" +
                          std::to_string(a) + ", " + std::to_string(b) +
                          "] (depth limit reached, residual " +
                          std::to_string(std::abs(delta)) + ")");
  }
  return recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, double rel_tol) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = simpson(fa, fm, fb, a, b);
  const double tol = std::max(abs_tol, rel_tol * std::abs(whole));
  return recurse(f, a, b, fa, fm, fb, whole, tol, kMaxDepth);
}

}  // namespace cpdirac
