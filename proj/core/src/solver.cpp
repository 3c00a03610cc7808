#include "cpdirac/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cpdirac {

namespace {

using Complex = std::complex<double>;

constexpr double kExpClamp = 709.0;  // log(DBL_MAX) minus headroom
constexpr double kSecondOrderOffset = 1e-12;

std::vector<double> sample_points(double half_width, int n_samples) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw std::invalid_argument("solver: window half-width must be positive");
  }
  int ns = std::max(5, n_samples);
  if (ns % 2 == 0) ++ns;
  std::vector<double> xs(ns);
  const int mid = (ns - 1) / 2;
  const double step = half_width / mid;
  for (int j = 0; j < mid; ++j) {
    xs[j] = static_cast<double>(j - mid) * step;
    xs[ns - 1 - j] = -xs[j];  // exact mirror symmetry
  }
  xs[mid] = 0.0;
  return xs;
}

void check_bc(const BoundaryConditionAtOrigin& bc) {
  if (bc.chi_plus_0 == Complex(0.0, 0.0) &&
      bc.chi_minus_0 == Complex(0.0, 0.0)) {
    throw std::invalid_argument(
        "boundary condition at the origin must not be identically zero");
  }
}

Complex rescaled(double re, double im, double log_scale, bool& clamped) {
  if (log_scale == 0.0) return {re, im};
  if (log_scale > kExpClamp) {
    clamped = true;
    log_scale = kExpClamp;
  }
  const double f = std::exp(log_scale);
  return {re * f, im * f};
}

struct TwoSided {
  // trajectories on each side of the origin, outermost-first on the left
  SampledTrajectory left;
  SampledTrajectory right;
};

TwoSided integrate_both_sides(const OdeRhs& rhs, const OdeState& y_left,
                              const OdeState& y_right, double x_left,
                              double x_right, std::span<const double> xs,
                              int mid, const OdeOptions& opts) {
  std::vector<double> left_targets;
  left_targets.reserve(mid);
  for (int j = mid - 1; j >= 0; --j) left_targets.push_back(xs[j]);
  std::vector<double> right_targets(xs.begin() + mid + 1, xs.end());
  TwoSided t;
  t.left = integrate_sampled(rhs, y_left, x_left, left_targets, opts);
  t.right = integrate_sampled(rhs, y_right, x_right, right_targets, opts);
  return t;
}

OdeOptions ode_options(const SolveOptions& opts) {
  OdeOptions o;
  o.rel_tol = opts.tol;
  o.abs_tol = opts.tol * 1e-3;
  return o;
}

double envelope_excursion(const PotentialInstance& p, double half_width) {
  const double rho0 = p.rho(0.0);
  double worst = 0.0;
  constexpr int kScan = 192;
  for (int i = 1; i <= kScan; ++i) {
    const double x = half_width * i / kScan;
    worst = std::max({worst, std::abs(p.rho(x) - rho0),
                      std::abs(p.rho(-x) - rho0)});
  }
  return worst;
}

}  // namespace

std::string_view route_name(Route r) {
  switch (r) {
    case Route::FirstOrder: return "first-order";
    case Route::SecondOrderPlus: return "second-order-positive";
    case Route::SecondOrderMinus: return "second-order-negative";
    case Route::PhiForm: return "phi";
    case Route::ClosedFormA: return "closed-form";
  }
  return "first-order";
}

Route route_from_name(std::string_view name) {
  if (name == "first-order") return Route::FirstOrder;
  if (name == "second-order-positive") return Route::SecondOrderPlus;
  if (name == "second-order-negative") return Route::SecondOrderMinus;
  if (name == "phi") return Route::PhiForm;
  if (name == "closed-form") return Route::ClosedFormA;
  throw std::invalid_argument(
      "unknown route '" + std::string(name) +
      "' (expected first-order, second-order-positive, "
      "second-order-negative, phi, or closed-form)");
}

double SpinorSolution::abs_chi(int i) const {
  return std::sqrt(std::norm(chi_plus[i]) + std::norm(chi_minus[i]));
}

double SpinorSolution::max_abs() const {
  double m = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    m = std::max({m, std::abs(chi_plus[i]), std::abs(chi_minus[i])});
  }
  return m;
}

SpinorSolution solve_first_order(const PotentialInstance& p, double mass,
                                 double energy,
                                 const BoundaryConditionAtOrigin& bc,
                                 double half_width, const SolveOptions& opts) {
  check_bc(bc);
  const double excursion = envelope_excursion(p, half_width);
  if (excursion > 60.0) {
    throw StiffnessError(
        "solve_first_order: envelope exponent moves by " +
        std::to_string(excursion) +
        " over the window (limit 60); the direct system is too "
        "ill-conditioned, use the envelope-split (phi) route");
  }
  const OdeRhs rhs = [&p, mass, energy](double x, const OdeState& y,
                                        OdeState& d) {
    const double w = p.w(x);
    const double u = p.w(-x);
    d[0] = u * y[0] - (energy + mass) * y[2];
    d[1] = u * y[1] - (energy + mass) * y[3];
    d[2] = (energy - mass) * y[0] - w * y[2];
    d[3] = (energy - mass) * y[1] - w * y[3];
  };
  const std::vector<double> xs = sample_points(half_width, opts.n_samples);
  const int mid = (static_cast<int>(xs.size()) - 1) / 2;
  const OdeState y0 = {bc.chi_plus_0.real(), bc.chi_plus_0.imag(),
                       bc.chi_minus_0.real(), bc.chi_minus_0.imag()};
  const TwoSided t =
      integrate_both_sides(rhs, y0, y0, 0.0, 0.0, xs, mid, ode_options(opts));

  SpinorSolution sol;
  sol.xs = xs;
  sol.energy = energy;
  sol.route = Route::FirstOrder;
  sol.chi_plus.resize(xs.size());
  sol.chi_minus.resize(xs.size());
  sol.chi_plus[mid] = bc.chi_plus_0;
  sol.chi_minus[mid] = bc.chi_minus_0;
  for (int j = 0; j < mid; ++j) {
    const auto& y = t.left.states[mid - 1 - j];
    const double ls = t.left.log_scale[mid - 1 - j];
    sol.chi_plus[j] = rescaled(y[0], y[1], ls, sol.envelope_clamped);
    sol.chi_minus[j] = rescaled(y[2], y[3], ls, sol.envelope_clamped);
  }
  for (size_t j = mid + 1; j < xs.size(); ++j) {
    const auto& y = t.right.states[j - mid - 1];
    const double ls = t.right.log_scale[j - mid - 1];
    sol.chi_plus[j] = rescaled(y[0], y[1], ls, sol.envelope_clamped);
    sol.chi_minus[j] = rescaled(y[2], y[3], ls, sol.envelope_clamped);
  }
  sol.localization = classify_localization(p);
  return sol;
}

SpinorSolution solve_second_order(const PotentialInstance& p, double mass,
                                  double energy,
                                  const BoundaryConditionAtOrigin& bc,
                                  double half_width, EnergySign sign,
                                  const SolveOptions& opts) {
  check_bc(bc);
  if (sign == EnergySign::Positive && energy == -mass) {
    throw BranchError(
        "the positive-energy branch is undefined at energy = -mass: the "
        "lower-component relation divides by (energy + mass); use the "
        "first-order route or the negative branch");
  }
  if (sign == EnergySign::Negative && energy == mass) {
    throw BranchError(
        "the negative-energy branch is undefined at energy = +mass: the "
        "upper-component relation divides by (energy - mass); use the "
        "first-order route or the positive branch");
  }
  const double eps2m2 = energy * energy - mass * mass;
  const bool positive = sign == EnergySign::Positive;

  // chi'' = -(W-U) chi' + (WU + U' - e^2 + m^2) chi      (upper component)
  // chi'' = -(W-U) chi' + (WU - W' - e^2 + m^2) chi      (lower component)
  const OdeRhs rhs = [&p, eps2m2, positive](double x, const OdeState& y,
                                            OdeState& d) {
    const double w = p.w(x);
    const double u = p.w(-x);
    const double deriv_term =
        positive ? -p.w_prime(-x) /* U'(x) */ : p.w_prime(x);
    const double c0 = w * u + (positive ? deriv_term : -deriv_term) - eps2m2;
    const double c1 = -(w - u);
    d[0] = y[2];
    d[1] = y[3];
    d[2] = c1 * y[2] + c0 * y[0];
    d[3] = c1 * y[3] + c0 * y[1];
  };

  const Complex lead = positive ? bc.chi_plus_0 : bc.chi_minus_0;
  const double w0 = p.w(0.0);
  const Complex slope0 =
      positive ? w0 * bc.chi_plus_0 - (energy + mass) * bc.chi_minus_0
               : (energy - mass) * bc.chi_plus_0 - w0 * bc.chi_minus_0;

  const std::vector<double> xs = sample_points(half_width, opts.n_samples);
  const int mid = (static_cast<int>(xs.size()) - 1) / 2;
  const double d0 = kSecondOrderOffset;
  const auto shifted = [&](double offset) {
    const Complex v = lead + offset * slope0;
    return OdeState{v.real(), v.imag(), slope0.real(), slope0.imag()};
  };
  const TwoSided t = integrate_both_sides(rhs, shifted(-d0), shifted(d0), -d0,
                                          d0, xs, mid, ode_options(opts));

  SpinorSolution sol;
  sol.xs = xs;
  sol.energy = energy;
  sol.route = positive ? Route::SecondOrderPlus : Route::SecondOrderMinus;
  sol.chi_plus.resize(xs.size());
  sol.chi_minus.resize(xs.size());
  sol.chi_plus[mid] = bc.chi_plus_0;
  sol.chi_minus[mid] = bc.chi_minus_0;
  const auto fill = [&](size_t j, const OdeState& y, double ls) {
    const Complex chi = rescaled(y[0], y[1], ls, sol.envelope_clamped);
    const Complex chi_prime = rescaled(y[2], y[3], ls, sol.envelope_clamped);
    const double x = sol.xs[j];
    if (positive) {
      sol.chi_plus[j] = chi;
      // lower component from the (e+m) relation
      sol.chi_minus[j] = (p.w(-x) * chi - chi_prime) / (energy + mass);
    } else {
      sol.chi_minus[j] = chi;
      sol.chi_plus[j] = (p.w(x) * chi + chi_prime) / (energy - mass);
    }
  };
  for (int j = 0; j < mid; ++j) {
    fill(j, t.left.states[mid - 1 - j], t.left.log_scale[mid - 1 - j]);
  }
  for (size_t j = mid + 1; j < xs.size(); ++j) {
    fill(j, t.right.states[j - mid - 1], t.right.log_scale[j - mid - 1]);
  }
  sol.localization = classify_localization(p);
  return sol;
}

SpinorSolution solve_phi_form(const PotentialInstance& p, double mass,
                              double energy,
                              const BoundaryConditionAtOrigin& bc,
                              double half_width, const SolveOptions& opts) {
  check_bc(bc);
  const double m2e2 = mass * mass - energy * energy;
  const auto phi_rhs = [&p, m2e2](double sign_r) {
    return OdeRhs([&p, m2e2, sign_r](double x, const OdeState& y, OdeState& d) {
      const double r = p.even_part(x);
      const double c0 = r * r + sign_r * p.even_part_prime(x) + m2e2;
      d[0] = y[2];
      d[1] = y[3];
      d[2] = c0 * y[0];
      d[3] = c0 * y[1];
    });
  };

  // gauge the envelope exponent to vanish at the origin, so the split
  // chi = exp(-(rho - rho(0))/2) * phi starts from phi(0) = chi(0)
  const double rho0 = p.rho(0.0);
  const double w0 = p.w(0.0);
  const Complex chi_plus_slope =
      w0 * bc.chi_plus_0 - (energy + mass) * bc.chi_minus_0;
  const Complex chi_minus_slope =
      (energy - mass) * bc.chi_plus_0 - w0 * bc.chi_minus_0;

  const std::vector<double> xs = sample_points(half_width, opts.n_samples);
  const int mid = (static_cast<int>(xs.size()) - 1) / 2;
  const OdeOptions oopts = ode_options(opts);

  const auto run_branch = [&](const Complex& value, const Complex& slope,
                              double sign_r) {
    const OdeState y0 = {value.real(), value.imag(), slope.real(),
                         slope.imag()};
    return integrate_both_sides(phi_rhs(sign_r), y0, y0, 0.0, 0.0, xs, mid,
                                oopts);
  };
  const TwoSided plus = run_branch(bc.chi_plus_0, chi_plus_slope, +1.0);
  const TwoSided minus = run_branch(bc.chi_minus_0, chi_minus_slope, -1.0);

  SpinorSolution sol;
  sol.xs = xs;
  sol.energy = energy;
  sol.route = Route::PhiForm;
  sol.chi_plus.resize(xs.size());
  sol.chi_minus.resize(xs.size());
  sol.chi_plus[mid] = bc.chi_plus_0;
  sol.chi_minus[mid] = bc.chi_minus_0;
  const auto attach = [&](size_t j, const OdeState& y, double ls) {
    const double exponent = -0.5 * (p.rho(sol.xs[j]) - rho0) + ls;
    double e = exponent;
    if (e > kExpClamp) {
      sol.envelope_clamped = true;
      e = kExpClamp;
    }
    const double f = std::exp(e);
    return Complex{y[0] * f, y[1] * f};
  };
  for (int j = 0; j < mid; ++j) {
    const int k = mid - 1 - j;
    sol.chi_plus[j] = attach(j, plus.left.states[k], plus.left.log_scale[k]);
    sol.chi_minus[j] =
        attach(j, minus.left.states[k], minus.left.log_scale[k]);
  }
  for (size_t j = mid + 1; j < xs.size(); ++j) {
    const size_t k = j - mid - 1;
    sol.chi_plus[j] = attach(j, plus.right.states[k], plus.right.log_scale[k]);
    sol.chi_minus[j] =
        attach(j, minus.right.states[k], minus.right.log_scale[k]);
  }
  sol.localization = classify_localization(p);
  return sol;
}

std::complex<double> wavenumber(double mass, double energy) {
  const double d = energy * energy - mass * mass;
  if (d >= 0.0) return {std::sqrt(d), 0.0};
  return {0.0, std::sqrt(-d)};  // evanescent: e^{ikx} decays rightward
}

std::pair<Complex, Complex> closed_form_eval(const PotentialInstance& p,
                                             double mass, double energy,
                                             Complex a_plus, Complex b_plus,
                                             double x) {
  const Complex k = wavenumber(mass, energy);
  const Complex ik = Complex(0.0, 1.0) * k;
  const Complex a_minus = -ik * a_plus / (energy + mass);
  const Complex b_minus = ik * b_plus / (energy + mass);
  const double env = -0.5 * p.rho(x);
  const auto term = [&](Complex coeff, Complex phase_exp) {
    Complex z = phase_exp + env;
    if (z.real() > kExpClamp) z = Complex(kExpClamp, z.imag());
    return coeff * std::exp(z);
  };
  const Complex zp = ik * x;
  return {term(a_plus, zp) + term(b_plus, -zp),
          term(a_minus, zp) + term(b_minus, -zp)};
}

SpinorSolution closed_form_subclass_a(const PotentialInstance& p, double mass,
                                      double energy, Complex a_plus,
                                      Complex b_plus,
                                      std::span<const double> xs) {
  if (p.subclass != Subclass::OddParity) {
    throw std::invalid_argument(
        "closed_form_subclass_a: the plane-wave closed form needs an odd "
        "potential (" + p.label() + " has no definite parity)");
  }
  if (energy == -mass) {
    throw BranchError(
        "closed_form_subclass_a: the coefficient linkage divides by "
        "(energy + mass), undefined at energy = -mass");
  }
  SpinorSolution sol;
  sol.xs.assign(xs.begin(), xs.end());
  sol.energy = energy;
  sol.route = Route::ClosedFormA;
  sol.chi_plus.resize(xs.size());
  sol.chi_minus.resize(xs.size());
  for (size_t j = 0; j < xs.size(); ++j) {
    const auto [up, low] = closed_form_eval(p, mass, energy, a_plus, b_plus,
                                            xs[j]);
    sol.chi_plus[j] = up;
    sol.chi_minus[j] = low;
    if (!std::isfinite(up.real()) || !std::isfinite(low.real()) ||
        !std::isfinite(up.imag()) || !std::isfinite(low.imag())) {
      sol.envelope_clamped = true;
    }
  }
  sol.localization = classify_localization(p);
  return sol;
}

std::pair<Complex, Complex> closed_form_coefficients_for_bc(
    const PotentialInstance& p, double mass, double energy,
    const BoundaryConditionAtOrigin& bc) {
  const Complex k = wavenumber(mass, energy);
  if (k == Complex(0.0, 0.0)) {
    throw BranchError(
        "closed_form_coefficients_for_bc: k = 0 at |energy| = mass, the two "
        "exponentials degenerate");
  }
  if (energy == -mass) {
    throw BranchError("closed_form_coefficients_for_bc: energy = -mass");
  }
  const Complex ik = Complex(0.0, 1.0) * k;
  const double e0 = std::exp(-0.5 * p.rho(0.0));
  // chi+(0) = e0 (A+B),  chi-(0) = e0 ik (B-A)/(e+m)
  const Complex sum = bc.chi_plus_0 / e0;
  const Complex diff = (energy + mass) * bc.chi_minus_0 / (ik * e0);
  return {0.5 * (sum - diff), 0.5 * (sum + diff)};
}

Localization classify_localization(const PotentialInstance& p,
                                   double threshold) {
  const bool cheap = p.has_closed_form_rho();
  const double x0 = std::max(1.0, 1.0 / std::abs(p.mu));
  const int quarter_steps = cheap ? 180 : 56;  // up to x0*2^45 (2^14 custom)
  double lo = p.rho(0.0);
  double hi = lo;
  double range_half = 0.0;
  for (int j = -8; j <= quarter_steps; ++j) {
    const double x = x0 * std::pow(2.0, 0.25 * j);
    const double v = p.rho(x);
    if (std::isnan(v)) return Localization::Indeterminate;
    if (v == std::numeric_limits<double>::infinity()) {
      return Localization::Localized;
    }
    if (v == -std::numeric_limits<double>::infinity()) {
      return Localization::Indeterminate;  // envelope grows without bound
    }
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    if (v - lo >= threshold) return Localization::Localized;
    if (hi - v >= threshold) return Localization::Indeterminate;
    if (j == quarter_steps / 2) range_half = hi - lo;
  }
  const double range = hi - lo;
  if (range < threshold && range - range_half <= 0.05 * threshold) {
    return Localization::NonLocalized;  // bounded oscillatory envelope
  }
  return Localization::Indeterminate;  // still growing, threshold not reached
}

Route default_route(const PotentialInstance& p) {
  return p.subclass == Subclass::NoDefiniteParity ? Route::PhiForm
                                                  : Route::FirstOrder;
}

SpinorSolution solve_route(const PotentialInstance& p, double mass,
                           double energy, const BoundaryConditionAtOrigin& bc,
                           double half_width, Route route,
                           const SolveOptions& opts) {
  switch (route) {
    case Route::FirstOrder:
      return solve_first_order(p, mass, energy, bc, half_width, opts);
    case Route::SecondOrderPlus:
      return solve_second_order(p, mass, energy, bc, half_width,
                                EnergySign::Positive, opts);
    case Route::SecondOrderMinus:
      return solve_second_order(p, mass, energy, bc, half_width,
                                EnergySign::Negative, opts);
    case Route::PhiForm:
      return solve_phi_form(p, mass, energy, bc, half_width, opts);
    case Route::ClosedFormA: {
      const auto [a_plus, b_plus] =
          closed_form_coefficients_for_bc(p, mass, energy, bc);
      const std::vector<double> xs = sample_points(half_width, opts.n_samples);
      return closed_form_subclass_a(p, mass, energy, a_plus, b_plus, xs);
    }
  }
  throw std::logic_error("solve_route: unreachable");
}

double max_relative_deviation(const SpinorSolution& a,
                              const SpinorSolution& b) {
  if (a.xs.size() != b.xs.size()) {
    throw std::invalid_argument(
        "max_relative_deviation: sample grids differ in size");
  }
  double scale = std::max(a.max_abs(), b.max_abs());
  if (scale == 0.0) return 0.0;
  const double mask = 1e-10 * scale;
  double dev = 0.0;
  for (size_t i = 0; i < a.xs.size(); ++i) {
    if (a.xs[i] != b.xs[i]) {
      throw std::invalid_argument(
          "max_relative_deviation: sample grids do not match");
    }
    if (std::abs(a.chi_plus[i]) >= mask || std::abs(b.chi_plus[i]) >= mask) {
      dev = std::max(dev, std::abs(a.chi_plus[i] - b.chi_plus[i]));
    }
    if (std::abs(a.chi_minus[i]) >= mask || std::abs(b.chi_minus[i]) >= mask) {
      dev = std::max(dev, std::abs(a.chi_minus[i] - b.chi_minus[i]));
    }
  }
  return dev / scale;
}

double discrete_system_residual(const SpinorSolution& sol,
                                const PotentialInstance& p, double mass) {
  const size_t n = sol.xs.size();
  if (n < 3) return 0.0;
  const double dx = sol.xs[1] - sol.xs[0];
  const double scale = sol.max_abs();
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (size_t i = 1; i + 1 < n; ++i) {
    const double x = sol.xs[i];
    const Complex dplus =
        (sol.chi_plus[i + 1] - sol.chi_plus[i - 1]) / (2.0 * dx);
    const Complex dminus =
        (sol.chi_minus[i + 1] - sol.chi_minus[i - 1]) / (2.0 * dx);
    const Complex r1 = mass * sol.chi_plus[i] + dminus +
                       p.w(x) * sol.chi_minus[i] -
                       sol.energy * sol.chi_plus[i];
    const Complex r2 = -mass * sol.chi_minus[i] - dplus +
                       p.w(-x) * sol.chi_plus[i] -
                       sol.energy * sol.chi_minus[i];
    worst = std::max({worst, std::abs(r1), std::abs(r2)});
  }
  return worst / scale;
}

double closed_form_residual(const PotentialInstance& p, double mass,
                            double energy, Complex a_plus, Complex b_plus,
                            const GridSpec& grid) {
  const auto chi = [&](double x) {
    return closed_form_eval(p, mass, energy, a_plus, b_plus, x);
  };
  double worst = 0.0;
  double scale = 0.0;
  for (int i = 0; i < grid.N; ++i) {
    const double x = grid.nodes[i];
    const auto [cp, cm] = chi(x);
    const auto [cp_r, cm_r] = chi(x + grid.h);
    const auto [cp_l, cm_l] = chi(x - grid.h);
    const Complex dplus = (cp_r - cp_l) / (2.0 * grid.h);
    const Complex dminus = (cm_r - cm_l) / (2.0 * grid.h);
    const Complex r1 = mass * cp + dminus + p.w(x) * cm - energy * cp;
    const Complex r2 = -mass * cm - dplus + p.w(-x) * cp - energy * cm;
    worst = std::max({worst, std::abs(r1), std::abs(r2)});
    scale = std::max({scale, std::abs(cp), std::abs(cm)});
  }
  return scale == 0.0 ? 0.0 : worst / scale;
}

}  // namespace cpdirac
