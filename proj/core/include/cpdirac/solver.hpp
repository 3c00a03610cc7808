#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "cpdirac/grid.hpp"
#include "cpdirac/ode.hpp"
#include "cpdirac/potential.hpp"

namespace cpdirac {

/// Requested route/energy combination hits an excluded branch (the component
/// relations divide by energy -/+ mass).
class BranchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Route {
  FirstOrder,        // coupled first-order system, integrated from the origin
  SecondOrderPlus,   // second-order equation for the upper component
  SecondOrderMinus,  // second-order equation for the lower component
  PhiForm,           // envelope-split Schrodinger form (robust when stiff)
  ClosedFormA,       // plane-wave closed form for the odd subclass
};

enum class EnergySign { Positive, Negative };
enum class Localization { Localized, NonLocalized, Indeterminate };

std::string_view route_name(Route r);
Route route_from_name(std::string_view name);

struct BoundaryConditionAtOrigin {
  std::complex<double> chi_plus_0{1.0, 0.0};
  std::complex<double> chi_minus_0{0.0, 0.0};
};

/// Sampled stationary spinor at a fixed real energy.
struct SpinorSolution {
  std::vector<double> xs;
  std::vector<std::complex<double>> chi_plus;
  std::vector<std::complex<double>> chi_minus;
  double energy = 0.0;
  Route route = Route::FirstOrder;
  Localization localization = Localization::Indeterminate;
  bool envelope_clamped = false;  // some sample hit the floating-point range

  bool is_localized() const { return localization == Localization::Localized; }
  double abs_chi(int i) const;  // sqrt(|chi+|^2 + |chi-|^2)
  double max_abs() const;
};

struct SolveOptions {
  double tol = 1e-9;    // relative integration tolerance (absolute: tol*1e-3)
  int n_samples = 401;  // forced odd so x = 0 is a sample
};

/// chi+' = W(-x) chi+ - (e+m) chi-,  chi-' = (e-m) chi+ - W(x) chi-,
/// integrated outward from the origin.  Valid at e = +/-m.  Refuses windows
/// where the envelope exponent moves more than 60 from its origin value
/// (StiffnessError; the phi route handles those).
SpinorSolution solve_first_order(const PotentialInstance& p, double mass,
                                 double energy,
                                 const BoundaryConditionAtOrigin& bc,
                                 double half_width,
                                 const SolveOptions& opts = {});

/// Second-order route: the positive branch integrates the upper-component
/// equation and recovers the lower component from the (e+m) relation
/// (excluded at e = -m); the negative branch mirrors it (excluded at e = m).
SpinorSolution solve_second_order(const PotentialInstance& p, double mass,
                                  double energy,
                                  const BoundaryConditionAtOrigin& bc,
                                  double half_width, EnergySign sign,
                                  const SolveOptions& opts = {});

/// Envelope-split route: integrates phi'' = (R^2 +/- R' + m^2 - e^2) phi with
/// the envelope exponent kept in log-domain and re-attached per sample.
SpinorSolution solve_phi_form(const PotentialInstance& p, double mass,
                              double energy,
                              const BoundaryConditionAtOrigin& bc,
                              double half_width, const SolveOptions& opts = {});

/// k = sqrt(e^2 - m^2) for |e| >= m; i*sqrt(m^2 - e^2) on the evanescent
/// branch (the decaying exponential is kept).
std::complex<double> wavenumber(double mass, double energy);

/// Closed form for odd potentials:
///   chi+ = exp(-rho/2) (A+ e^{ikx} + B+ e^{-ikx}),
/// with the lower-component coefficients linked by A- = -ik A+/(e+m),
/// B- = +ik B+/(e+m) so the component relation holds identically.
SpinorSolution closed_form_subclass_a(const PotentialInstance& p, double mass,
                                      double energy,
                                      std::complex<double> a_plus,
                                      std::complex<double> b_plus,
                                      std::span<const double> xs);

/// Pointwise closed-form values (upper, lower) at one x.
std::pair<std::complex<double>, std::complex<double>> closed_form_eval(
    const PotentialInstance& p, double mass, double energy,
    std::complex<double> a_plus, std::complex<double> b_plus, double x);

/// Coefficients (A+, B+) reproducing given origin boundary values; needs
/// k != 0 and e != -m.
std::pair<std::complex<double>, std::complex<double>>
closed_form_coefficients_for_bc(const PotentialInstance& p, double mass,
                                double energy,
                                const BoundaryConditionAtOrigin& bc);

/// Envelope-based bound/scattering classification: Localized once
/// rho(probe) - min(rho) exceeds the threshold on a growing probe sequence,
/// NonLocalized when rho stays bounded (oscillatory), Indeterminate
/// otherwise.
Localization classify_localization(const PotentialInstance& p,
                                   double threshold = 28.0);

/// PhiForm for the no-definite-parity subclass (stiff direct system),
/// FirstOrder otherwise.
Route default_route(const PotentialInstance& p);

/// Dispatch helper; SecondOrder picks the branch from the energy sign and
/// ClosedFormA derives coefficients from the boundary condition.
SpinorSolution solve_route(const PotentialInstance& p, double mass,
                           double energy, const BoundaryConditionAtOrigin& bc,
                           double half_width, Route route,
                           const SolveOptions& opts = {});

/// Max deviation between two sampled solutions, normalized by the window
/// max and masked where |chi| < 1e-10 * max|chi|.
double max_relative_deviation(const SpinorSolution& a, const SpinorSolution& b);

/// Residual of the sampled solution in the central-difference discretization
/// of the stationary first-order system, normalized by max |chi|.
double discrete_system_residual(const SpinorSolution& sol,
                                const PotentialInstance& p, double mass);

/// Same residual for the closed form evaluated directly at grid nodes and
/// their h-neighbors.
double closed_form_residual(const PotentialInstance& p, double mass,
                            double energy, std::complex<double> a_plus,
                            std::complex<double> b_plus, const GridSpec& grid);

}  // namespace cpdirac
