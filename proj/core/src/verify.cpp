#include "cpdirac/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "json.hpp"
#include "cpdirac/hamiltonian.hpp"
#include "cpdirac/io.hpp"
#include "cpdirac/solver.hpp"
#include "cpdirac/spectrum.hpp"
#include "cpdirac/symmetry.hpp"

namespace cpdirac {

using nlohmann::json;

VerifyConfig VerifyConfig::defaults() {
  VerifyConfig c;
  for (const auto& row : catalog()) c.families.push_back(row.family);
  return c;
}

void VerificationReport::add(CheckEntry e) {
  if (!e.skipped) overall = overall && e.pass;
  entries.push_back(std::move(e));
}

int VerificationReport::n_pass() const {
  int n = 0;
  for (const auto& e : entries) n += (!e.skipped && e.pass) ? 1 : 0;
  return n;
}

int VerificationReport::n_fail() const {
  int n = 0;
  for (const auto& e : entries) n += (!e.skipped && !e.pass) ? 1 : 0;
  return n;
}

std::string verification_report_json(const VerificationReport& report) {
  json checks = json::array();
  for (const auto& e : report.entries) {
    checks.push_back({
        {"name", e.name},
        {"status", e.skipped ? "skipped" : (e.pass ? "pass" : "fail")},
        {"defect", e.defect},
        {"tolerance", e.tolerance},
        {"params", e.params},
    });
  }
  json j;
  j["checks"] = checks;
  j["overall"] = report.overall;
  j["empty"] = report.empty;
  j["n_pass"] = report.n_pass();
  j["n_fail"] = report.n_fail();
  return j.dump(2) + "\n";
}

PotentialInstance default_instance(Family f) {
  switch (f) {
    case Family::OddPower: return make_potential(f, 0.5, 1.0, 0);
    case Family::Sinh: return make_potential(f, 1.0, 1.0);
    case Family::Sin: return make_potential(f, 1.0, 1.0);
    case Family::Asinh: return make_potential(f, 1.0, 1.0);
    case Family::XLog: return make_potential(f, 1.0, 1.0);
    case Family::Exp: return make_potential(f, -1.0, 0.2);
    case Family::XExp: return make_potential(f, 1.0, 1.0);
    case Family::X2Exp: return make_potential(f, -1.0, 1.0);
    case Family::Lorentzian: return make_potential(f, 1.0, 0.5);
    case Family::Custom: break;
  }
  throw std::invalid_argument("default_instance: no default for custom");
}

double verification_window(const PotentialInstance& p) {
  if (p.family == Family::Sin) return 4.0 * M_PI / std::abs(p.mu);
  return std::min(envelope_box_half_width(p), 60.0 / std::abs(p.mu));
}

namespace {

std::string family_param_string(const PotentialInstance& p) {
  return p.label();
}

CheckEntry make_entry(std::string name, double defect, double tol,
                      std::string params) {
  CheckEntry e;
  e.name = std::move(name);
  e.defect = defect;
  e.tolerance = tol;
  e.pass = defect <= tol;
  e.params = std::move(params);
  return e;
}

}  // namespace

void check_rho_tables(const std::vector<Family>& families, int samples_per_row,
                      VerificationReport& report) {
  for (Family f : families) {
    const PotentialInstance p = default_instance(f);
    const double window = verification_window(p);
    double closed_vs_quad = 0.0;
    double derivative_defect = 0.0;
    for (int i = 0; i < samples_per_row; ++i) {
      const double x = -window + 2.0 * window * i / (samples_per_row - 1);
      const double cf = p.rho(x);
      const double quad = p.rho_from_quadrature(x);
      closed_vs_quad = std::max(
          closed_vs_quad, std::abs(cf - quad) / std::max(1.0, std::abs(cf)));
      const double h = 1e-4;
      const double fd = (p.rho(x + h) - p.rho(x - h)) / (2.0 * h);
      const double odd = p.w(x) - p.w(-x);
      derivative_defect =
          std::max(derivative_defect,
                   std::abs(fd - odd) / (1.0 + std::abs(odd)));
    }
    report.add(make_entry("rho-table/closed-vs-quadrature/" +
                              std::string(family_name(f)),
                          closed_vs_quad, 1e-8, family_param_string(p)));
    report.add(make_entry(
        "rho-table/derivative/" + std::string(family_name(f)),
        derivative_defect, 1e-6, family_param_string(p)));
  }
}

void check_eq13_reduction(VerificationReport& report) {
  const double mass = 1.0;
  const double energy = 2.0;
  for (const auto& [amp, mu] : std::vector<std::pair<double, double>>{
           {-1.0, 0.2}, {-0.5, 1.0}}) {
    const PotentialInstance p = make_potential(Family::Exp, amp, mu);
    const double big_mass_sq = mass * mass + amp * amp;  // M^2 = m^2 + A^2
    double reduction_defect = 0.0;
    double square_defect = 0.0;
    for (int i = 0; i < 101; ++i) {
      const double x = -10.0 + 0.2 * i;
      const double s = std::sinh(mu * x);
      for (double sign : {+1.0, -1.0}) {
        // generic coefficient -R^2 -/+ R' + e^2 - m^2 against the sinh^2 form
        const double generic = -p.even_part(x) * p.even_part(x) -
                               sign * p.even_part_prime(x) +
                               energy * energy - mass * mass;
        const double reduced = -amp * amp * s * s - sign * mu * amp * s +
                               energy * energy - big_mass_sq;
        reduction_defect =
            std::max(reduction_defect, std::abs(generic - reduced) /
                                           std::max(1.0, std::abs(reduced)));
        // completed square: V - A^2/2 (the A^2 shift rides in M^2) equals
        // (A sinh +/- mu/2)^2/2 - mu^2/8
        const double shifted =
            p.effective_potential(x, sign > 0 ? Branch::Plus : Branch::Minus) -
            0.5 * amp * amp;
        const double t = amp * s + sign * 0.5 * mu;
        const double square = 0.5 * t * t - mu * mu / 8.0;
        square_defect =
            std::max(square_defect, std::abs(shifted - square) /
                                        std::max(1.0, std::abs(square)));
      }
    }
    std::ostringstream params;
    params << "A=" << amp << ", mu=" << mu << ", eps=" << energy
           << ", m=" << mass;
    report.add(make_entry("eq13/sinh2-reduction/A=" + format_double(amp),
                          reduction_defect, 1e-12, params.str()));
    report.add(make_entry("eq13/completed-square/A=" + format_double(amp),
                          square_defect, 1e-12, params.str()));
  }
}

void check_route_equivalence(const std::vector<Family>& families,
                             const std::vector<double>& energies, double mass,
                             VerificationReport& report) {
  const BoundaryConditionAtOrigin bc;
  for (Family f : families) {
    const PotentialInstance p = default_instance(f);
    const double window = verification_window(p);
    for (double e_over_m : energies) {
      const double energy = e_over_m * mass;
      std::ostringstream name;
      name << "route-equivalence/" << family_name(f) << "/eps="
           << e_over_m << "m";
      std::ostringstream params;
      params << family_param_string(p) << ", window=" << window;
      if (energy == mass || energy == -mass) {
        CheckEntry e;
        e.name = name.str();
        e.skipped = true;
        e.params = params.str() + " (excluded branch)";
        report.add(std::move(e));
        continue;
      }
      const SpinorSolution first =
          solve_first_order(p, mass, energy, bc, window);
      const SpinorSolution second = solve_second_order(
          p, mass, energy, bc, window,
          energy >= 0 ? EnergySign::Positive : EnergySign::Negative);
      const SpinorSolution phi = solve_phi_form(p, mass, energy, bc, window);
      double defect = std::max(max_relative_deviation(first, second),
                               max_relative_deviation(first, phi));
      if (p.subclass == Subclass::OddParity) {
        const SpinorSolution closed =
            solve_route(p, mass, energy, bc, window, Route::ClosedFormA);
        defect = std::max(defect, max_relative_deviation(first, closed));
      }
      report.add(make_entry(name.str(), defect, 1e-6, params.str()));
    }
  }
}

void check_spectral_reality(const std::vector<int>& grid_sizes,
                            VerificationReport& report) {
  const double mass = 1.0;
  const double half_width = 8.0;
  const PotentialInstance linear = default_instance(Family::OddPower);

  // free operator against the symmetric-square oracle
  {
    const GridSpec grid = build_grid(half_width, grid_sizes.front());
    const auto zero = [](double) { return 0.0; };
    const DiscreteDiracOperator free_op =
        build_hamiltonian(grid, mass, zero, zero, zero, zero);
    const Eigen::MatrixXd d = central_difference_matrix(grid);
    const Eigen::MatrixXd square =
        mass * mass * Eigen::MatrixXd::Identity(grid.N, grid.N) -
        (d * d).eval();
    const std::vector<double> s = eig_symmetric(square);
    std::vector<double> expected;
    expected.reserve(2 * s.size());
    for (double v : s) {
      const double r = std::sqrt(std::max(0.0, v));
      expected.push_back(-r);
      expected.push_back(r);
    }
    std::sort(expected.begin(), expected.end());
    const EnergySpectrum spec = spectrum(free_op, 1e-10);
    double defect = 0.0;
    for (size_t i = 0; i < expected.size(); ++i) {
      defect = std::max(defect,
                        std::abs(spec.eigenvalues[i].real() - expected[i]));
      defect = std::max(defect, std::abs(spec.eigenvalues[i].imag()));
    }
    report.add(make_entry("spectral/free-oracle", defect, 1e-10,
                          "W=0, m=1, L=8, N=" +
                              std::to_string(grid_sizes.front())));
  }

  std::vector<double> bulk_imag;
  for (int n : grid_sizes) {
    const GridSpec grid = build_grid(half_width, n);
    const DiscreteDiracOperator op = build_cp_class(grid, mass, linear);
    const EnergySpectrum spec = spectrum(op);
    const RealitySummary sum =
        reality_report(spec, 1e-8, 0.5 / grid.h);
    bulk_imag.push_back(sum.max_imag_bulk);
    report.add(make_entry(
        "spectral/conjugate-pairing/N=" + std::to_string(n),
        sum.pairing_residual, 1e-10, linear.label()));
  }
  for (size_t i = 0; i + 1 < bulk_imag.size(); ++i) {
    const double ratio = bulk_imag[i] / bulk_imag[i + 1];
    CheckEntry e = make_entry(
        "spectral/imag-h2-ratio/N=" + std::to_string(grid_sizes[i]) + "to" +
            std::to_string(grid_sizes[i + 1]),
        ratio, 5.0, linear.label() + ", L=8");
    e.pass = ratio >= 3.0 && ratio <= 5.0;
    report.add(std::move(e));
  }
  if (!bulk_imag.empty()) {
    report.add(make_entry("spectral/imag-finest", bulk_imag.back(), 1e-4,
                          linear.label() + ", N=" +
                              std::to_string(grid_sizes.back())));
  }
}

void check_symmetry_identities(const std::vector<Family>& families,
                               FaultInjection fault,
                               VerificationReport& report) {
  const double mass = 1.0;
  const int n_nodes = 400;
  for (Family f : families) {
    const PotentialInstance p = default_instance(f);
    const double half_width = p.family == Family::Sin
                                  ? 4.0 * M_PI / std::abs(p.mu)
                                  : envelope_box_half_width(p);
    const GridSpec grid = build_grid(half_width, n_nodes);
    DiscreteDiracOperator op;
    if (fault == FaultInjection::CpWiring) {
      // deliberately mis-wired partner potential: U(x) = -W(-x)
      const auto zero = [](double) { return 0.0; };
      op = build_hamiltonian(
          grid, mass, zero, zero, [&p](double x) { return p.w(x); },
          [&p](double x) { return -p.w(-x); });
    } else {
      op = build_cp_class(grid, mass, p);
    }
    const SymmetryReport rep = symmetry_report(op);
    const std::string fam(family_name(f));
    const std::string params = p.label() + ", L=" + format_double(half_width) +
                               ", N=" + std::to_string(n_nodes);

    report.add(make_entry("symmetry/cp-exactness/" + fam, rep.cp_defect,
                          1e-13 * rep.scale, params));

    double expected_h = 0.0;
    for (int i = 0; i < grid.N; ++i) {
      expected_h = std::max(
          expected_h, std::abs(op.w_nodes[i] - op.u_nodes[i]));
    }
    report.add(make_entry(
        "symmetry/hermiticity-formula/" + fam,
        std::abs(rep.hermiticity_defect - expected_h),
        1e-13 * std::max(1.0, expected_h), params));

    CheckEntry pt = make_entry("symmetry/pt-defect-positive/" + fam,
                               rep.pt_defect, 0.0, params);
    pt.pass = rep.pt_defect > 0.0;
    report.add(std::move(pt));

    report.add(make_entry("symmetry/gamma5-block-identity/" + fam,
                          rep.gamma5_check, 1e-13 * rep.scale, params));
  }

  // the sandwich identity (CP)H(CP) = H is equivalent to the vanishing
  // anti-commutator since (CP)^2 = -1; verify the two formulations agree
  // with explicit matrix products on a small grid
  {
    const PotentialInstance p = default_instance(Family::Exp);
    const GridSpec grid = build_grid(10.0, 60);
    const DiscreteDiracOperator op = build_cp_class(grid, mass, p);
    const Eigen::MatrixXd cp = cp_matrix(grid);
    const double sandwich = max_norm(cp * op.matrix * cp - op.matrix);
    const double anti = max_norm(cp * op.matrix + op.matrix * cp);
    report.add(make_entry("symmetry/cp-formulations-agree",
                          std::max(sandwich, anti), 1e-13 * op.scale(),
                          p.label() + ", N=60"));
  }
}

void check_closed_form_residual(VerificationReport& report) {
  const PotentialInstance p = default_instance(Family::Sinh);
  const double mass = 1.0;
  const double energy = 2.0;
  const std::complex<double> a_plus{1.0, 0.0};
  const std::complex<double> b_plus{0.7, 0.3};
  const double half_width = 3.0;
  std::vector<double> residuals;
  for (int n : {200, 400, 800}) {
    residuals.push_back(closed_form_residual(
        p, mass, energy, a_plus, b_plus, build_grid(half_width, n)));
  }
  for (size_t i = 0; i + 1 < residuals.size(); ++i) {
    const double ratio = residuals[i] / residuals[i + 1];
    CheckEntry e = make_entry(
        "closed-form/residual-ratio/" + std::to_string(200 << i) + "to" +
            std::to_string(400 << i),
        ratio, 5.0, p.label() + ", eps=2m, L=3");
    e.pass = ratio >= 3.0 && ratio <= 5.0;
    report.add(std::move(e));
  }
}

void check_parity_properties(const std::vector<Family>& families,
                             int property_samples,
                             VerificationReport& report) {
  // deterministic low-discrepancy (R2) parameter samples per family box
  constexpr double kAlpha = 0.7548776662466927;
  constexpr double kBeta = 0.5698402909980532;
  const auto frac = [](double v) { return v - std::floor(v); };
  for (Family f : families) {
    const CatalogRow* row = nullptr;
    for (const auto& r : catalog()) {
      if (r.family == f) row = &r;
    }
    double worst = 0.0;  // violations scaled by their allowance
    for (int k = 0; k < property_samples; ++k) {
      const double u = frac(0.5 + kAlpha * (k + 1));
      const double v = frac(0.5 + kBeta * (k + 1));
      const double mu = 0.3 + 2.2 * v;
      double amp = 0.3 + 1.7 * u;
      if (row && row->constraint == "mu*A < 0") amp = -amp;
      if (row && row->constraint.empty() && k % 2 == 1) amp = -amp;
      const PotentialInstance p = make_potential(f, amp, mu, k % 3);
      for (double xr : {0.17, 0.61, 1.13, 2.41}) {
        const double x = xr / mu;
        const double r_even = p.even_part(x) - p.even_part(-x);
        worst = std::max(worst, std::abs(r_even) /
                                    (1e-13 * (1.0 + std::abs(p.even_part(x)))));
        const double d_odd = p.odd_part(x) + p.odd_part(-x);
        worst = std::max(worst, std::abs(d_odd) /
                                    (1e-13 * (1.0 + std::abs(p.odd_part(x)))));
        const double split = p.even_part(x) + p.odd_part(x) - p.w(x);
        worst = std::max(worst, std::abs(split) /
                                    (1e-13 * (1.0 + std::abs(p.w(x)))));
        const double h = 1e-4;
        const double fd = (p.rho(x + h) - p.rho(x - h)) / (2.0 * h);
        const double odd = p.w(x) - p.w(-x);
        worst = std::max(worst,
                         std::abs(fd - odd) / (1e-6 * (1.0 + std::abs(odd))));
      }
    }
    report.add(make_entry(
        "parity-properties/" + std::string(family_name(f)), worst, 1.0,
        std::to_string(property_samples) + " low-discrepancy samples"));
  }
}

VerificationReport run_suite(const VerifyConfig& config) {
  VerificationReport report;
  if (config.families.empty()) {
    report.empty = true;  // vacuously true
    return report;
  }
  check_rho_tables(config.families, config.samples_per_row, report);
  check_eq13_reduction(report);
  check_parity_properties(config.families, config.property_samples, report);
  check_symmetry_identities(config.families, config.fault, report);
  check_route_equivalence(config.families, config.energies, config.mass,
                          report);
  check_closed_form_residual(report);
  check_spectral_reality(config.spectral_grid_sizes, report);
  return report;
}

}  // namespace cpdirac
