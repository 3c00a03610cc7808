#pragma once

#include <string>
#include <vector>

#include "cpdirac/potential.hpp"

namespace cpdirac {

enum class FaultInjection { None, CpWiring };

/// Deterministic configuration of the cross-validation suite; identical
/// configs produce bit-identical reports.
struct VerifyConfig {
  std::vector<Family> families;  // empty list = vacuous report
  std::vector<double> energies = {1.5, 2.0, -1.5, -2.0};  // units of mass
  double mass = 1.0;
  std::vector<int> spectral_grid_sizes = {200, 400, 800};
  int samples_per_row = 101;
  int property_samples = 8;  // low-discrepancy (A, mu) draws per family
  FaultInjection fault = FaultInjection::None;

  static VerifyConfig defaults();
};

struct CheckEntry {
  std::string name;
  bool pass = false;
  bool skipped = false;
  double defect = 0.0;
  double tolerance = 0.0;
  std::string params;
};

struct VerificationReport {
  std::vector<CheckEntry> entries;
  bool overall = true;  // conjunction of all statuses (vacuously true)
  bool empty = false;

  void add(CheckEntry e);
  int n_pass() const;
  int n_fail() const;
};

std::string verification_report_json(const VerificationReport& report);

/// Default (A, mu, n) used for a family wherever the checks need a concrete
/// conforming instance (the figure-caption parameters where the captions
/// give them).
PotentialInstance default_instance(Family f);

/// Window used by the checks: the envelope heuristic capped to keep long
/// slow-decay tails (the rational family) out of the ODE horizon.
double verification_window(const PotentialInstance& p);

/// Closed-form envelope exponent against Simpson quadrature, and its
/// derivative against W(x) - W(-x), per family.
void check_rho_tables(const std::vector<Family>& families, int samples_per_row,
                      VerificationReport& report);

/// The sinh^2 reduction of the envelope-split equation for the exponential
/// family, plus the completed-square form of its confining potential.
void check_eq13_reduction(VerificationReport& report);

void check_route_equivalence(const std::vector<Family>& families,
                             const std::vector<double>& energies, double mass,
                             VerificationReport& report);

void check_spectral_reality(const std::vector<int>& grid_sizes,
                            VerificationReport& report);

/// CP exactness, the exact Hermiticity-defect formula, PT-defect
/// positivity, and the gamma5 block identity for every family.
void check_symmetry_identities(const std::vector<Family>& families,
                               FaultInjection fault,
                               VerificationReport& report);

/// Residual convergence of the odd-subclass closed form under grid halving.
void check_closed_form_residual(VerificationReport& report);

/// Even/odd split and envelope-derivative identities at low-discrepancy
/// parameter samples.
void check_parity_properties(const std::vector<Family>& families,
                             int property_samples, VerificationReport& report);

VerificationReport run_suite(const VerifyConfig& config);

}  // namespace cpdirac
