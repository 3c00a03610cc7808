#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

#include "cpdirac/hamiltonian.hpp"

namespace cpdirac {

class EigenSolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// All eigenvalues of a real general matrix (LAPACK dgeev), sorted by
/// (Re, Im).  Throws EigenSolveError on QR non-convergence.
std::vector<std::complex<double>> eig_general(const Eigen::MatrixXd& m);

/// All eigenvalues of a real symmetric matrix (LAPACK dsyev), ascending.
/// Independent code path from eig_general; used as the free-operator oracle.
std::vector<double> eig_symmetric(const Eigen::MatrixXd& m);

struct EnergySpectrum {
  std::vector<std::complex<double>> eigenvalues;  // sorted by (Re, Im)
  double reality_tol = 1e-8;
  int n_real = 0;     // |Im e| <= reality_tol * max(1, |Re e|)
  double max_imag = 0.0;
};

/// Spectrum of the assembled operator.  The default reality tolerance is
/// max(1e-8, 10 h^2): the discretization itself injects O(h^2) imaginary
/// parts.
EnergySpectrum spectrum(const DiscreteDiracOperator& op,
                        double reality_tol = -1.0);
EnergySpectrum spectrum_of_matrix(const Eigen::MatrixXd& m,
                                  double reality_tol = 1e-8);

struct RealitySummary {
  int n_total = 0;
  int n_real = 0;
  int n_bulk = 0;  // eigenvalues with |Re e| <= bulk_cutoff
  double reality_tol = 0.0;
  double bulk_cutoff = 0.0;  // lattice-artifact split, default 0.5/h
  double max_imag_all = 0.0;
  double max_imag_bulk = 0.0;
  double pairing_residual = 0.0;  // conjugate-pair matching defect
  std::vector<std::complex<double>> outliers;  // eigenvalues failing reality
};

RealitySummary reality_report(const EnergySpectrum& spec, double tol,
                              double bulk_cutoff);

}  // namespace cpdirac
