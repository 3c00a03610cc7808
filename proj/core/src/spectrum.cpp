#include "cpdirac/spectrum.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace cpdirac {

std::vector<std::complex<double>> eig_general(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument("eig_general: need a nonempty square matrix");
  }
  const lapack_int n = static_cast<lapack_int>(m.rows());
  Eigen::MatrixXd a = m;  // dgeev overwrites
  std::vector<double> wr(n), wi(n);
  const lapack_int info =
      LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', n, a.data(), n, wr.data(),
                    wi.data(), nullptr, 1, nullptr, 1);
  if (info < 0) {
    throw std::invalid_argument("eig_general: bad argument to dgeev");
  }
  if (info > 0) {
    throw EigenSolveError(
        "eig_general: the QR algorithm failed to converge (info=" +
        std::to_string(info) + ")");
  }
  std::vector<std::complex<double>> ev(n);
  for (lapack_int i = 0; i < n; ++i) ev[i] = {wr[i], wi[i]};
  std::sort(ev.begin(), ev.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return ev;
}

std::vector<double> eig_symmetric(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument("eig_symmetric: need a nonempty square matrix");
  }
  const lapack_int n = static_cast<lapack_int>(m.rows());
  Eigen::MatrixXd a = m;
  std::vector<double> w(n);
  const lapack_int info =
      LAPACKE_dsyev(LAPACK_COL_MAJOR, 'N', 'L', n, a.data(), n, w.data());
  if (info != 0) {
    throw EigenSolveError("eig_symmetric: dsyev failed (info=" +
                          std::to_string(info) + ")");
  }
  return w;
}

namespace {

EnergySpectrum classify(std::vector<std::complex<double>> ev, double tol) {
  EnergySpectrum s;
  s.eigenvalues = std::move(ev);
  s.reality_tol = tol;
  for (const auto& e : s.eigenvalues) {
    const double im = std::abs(e.imag());
    s.max_imag = std::max(s.max_imag, im);
    if (im <= tol * std::max(1.0, std::abs(e.real()))) ++s.n_real;
  }
  return s;
}

}  // namespace

EnergySpectrum spectrum(const DiscreteDiracOperator& op, double reality_tol) {
  if (reality_tol < 0.0) {
    reality_tol = std::max(1e-8, 10.0 * op.grid.h * op.grid.h);
  }
  return classify(eig_general(op.matrix), reality_tol);
}

EnergySpectrum spectrum_of_matrix(const Eigen::MatrixXd& m,
                                  double reality_tol) {
  return classify(eig_general(m), reality_tol);
}

RealitySummary reality_report(const EnergySpectrum& spec, double tol,
                              double bulk_cutoff) {
  RealitySummary r;
  r.n_total = static_cast<int>(spec.eigenvalues.size());
  r.reality_tol = tol;
  r.bulk_cutoff = bulk_cutoff;
  for (const auto& e : spec.eigenvalues) {
    const double im = std::abs(e.imag());
    r.max_imag_all = std::max(r.max_imag_all, im);
    if (im <= tol * std::max(1.0, std::abs(e.real()))) {
      ++r.n_real;
    } else {
      r.outliers.push_back(e);
    }
    if (std::abs(e.real()) <= bulk_cutoff) {
      ++r.n_bulk;
      r.max_imag_bulk = std::max(r.max_imag_bulk, im);
    }
  }
  // a real matrix has a conjugation-closed eigenvalue multiset; report the
  // worst match distance
  for (const auto& e : spec.eigenvalues) {
    const std::complex<double> target = std::conj(e);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& f : spec.eigenvalues) {
      best = std::min(best, std::abs(f - target));
    }
    r.pairing_residual = std::max(r.pairing_residual, best);
  }
  return r;
}

}  // namespace cpdirac
