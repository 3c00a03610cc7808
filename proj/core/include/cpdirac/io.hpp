#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <string_view>

#include "cpdirac/solver.hpp"
#include "cpdirac/spectrum.hpp"
#include "cpdirac/symmetry.hpp"

namespace cpdirac {

/// 17 significant digits, '.' decimal separator, no locale surprises:
/// identical inputs give byte-identical text.
std::string format_double(double v);

/// Writes via a temporary file in the same directory plus rename, so readers
/// never observe a partial file.
void write_text_atomic(const std::filesystem::path& path,
                       std::string_view content);

/// CSV with header x,re_chi_plus,im_chi_plus,re_chi_minus,im_chi_minus,abs_chi
/// (abs_chi = sqrt(|chi+|^2 + |chi-|^2)) and \n line endings.
std::string solution_csv(const SpinorSolution& sol);

std::string spectrum_json(const EnergySpectrum& spec);
std::string reality_summary_json(const RealitySummary& summary);
std::string symmetry_report_json(const SymmetryReport& report);

/// The nine-row family table as a JSON array of
/// {family, subclass, constraints, localized, w_tex, rho_tex, r_tex}.
std::string catalog_json();

/// Matrix Market coordinate format, real general, 1-based indices,
/// row-major nonzero order.
std::string matrix_market(const Eigen::MatrixXd& m);

}  // namespace cpdirac
