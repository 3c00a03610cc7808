#include "cpdirac/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "cpdirac/potential.hpp"

namespace cpdirac {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text_atomic(const std::filesystem::path& path,
                       std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : ".";
  fs::create_directories(dir);
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string solution_csv(const SpinorSolution& sol) {
  std::string out =
      "x,re_chi_plus,im_chi_plus,re_chi_minus,im_chi_minus,abs_chi\n";
  for (size_t i = 0; i < sol.xs.size(); ++i) {
    out += format_double(sol.xs[i]);
    out += ',';
    out += format_double(sol.chi_plus[i].real());
    out += ',';
    out += format_double(sol.chi_plus[i].imag());
    out += ',';
    out += format_double(sol.chi_minus[i].real());
    out += ',';
    out += format_double(sol.chi_minus[i].imag());
    out += ',';
    out += format_double(sol.abs_chi(static_cast<int>(i)));
    out += '\n';
  }
  return out;
}

namespace {

json complex_list(const std::vector<std::complex<double>>& values) {
  json arr = json::array();
  for (const auto& v : values) {
    arr.push_back({{"re", v.real()}, {"im", v.imag()}});
  }
  return arr;
}

}  // namespace

std::string spectrum_json(const EnergySpectrum& spec) {
  json j;
  j["eigenvalues"] = complex_list(spec.eigenvalues);
  j["reality_tol"] = spec.reality_tol;
  j["n_real"] = spec.n_real;
  j["max_imag"] = spec.max_imag;
  return j.dump(2) + "\n";
}

std::string reality_summary_json(const RealitySummary& s) {
  json j;
  j["n_total"] = s.n_total;
  j["n_real"] = s.n_real;
  j["n_bulk"] = s.n_bulk;
  j["reality_tol"] = s.reality_tol;
  j["bulk_cutoff"] = s.bulk_cutoff;
  j["max_imag_all"] = s.max_imag_all;
  j["max_imag_bulk"] = s.max_imag_bulk;
  j["pairing_residual"] = s.pairing_residual;
  j["outliers"] = complex_list(s.outliers);
  return j.dump(2) + "\n";
}

std::string symmetry_report_json(const SymmetryReport& r) {
  json j;
  j["hermiticity_defect"] = r.hermiticity_defect;
  j["cp_defect"] = r.cp_defect;
  j["pt_defect"] = r.pt_defect;
  j["gamma5_check"] = r.gamma5_check;
  j["matrix_dim"] = r.matrix_dim;
  j["scale"] = r.scale;
  j["grid"] = {{"L", r.grid_half_width}, {"N", r.grid_nodes}};
  return j.dump(2) + "\n";
}

std::string catalog_json() {
  json arr = json::array();
  for (const auto& row : catalog()) {
    arr.push_back({
        {"family", row.name},
        {"subclass", row.subclass == Subclass::OddParity
                         ? "odd-parity"
                         : "no-definite-parity"},
        {"constraints", row.constraint},
        {"localized", row.localized},
        {"w_tex", row.w_tex},
        {"rho_tex", row.rho_tex},
        {"r_tex", row.r_tex},
        {"remark", row.remark},
    });
  }
  return arr.dump(2) + "\n";
}

std::string matrix_market(const Eigen::MatrixXd& m) {
  std::string out = "%%MatrixMarket matrix coordinate real general\n";
  int nnz = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 0.0) ++nnz;
    }
  }
  out += std::to_string(m.rows()) + " " + std::to_string(m.cols()) + " " +
         std::to_string(nnz) + "\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) == 0.0) continue;
      out += std::to_string(i + 1) + " " + std::to_string(j + 1) + " " +
             format_double(m(i, j)) + "\n";
    }
  }
  return out;
}

}  // namespace cpdirac
