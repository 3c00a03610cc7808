// cpdirac: CP-symmetric two-component Dirac Hamiltonians in 1+1D.
// Subcommands: catalog, symmetry, spectrum, solve, fig1, fig2, verify.
// Curves go out as CSV, reports as JSON, matrices as Matrix Market; outputs
// are written atomically and are byte-reproducible for identical configs.

#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cpdirac/hamiltonian.hpp"
#include "cpdirac/io.hpp"
#include "cpdirac/potential.hpp"
#include "cpdirac/solver.hpp"
#include "cpdirac/spectrum.hpp"
#include "cpdirac/symmetry.hpp"
#include "cpdirac/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace cpdirac;

namespace {

struct RunConfig {
  std::string command;
  std::string family = "exp";
  double amplitude = -1.0;
  double mu = 0.2;
  int n = 0;
  double mass = 1.0;
  std::vector<double> energies;
  double grid_half_width = 0.0;  // 0 = auto
  int grid_nodes = 400;
  std::string bc = "1,0";
  double window = 0.0;  // 0 = auto
  double tol = 1e-9;
  std::vector<std::string> routes;
  std::string out;
  std::string json_out;
  bool envelope = false;
  std::string export_matrix;
  std::string inject_fault;
  std::string panel = "a";
};

json config_to_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["family"] = c.family;
  j["A"] = c.amplitude;
  j["mu"] = c.mu;
  j["n"] = c.n;
  j["mass"] = c.mass;
  j["energy"] = c.energies;
  j["grid"] = {{"L", c.grid_half_width}, {"N", c.grid_nodes}};
  j["bc"] = c.bc;
  j["window"] = c.window;
  j["tol"] = c.tol;
  j["routes"] = c.routes;
  j["out"] = c.out;
  j["json"] = c.json_out;
  j["envelope"] = c.envelope;
  j["export_matrix"] = c.export_matrix;
  j["inject_fault"] = c.inject_fault;
  j["panel"] = c.panel;
  return j;
}

void config_from_json(const json& j, RunConfig& c) {
  if (j.contains("family")) c.family = j["family"].get<std::string>();
  if (j.contains("A")) c.amplitude = j["A"].get<double>();
  if (j.contains("mu")) c.mu = j["mu"].get<double>();
  if (j.contains("n")) c.n = j["n"].get<int>();
  if (j.contains("mass")) c.mass = j["mass"].get<double>();
  if (j.contains("energy")) c.energies = j["energy"].get<std::vector<double>>();
  if (j.contains("grid")) {
    if (j["grid"].contains("L")) c.grid_half_width = j["grid"]["L"].get<double>();
    if (j["grid"].contains("N")) c.grid_nodes = j["grid"]["N"].get<int>();
  }
  if (j.contains("bc")) c.bc = j["bc"].get<std::string>();
  if (j.contains("window")) c.window = j["window"].get<double>();
  if (j.contains("tol")) c.tol = j["tol"].get<double>();
  if (j.contains("routes")) c.routes = j["routes"].get<std::vector<std::string>>();
  if (j.contains("out")) c.out = j["out"].get<std::string>();
  if (j.contains("json")) c.json_out = j["json"].get<std::string>();
  if (j.contains("envelope")) c.envelope = j["envelope"].get<bool>();
  if (j.contains("export_matrix"))
    c.export_matrix = j["export_matrix"].get<std::string>();
  if (j.contains("inject_fault"))
    c.inject_fault = j["inject_fault"].get<std::string>();
  if (j.contains("panel")) c.panel = j["panel"].get<std::string>();
}

fs::path out_dir() {
  if (const char* env = std::getenv("CPDIRAC_OUT_DIR")) return fs::path(env);
  return fs::path(".");
}

fs::path resolve_out(const std::string& name, const std::string& fallback) {
  const std::string chosen = name.empty() ? fallback : name;
  fs::path p(chosen);
  if (p.is_absolute()) return p;
  return out_dir() / p;
}

BoundaryConditionAtOrigin parse_bc(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw CLI::ValidationError("--bc", "expected two comma-separated reals");
  }
  BoundaryConditionAtOrigin bc;
  bc.chi_plus_0 = std::stod(text.substr(0, comma));
  bc.chi_minus_0 = std::stod(text.substr(comma + 1));
  return bc;
}

PotentialInstance potential_from(const RunConfig& c) {
  return make_potential(family_from_name(c.family), c.amplitude, c.mu, c.n);
}

double resolve_window(const RunConfig& c, const PotentialInstance& p) {
  if (c.window > 0.0) return c.window;
  return envelope_box_half_width(p);
}

double resolve_grid_width(const RunConfig& c, const PotentialInstance& p) {
  if (c.grid_half_width > 0.0) return c.grid_half_width;
  return envelope_box_half_width(p);
}

json provenance(const RunConfig& c, const PotentialInstance& p, double window,
                double energy) {
  json j;
  j["config"] = config_to_json(c);
  j["potential"] = p.label();
  j["conforming"] = p.conforming;
  j["window"] = window;
  j["energy"] = energy;
  j["bc"] = c.bc;
  j["localization"] = [&] {
    switch (classify_localization(p)) {
      case Localization::Localized: return "localized";
      case Localization::NonLocalized: return "non-localized";
      default: return "indeterminate";
    }
  }();
  return j;
}

int run_catalog(const RunConfig& c) {
  std::printf("%-11s %-19s %-28s %s\n", "family", "subclass", "W(x)", "remarks");
  for (const auto& row : catalog()) {
    std::printf("%-11s %-19s %-28s %s\n", row.name.c_str(),
                row.subclass == Subclass::OddParity ? "odd-parity"
                                                    : "no-definite-parity",
                row.w_tex.c_str(), row.remark.c_str());
  }
  if (!c.json_out.empty()) {
    const fs::path p = resolve_out(c.json_out, "catalog.json");
    write_text_atomic(p, catalog_json());
    std::printf("wrote %s\n", p.c_str());
  }
  return 0;
}

int run_symmetry(const RunConfig& c) {
  const PotentialInstance p = potential_from(c);
  const GridSpec grid = build_grid(resolve_grid_width(c, p), c.grid_nodes);
  const DiscreteDiracOperator op = build_cp_class(grid, c.mass, p);
  const SymmetryReport rep = symmetry_report(op);
  const std::string text = symmetry_report_json(rep);
  const fs::path path = resolve_out(c.json_out.empty() ? c.out : c.json_out,
                                    "symmetry.json");
  write_text_atomic(path, text);
  std::printf("%s", text.c_str());
  std::printf("wrote %s\n", path.c_str());
  if (!c.export_matrix.empty()) {
    const fs::path m = resolve_out(c.export_matrix, "hamiltonian.mtx");
    write_text_atomic(m, matrix_market(op.matrix));
    std::printf("wrote %s\n", m.c_str());
  }
  return 0;
}

int run_spectrum(const RunConfig& c) {
  const PotentialInstance p = potential_from(c);
  const GridSpec grid = build_grid(resolve_grid_width(c, p), c.grid_nodes);
  const DiscreteDiracOperator op = build_cp_class(grid, c.mass, p);
  EnergySpectrum spec;
  if (c.envelope) {
    const auto rho = [&p](double x) { return p.rho(x); };
    const double cond = envelope_condition_number(op, rho);
    std::printf("envelope similarity condition estimate: %s\n",
                format_double(cond).c_str());
    spec = spectrum_of_matrix(envelope_similarity(op, rho),
                              std::max(1e-8, 10.0 * grid.h * grid.h));
  } else {
    spec = spectrum(op);
  }
  const RealitySummary sum =
      reality_report(spec, spec.reality_tol, 0.5 / grid.h);
  const fs::path spath = resolve_out(c.out, "spectrum.json");
  write_text_atomic(spath, spectrum_json(spec));
  const fs::path rpath = resolve_out(
      c.json_out, spath.stem().string() + ".reality.json");
  write_text_atomic(rpath, reality_summary_json(sum));
  std::printf("2N=%d eigenvalues, %d real at tol %s; bulk |Im| max %s "
              "(cutoff %s), pairing residual %s\n",
              sum.n_total, sum.n_real, format_double(sum.reality_tol).c_str(),
              format_double(sum.max_imag_bulk).c_str(),
              format_double(sum.bulk_cutoff).c_str(),
              format_double(sum.pairing_residual).c_str());
  std::printf("wrote %s\nwrote %s\n", spath.c_str(), rpath.c_str());
  if (!c.export_matrix.empty()) {
    const fs::path m = resolve_out(c.export_matrix, "hamiltonian.mtx");
    write_text_atomic(m, matrix_market(op.matrix));
    std::printf("wrote %s\n", m.c_str());
  }
  return 0;
}

int solve_and_write(const RunConfig& c, const PotentialInstance& p,
                    double energy, const std::string& base) {
  const BoundaryConditionAtOrigin bc = parse_bc(c.bc);
  const double window = resolve_window(c, p);
  std::vector<Route> routes;
  for (const auto& r : c.routes) routes.push_back(route_from_name(r));
  if (routes.empty()) routes.push_back(default_route(p));

  SolveOptions opts;
  opts.tol = c.tol;
  opts.n_samples = c.grid_nodes + 1 - (c.grid_nodes % 2);

  std::vector<SpinorSolution> solutions;
  for (Route r : routes) {
    solutions.push_back(solve_route(p, c.mass, energy, bc, window, r, opts));
  }
  for (size_t i = 0; i < solutions.size(); ++i) {
    std::string name = base;
    if (solutions.size() > 1) {
      name += "." + std::string(route_name(routes[i]));
    }
    const fs::path path = resolve_out(c.out.empty() ? name + ".csv" : (
        solutions.size() > 1 ? name + ".csv" : c.out), name + ".csv");
    write_text_atomic(path, solution_csv(solutions[i]));
    std::printf("wrote %s (route %s%s)\n", path.c_str(),
                std::string(route_name(routes[i])).c_str(),
                solutions[i].envelope_clamped ? ", envelope clamped" : "");
  }
  const fs::path sidecar = resolve_out(base + ".provenance.json", "");
  write_text_atomic(sidecar,
                    provenance(c, p, window, energy).dump(2) + "\n");
  std::printf("wrote %s\n", sidecar.c_str());

  if (solutions.size() > 1) {
    json devs = json::array();
    for (size_t i = 1; i < solutions.size(); ++i) {
      const double d = max_relative_deviation(solutions[0], solutions[i]);
      devs.push_back({{"route_a", route_name(routes[0])},
                      {"route_b", route_name(routes[i])},
                      {"max_relative_deviation", d}});
      std::printf("deviation %s vs %s: %s\n",
                  std::string(route_name(routes[0])).c_str(),
                  std::string(route_name(routes[i])).c_str(),
                  format_double(d).c_str());
    }
    const fs::path dpath = resolve_out(base + ".deviations.json", "");
    write_text_atomic(dpath, devs.dump(2) + "\n");
    std::printf("wrote %s\n", dpath.c_str());
  }
  return 0;
}

int run_solve(const RunConfig& c) {
  const PotentialInstance p = potential_from(c);
  if (c.energies.empty()) {
    throw CLI::ValidationError("--energy", "at least one energy is required");
  }
  int rc = 0;
  for (double e : c.energies) {
    std::string base = "solve_" + c.family + "_eps" + format_double(e);
    for (auto& ch : base) {
      if (ch == '.') ch = 'p';
    }
    rc |= solve_and_write(c, p, e * c.mass, base);
  }
  return rc;
}

int run_fig(const RunConfig& c, int which) {
  RunConfig cfg = c;
  // figure-caption parameters; the window follows the envelope heuristic
  if (which == 1) {
    cfg.family = "exp";
    cfg.amplitude = -1.0;
    cfg.mu = 0.2;
  } else {
    cfg.family = "lorentzian";
    cfg.amplitude = 1.0;
    cfg.mu = 0.5;
  }
  cfg.mass = 1.0;
  const double magnitude = which == 1 ? 2.0 : 1.5;
  const double energy = (cfg.panel == "a" ? magnitude : -magnitude) * cfg.mass;
  const PotentialInstance p = potential_from(cfg);
  const std::string base = "fig" + std::to_string(which) + cfg.panel;
  return solve_and_write(cfg, p, energy, base);
}

int run_verify(const RunConfig& c) {
  VerifyConfig vc = VerifyConfig::defaults();
  if (!c.inject_fault.empty()) {
    if (c.inject_fault == "cp-wiring") {
      vc.fault = FaultInjection::CpWiring;
    } else {
      throw CLI::ValidationError("--inject-fault",
                                 "unknown fault '" + c.inject_fault +
                                     "' (known: cp-wiring)");
    }
  }
  const VerificationReport report = run_suite(vc);
  for (const auto& e : report.entries) {
    std::printf("[%s] %s (defect %s, tol %s)\n",
                e.skipped ? "SKIP" : (e.pass ? "PASS" : "FAIL"),
                e.name.c_str(), format_double(e.defect).c_str(),
                format_double(e.tolerance).c_str());
  }
  std::printf("%d passed, %d failed%s\n", report.n_pass(), report.n_fail(),
              report.empty ? " (empty family list, vacuous)" : "");
  if (!c.json_out.empty()) {
    const fs::path path = resolve_out(c.json_out, "verify.json");
    write_text_atomic(path, verification_report_json(report));
    std::printf("wrote %s\n", path.c_str());
  }
  return report.overall ? 0 : 1;
}

void add_common(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--family", c.family, "potential family (see `catalog`)");
  cmd->add_option("--A", c.amplitude, "coupling strength A (units of mass)");
  cmd->add_option("--mu", c.mu, "inverse length scale (units of mass)");
  cmd->add_option("--n", c.n, "odd-power family exponent index");
  cmd->add_option("--mass", c.mass, "fermion mass m")->capture_default_str();
  cmd->add_option("--energy", c.energies, "energy (units of mass); repeatable");
  cmd->add_option("--grid-L", c.grid_half_width,
                  "box half-width (default: envelope heuristic)");
  cmd->add_option("--grid-N", c.grid_nodes, "interior nodes per component")
      ->capture_default_str();
  cmd->add_option("--bc", c.bc, "origin boundary values chi+(0),chi-(0)")
      ->capture_default_str();
  cmd->add_option("--window", c.window,
                  "solution window half-width (default: auto)");
  cmd->add_option("--tol", c.tol, "integration tolerance")
      ->capture_default_str();
  cmd->add_option("--out", c.out, "output file");
  cmd->add_option("--json", c.json_out, "JSON report output file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-Hermitian CP-symmetric Dirac Hamiltonians in 1+1D: "
               "spectra, symmetry reports, and stationary solutions"};
  app.require_subcommand(1);

  RunConfig cfg;

  // --config JSON preloads defaults; explicit flags override
  std::string config_file;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") config_file = argv[i + 1];
  }
  if (!config_file.empty()) {
    std::ifstream in(config_file);
    if (!in) {
      std::cerr << "cannot read config file " << config_file << "\n";
      return 1;
    }
    try {
      config_from_json(json::parse(in), cfg);
    } catch (const json::exception& e) {
      std::cerr << "bad config file " << config_file << ": " << e.what()
                << "\n";
      return 1;
    }
  }

  auto* cat = app.add_subcommand("catalog", "list the potential families");
  cat->add_option("--json", cfg.json_out, "write the catalog as JSON");

  auto* sym = app.add_subcommand(
      "symmetry", "Hermiticity/CP/PT/gamma5 defects of the assembled operator");
  add_common(sym, cfg);
  sym->add_option("--export-matrix", cfg.export_matrix,
                  "also write the operator in Matrix Market format");

  auto* spec = app.add_subcommand("spectrum",
                                  "eigenvalues and reality summary");
  add_common(spec, cfg);
  spec->add_flag("--envelope", cfg.envelope,
                 "apply the envelope similarity transform first");
  spec->add_option("--export-matrix", cfg.export_matrix,
                   "also write the operator in Matrix Market format");

  auto* sol = app.add_subcommand("solve", "stationary spinor solutions");
  add_common(sol, cfg);
  sol->add_option("--route", cfg.routes,
                  "first-order | second-order-positive | "
                  "second-order-negative | phi | closed-form; repeatable");

  auto* f1 = app.add_subcommand(
      "fig1", "exponential-family solution data (A=-1, mu=0.2, eps=+-2)");
  add_common(f1, cfg);
  f1->add_option("--panel", cfg.panel, "a (positive energy) or b (negative)")
      ->check(CLI::IsMember({"a", "b"}));

  auto* f2 = app.add_subcommand(
      "fig2", "rational-family |chi| data (A=1, mu=0.5, eps=+-1.5)");
  add_common(f2, cfg);
  f2->add_option("--panel", cfg.panel, "a (positive energy) or b (negative)")
      ->check(CLI::IsMember({"a", "b"}));

  auto* ver = app.add_subcommand("verify", "run the cross-validation suite");
  ver->add_option("--json", cfg.json_out, "write the report as JSON");
  ver->add_option("--inject-fault", cfg.inject_fault,
                  "deliberately mis-wire a check (cp-wiring)");

  for (auto* cmd : {sym, spec, sol, f1, f2}) {
    cmd->add_option("--config", config_file,
                    "JSON config file (flags override)");
  }
  ver->add_option("--config", config_file, "JSON config file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cat->parsed()) { cfg.command = "catalog"; return run_catalog(cfg); }
    if (sym->parsed()) { cfg.command = "symmetry"; return run_symmetry(cfg); }
    if (spec->parsed()) { cfg.command = "spectrum"; return run_spectrum(cfg); }
    if (sol->parsed()) { cfg.command = "solve"; return run_solve(cfg); }
    if (f1->parsed()) { cfg.command = "fig1"; return run_fig(cfg, 1); }
    if (f2->parsed()) { cfg.command = "fig2"; return run_fig(cfg, 2); }
    if (ver->parsed()) { cfg.command = "verify"; return run_verify(cfg); }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
