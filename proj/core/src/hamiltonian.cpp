#include "cpdirac/hamiltonian.hpp"

#include <cmath>
#include <sstream>

namespace cpdirac {

bool DiscreteDiracOperator::scalar_vector_free() const {
  for (double s : s_nodes)
    if (s != 0.0) return false;
  for (double v : v_nodes)
    if (v != 0.0) return false;
  return true;
}

Eigen::MatrixXd central_difference_matrix(const GridSpec& grid) {
  const int n = grid.N;
  const double c = 1.0 / (2.0 * grid.h);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    d(i, i + 1) = c;
    d(i + 1, i) = -c;
  }
  return d;
}

GridSpec build_grid(double half_width, int n_interior) {
  return GridSpec::build(half_width, n_interior);
}

namespace {

std::vector<double> sample_field(const ScalarField& f, const GridSpec& grid,
                                 const char* name) {
  std::vector<double> out(grid.N);
  for (int i = 0; i < grid.N; ++i) {
    out[i] = f(grid.nodes[i]);
    if (!std::isfinite(out[i])) {
      std::ostringstream os;
      os << "build_hamiltonian: " << name << " is not finite at node i=" << i
         << " (x=" << grid.nodes[i] << ")";
      throw std::invalid_argument(os.str());
    }
  }
  return out;
}

DiscreteDiracOperator assemble(const GridSpec& grid, double mass,
                               std::vector<double> s, std::vector<double> v,
                               std::vector<double> w, std::vector<double> u,
                               std::string source) {
  const int n = grid.N;
  DiscreteDiracOperator op;
  op.grid = grid;
  op.mass = mass;
  op.matrix = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  const double c = 1.0 / (2.0 * grid.h);
  for (int i = 0; i < n; ++i) {
    op.matrix(i, i) = mass + s[i] + v[i];
    op.matrix(n + i, n + i) = -mass - s[i] + v[i];
    op.matrix(i, n + i) = w[i];       // diag of  D + W
    op.matrix(n + i, i) = u[i];       // diag of -D + U
  }
  for (int i = 0; i + 1 < n; ++i) {
    op.matrix(i, n + i + 1) = c;      // D in the upper-right block
    op.matrix(i + 1, n + i) = -c;
    op.matrix(n + i, i + 1) = -c;     // -D in the lower-left block
    op.matrix(n + i + 1, i) = c;
  }
  op.s_nodes = std::move(s);
  op.v_nodes = std::move(v);
  op.w_nodes = std::move(w);
  op.u_nodes = std::move(u);
  op.source = std::move(source);
  return op;
}

}  // namespace

DiscreteDiracOperator build_hamiltonian(const GridSpec& grid, double mass,
                                        const ScalarField& s,
                                        const ScalarField& v,
                                        const ScalarField& w,
                                        const ScalarField& u) {
  if (!grid.is_symmetric()) {
    throw std::invalid_argument("build_hamiltonian: grid is not symmetric");
  }
  if (!std::isfinite(mass)) {
    throw std::invalid_argument("build_hamiltonian: mass must be finite");
  }
  return assemble(grid, mass, sample_field(s, grid, "S"),
                  sample_field(v, grid, "V"), sample_field(w, grid, "W"),
                  sample_field(u, grid, "U"), "generic");
}

DiscreteDiracOperator build_cp_class(const GridSpec& grid, double mass,
                                     const PotentialInstance& p) {
  if (!grid.is_symmetric()) {
    throw std::invalid_argument("build_cp_class: grid is not symmetric");
  }
  const int n = grid.N;
  std::vector<double> w =
      sample_field([&p](double x) { return p.w(x); }, grid, "W");
  std::vector<double> u(n);
  for (int i = 0; i < n; ++i) u[i] = w[grid.mirror(i)];  // U_i = W(-x_i), exact
  return assemble(grid, mass, std::vector<double>(n, 0.0),
                  std::vector<double>(n, 0.0), std::move(w), std::move(u),
                  p.label());
}

namespace {

std::vector<double> sample_rho(const DiscreteDiracOperator& op,
                               const ScalarField& rho) {
  const int n = op.grid.N;
  std::vector<double> r(n);
  for (int i = 0; i < n; ++i) {
    r[i] = rho(op.grid.nodes[i]);
    if (!std::isfinite(r[i]) || std::abs(r[i]) > 1400.0) {
      std::ostringstream os;
      os << "envelope exp(-rho/2) leaves the representable range at node x="
         << op.grid.nodes[i] << " (rho=" << r[i]
         << "); use a smaller box half-width or rescaled parameters";
      throw EnvelopeRangeError(os.str());
    }
  }
  return r;
}

}  // namespace

Eigen::MatrixXd envelope_similarity(const DiscreteDiracOperator& op,
                                    const ScalarField& rho) {
  const int n = op.grid.N;
  const std::vector<double> r = sample_rho(op, rho);
  // (E^{-1} H E)_{ij} = H_{ij} exp((rho_i - rho_j)/2), rho replicated over
  // the two spinor blocks; computed from exponent differences so only the
  // band's local variation enters
  Eigen::MatrixXd out = op.matrix;
  const int dim = 2 * n;
  for (int i = 0; i < dim; ++i) {
    const double ri = r[i % n];
    for (int j = 0; j < dim; ++j) {
      if (out(i, j) == 0.0) continue;
      const double rj = r[j % n];
      if (ri != rj) out(i, j) *= std::exp(0.5 * (ri - rj));
    }
  }
  return out;
}

double envelope_condition_number(const DiscreteDiracOperator& op,
                                 const ScalarField& rho) {
  const std::vector<double> r = sample_rho(op, rho);
  double lo = r[0], hi = r[0];
  for (double v : r) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return std::exp(0.5 * (hi - lo));
}

}  // namespace cpdirac
