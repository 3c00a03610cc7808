#include "cpdirac/symmetry.hpp"

#include <cmath>
#include <stdexcept>

namespace cpdirac {

double max_norm(const Eigen::MatrixXd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

Eigen::MatrixXd charge_conjugation_matrix(int n_nodes) {
  if (n_nodes < 2) {
    throw std::invalid_argument("charge_conjugation_matrix: need n >= 2");
  }
  const int n = n_nodes;
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    c(i, n + i) = -1.0;
    c(n + i, i) = 1.0;
  }
  return c;
}

Eigen::MatrixXd parity_matrix(const GridSpec& grid) {
  if (!grid.is_symmetric()) {
    throw std::invalid_argument("parity_matrix: grid is not symmetric about 0");
  }
  const int n = grid.N;
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    p(i, n - 1 - i) = 1.0;
    p(n + i, 2 * n - 1 - i) = 1.0;
  }
  return p;
}

Eigen::MatrixXd cp_matrix(const GridSpec& grid) {
  return charge_conjugation_matrix(grid.N) * parity_matrix(grid);
}

Eigen::MatrixXd gamma5_conjugate_matrix(const Eigen::MatrixXd& m) {
  const int dim = static_cast<int>(m.rows());
  if (dim % 2 != 0 || m.cols() != dim) {
    throw std::invalid_argument("gamma5_conjugate_matrix: need square 2N x 2N");
  }
  const int n = dim / 2;
  Eigen::MatrixXd out(dim, dim);
  // (C M C)[r][c] = -sign(r) sign(c) M[(r+N) mod 2N][(c+N) mod 2N],
  // sign(r) = -1 on the upper block, +1 on the lower
  for (int r = 0; r < dim; ++r) {
    const double sr = r < n ? -1.0 : 1.0;
    const int qr = (r + n) % dim;
    for (int c = 0; c < dim; ++c) {
      const double sc = c < n ? -1.0 : 1.0;
      out(r, c) = -sr * sc * m(qr, (c + n) % dim);
    }
  }
  return out;
}

Eigen::MatrixXd parity_conjugate(const Eigen::MatrixXd& m) {
  const int dim = static_cast<int>(m.rows());
  if (dim % 2 != 0 || m.cols() != dim) {
    throw std::invalid_argument("parity_conjugate: need square 2N x 2N");
  }
  const int n = dim / 2;
  const auto mir = [n](int r) { return r < n ? n - 1 - r : 3 * n - 1 - r; };
  Eigen::MatrixXd out(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      out(r, c) = m(mir(r), mir(c));
    }
  }
  return out;
}

Eigen::MatrixXd cp_conjugate(const Eigen::MatrixXd& m) {
  const int dim = static_cast<int>(m.rows());
  if (dim % 2 != 0 || m.cols() != dim) {
    throw std::invalid_argument("cp_conjugate: need square 2N x 2N");
  }
  const int n = dim / 2;
  Eigen::MatrixXd out(dim, dim);
  // (CP) M (CP)[r][c] = -sign(r) sign(c) M[dim-1-r][dim-1-c]
  for (int r = 0; r < dim; ++r) {
    const double sr = r < n ? -1.0 : 1.0;
    for (int c = 0; c < dim; ++c) {
      const double sc = c < n ? -1.0 : 1.0;
      out(r, c) = -sr * sc * m(dim - 1 - r, dim - 1 - c);
    }
  }
  return out;
}

Eigen::MatrixXd gamma5_conjugate(const DiscreteDiracOperator& op) {
  if (!op.scalar_vector_free()) {
    throw std::invalid_argument(
        "gamma5_conjugate: implemented for the S = V = 0 class only");
  }
  return gamma5_conjugate_matrix(op.matrix);
}

namespace {

// Block target [[m, -D + diag(U)], [D + diag(W), -m]] that gamma5
// conjugation must reproduce for the S = V = 0 class.
Eigen::MatrixXd swapped_role_target(const DiscreteDiracOperator& op) {
  const int n = op.grid.N;
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  const double c = 1.0 / (2.0 * op.grid.h);
  for (int i = 0; i < n; ++i) {
    t(i, i) = op.mass;
    t(n + i, n + i) = -op.mass;
    t(i, n + i) = op.u_nodes[i];
    t(n + i, i) = op.w_nodes[i];
  }
  for (int i = 0; i + 1 < n; ++i) {
    t(i, n + i + 1) = -c;  // -D upper-right
    t(i + 1, n + i) = c;
    t(n + i, i + 1) = c;   // +D lower-left
    t(n + i + 1, i) = -c;
  }
  return t;
}

}  // namespace

SymmetryReport symmetry_report(const DiscreteDiracOperator& op) {
  const int dim = op.dim();
  if (op.matrix.rows() != dim || op.matrix.cols() != dim) {
    throw std::invalid_argument(
        "symmetry_report: matrix dimension does not match the grid");
  }
  SymmetryReport rep;
  rep.matrix_dim = dim;
  rep.scale = op.scale();
  rep.grid_half_width = op.grid.L;
  rep.grid_nodes = op.grid.N;
  rep.hermiticity_defect =
      max_norm(op.matrix - op.matrix.transpose().eval());
  rep.cp_defect = max_norm(cp_conjugate(op.matrix) - op.matrix);
  // T acts as entrywise complex conjugation, trivial on a real matrix, so
  // the PT defect reduces to the parity conjugation defect for this class
  rep.pt_defect = max_norm(parity_conjugate(op.matrix) - op.matrix);
  if (op.scalar_vector_free()) {
    rep.gamma5_check =
        max_norm(gamma5_conjugate_matrix(op.matrix) - swapped_role_target(op));
  } else {
    // gamma5 conjugation flips the sign of V on the diagonal; check against
    // the corrected block form so the defect stays an assembly check
    Eigen::MatrixXd t = swapped_role_target(op);
    const int n = op.grid.N;
    for (int i = 0; i < n; ++i) {
      t(i, i) = op.mass + op.s_nodes[i] - op.v_nodes[i];
      t(n + i, n + i) = -op.mass - op.s_nodes[i] - op.v_nodes[i];
    }
    rep.gamma5_check = max_norm(gamma5_conjugate_matrix(op.matrix) - t);
  }
  return rep;
}

}  // namespace cpdirac
