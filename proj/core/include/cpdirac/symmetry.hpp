#pragma once

#include <Eigen/Dense>

#include "cpdirac/grid.hpp"
#include "cpdirac/hamiltonian.hpp"

namespace cpdirac {

/// Charge conjugation on the discrete two-component space: the block matrix
/// [[0, -I], [I, 0]].  Squares to -Identity and C^T = -C.
Eigen::MatrixXd charge_conjugation_matrix(int n_nodes);

/// Space parity: node-mirroring permutation within each spinor block.
/// Squares to Identity.  Throws on an asymmetric grid.
Eigen::MatrixXd parity_matrix(const GridSpec& grid);

/// The composed operator CP = C.P (= P.C; the two commute).
Eigen::MatrixXd cp_matrix(const GridSpec& grid);

/// Signed-permutation conjugations, entrywise-exact and O(dim^2).  Each
/// equals the corresponding explicit matrix product.
Eigen::MatrixXd gamma5_conjugate_matrix(const Eigen::MatrixXd& m);  // C M C
Eigen::MatrixXd parity_conjugate(const Eigen::MatrixXd& m);         // P M P
Eigen::MatrixXd cp_conjugate(const Eigen::MatrixXd& m);   // (CP) M (CP)

/// gamma5 conjugation of a Hamiltonian of the S = V = 0 class; the result
/// equals [[m, -D + diag(U)], [D + diag(W), -m]] exactly (potential roles
/// swapped, derivative signs flipped).
Eigen::MatrixXd gamma5_conjugate(const DiscreteDiracOperator& op);

/// Entrywise max-norm defects of the symmetry identities.
struct SymmetryReport {
  double hermiticity_defect = 0.0;  // max |H - H^T|
  double cp_defect = 0.0;           // max |(CP) H (CP) - H|
  double pt_defect = 0.0;           // max |P conj(H) P - H|
  double gamma5_check = 0.0;        // max |C H C - block target|
  int matrix_dim = 0;
  double scale = 0.0;  // max-norm of H
  double grid_half_width = 0.0;
  int grid_nodes = 0;
};

SymmetryReport symmetry_report(const DiscreteDiracOperator& op);

double max_norm(const Eigen::MatrixXd& m);

}  // namespace cpdirac
