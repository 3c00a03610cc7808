#pragma once

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cpdirac/grid.hpp"
#include "cpdirac/potential.hpp"

namespace cpdirac {

class EnvelopeRangeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite-difference realization of the two-component Dirac Hamiltonian
///
///   [ (m+S+V) I     D + diag(W) ]
///   [ -D + diag(U)  (-m-S+V) I  ]
///
/// on the interior nodes of a symmetric grid (Dirichlet box), with D the
/// exactly antisymmetric central-difference matrix.  Global ordering is
/// (upper component at all nodes, then lower component at all nodes).
struct DiscreteDiracOperator {
  Eigen::MatrixXd matrix;  // 2N x 2N, real
  GridSpec grid;
  double mass = 0.0;
  std::vector<double> s_nodes, v_nodes, w_nodes, u_nodes;
  std::string source;  // which potential was sampled

  int dim() const { return 2 * grid.N; }
  double scale() const { return matrix.cwiseAbs().maxCoeff(); }
  bool scalar_vector_free() const;  // S = V = 0 on all nodes
};

/// N x N central-difference first-derivative matrix (exactly antisymmetric).
Eigen::MatrixXd central_difference_matrix(const GridSpec& grid);

GridSpec build_grid(double half_width, int n_interior);

using ScalarField = std::function<double(double)>;

/// Assembles the general four-potential Hamiltonian.  Throws
/// std::invalid_argument naming the offending node if any sample is
/// non-finite.
DiscreteDiracOperator build_hamiltonian(const GridSpec& grid, double mass,
                                        const ScalarField& s,
                                        const ScalarField& v,
                                        const ScalarField& w,
                                        const ScalarField& u);

/// The CP-symmetric class: S = V = 0, U sampled as W at the mirrored node so
/// that the mirror identity U_i = W(-x_i) holds bit-exactly on the grid.
DiscreteDiracOperator build_cp_class(const GridSpec& grid, double mass,
                                     const PotentialInstance& p);

/// Exact diagonal similarity E^{-1} H E with E = diag(exp(-rho(x_i)/2))
/// replicated over both spinor blocks.  Eigenvalues are preserved to
/// rounding.  Throws EnvelopeRangeError when exp(±rho/2) leaves the
/// representable range at some node.
Eigen::MatrixXd envelope_similarity(const DiscreteDiracOperator& op,
                                    const ScalarField& rho);

/// cond(E) estimate exp((max rho - min rho)/2) for the similarity above.
double envelope_condition_number(const DiscreteDiracOperator& op,
                                 const ScalarField& rho);

}  // namespace cpdirac
