#pragma once

#include <vector>

namespace cpdirac {

/// Symmetric interior-node grid on [-L, L] with Dirichlet endpoints dropped.
///
/// Nodes are x_i = (2i + 1 - N) * (L / (N+1)) for i = 0..N-1, which makes the
/// mirror identity x_i == -x_{N-1-i} exact in floating point (negation of the
/// same product), spacing h = 2L/(N+1).
struct GridSpec {
  double L = 0.0;  // box half-width, units 1/m
  int N = 0;       // interior nodes per spinor component
  double h = 0.0;  // node spacing
  std::vector<double> nodes;

  static GridSpec build(double half_width, int n_interior);

  int mirror(int i) const { return N - 1 - i; }
  bool is_symmetric() const;
};

}  // namespace cpdirac
