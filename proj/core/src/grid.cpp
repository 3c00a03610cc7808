#include "cpdirac/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cpdirac {

GridSpec GridSpec::build(double half_width, int n_interior) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw std::invalid_argument("GridSpec: box half-width must be positive, got " +
                                std::to_string(half_width));
  }
  if (n_interior < 3) {
    throw std::invalid_argument("GridSpec: need at least 3 interior nodes, got " +
                                std::to_string(n_interior));
  }
  GridSpec g;
  g.L = half_width;
  g.N = n_interior;
  const double step = half_width / (n_interior + 1);
  g.h = 2.0 * step;
  g.nodes.resize(n_interior);
  for (int i = 0; i < n_interior; ++i) {
    g.nodes[i] = static_cast<double>(2 * i + 1 - n_interior) * step;
  }
  return g;
}

bool GridSpec::is_symmetric() const {
  if (static_cast<int>(nodes.size()) != N) return false;
  for (int i = 0; i < N; ++i) {
    if (nodes[i] != -nodes[N - 1 - i]) return false;
  }
  return true;
}

}  // namespace cpdirac
