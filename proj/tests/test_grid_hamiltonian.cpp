#include "doctest.h"

#include <cmath>

#include "cpdirac/hamiltonian.hpp"
#include "cpdirac/potential.hpp"
#include "cpdirac/symmetry.hpp"
#include "cpdirac/verify.hpp"

using namespace cpdirac;

namespace {
const ScalarField kZero = [](double) { return 0.0; };
}

TEST_SUITE("grid_hamiltonian") {

TEST_CASE("grid construction") {
  const GridSpec g = build_grid(1.0, 3);
  CHECK(g.h == 0.5);
  REQUIRE(g.nodes.size() == 3);
  CHECK(g.nodes[0] == -0.5);
  CHECK(g.nodes[1] == 0.0);
  CHECK(g.nodes[2] == 0.5);

  CHECK(build_grid(8.0, 400).h == 16.0 / 401.0);

  const GridSpec g5 = build_grid(2.7, 5);
  CHECK(g5.nodes[1] == -g5.nodes[3]);  // exact mirror
  CHECK(g5.is_symmetric());

  CHECK_THROWS_AS(build_grid(0.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(build_grid(-1.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(build_grid(1.0, 2), std::invalid_argument);
}

TEST_CASE("central difference matrix is exactly antisymmetric") {
  const GridSpec g = build_grid(3.0, 17);
  const Eigen::MatrixXd d = central_difference_matrix(g);
  CHECK(max_norm(d + d.transpose().eval()) == 0.0);
  CHECK(d(0, 1) == 1.0 / (2.0 * g.h));
}

TEST_CASE("free operator squares to the block oracle") {
  const GridSpec g = build_grid(2.0, 5);
  const double mass = 1.3;
  const auto op = build_hamiltonian(g, mass, kZero, kZero, kZero, kZero);
  const Eigen::MatrixXd d = central_difference_matrix(g);
  const Eigen::MatrixXd block =
      mass * mass * Eigen::MatrixXd::Identity(5, 5) - (d * d).eval();
  Eigen::MatrixXd oracle = Eigen::MatrixXd::Zero(10, 10);
  oracle.topLeftCorner(5, 5) = block;
  oracle.bottomRightCorner(5, 5) = block;
  CHECK(max_norm((op.matrix * op.matrix).eval() - oracle) <= 1e-14);
}

TEST_CASE("non-finite sample names the node") {
  const GridSpec g = build_grid(1.0, 3);  // nodes -0.5, 0, 0.5
  try {
    build_hamiltonian(g, 1.0, kZero, kZero,
                      [](double x) { return 1.0 / x; }, kZero);
    FAIL("expected invalid_argument");
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    CHECK(msg.find("W") != std::string::npos);
    CHECK(msg.find("i=1") != std::string::npos);
  }
}

TEST_CASE("cp-class wiring is bit-exact") {
  const GridSpec g = build_grid(4.0, 64);
  SUBCASE("odd potential gives U = -W on the nodes") {
    const auto op = build_cp_class(g, 1.0, default_instance(Family::Sinh));
    for (int i = 0; i < g.N; ++i) {
      CHECK(op.u_nodes[i] == -op.w_nodes[i]);
    }
  }
  SUBCASE("exp family: non-Hermitian yet CP-symmetric") {
    const auto op = build_cp_class(g, 1.0, default_instance(Family::Exp));
    const SymmetryReport rep = symmetry_report(op);
    CHECK(rep.hermiticity_defect > 0.1);
    CHECK(rep.cp_defect == 0.0);
    CHECK(rep.pt_defect > 0.0);
  }
  SUBCASE("zero potential reduces to the free operator") {
    const auto zero_w = PotentialInstance::custom([](double) { return 0.0; });
    const auto op = build_cp_class(g, 1.0, zero_w);
    const auto free_op = build_hamiltonian(g, 1.0, kZero, kZero, kZero, kZero);
    CHECK(max_norm(op.matrix - free_op.matrix) == 0.0);
  }
}

TEST_CASE("envelope similarity") {
  const PotentialInstance lin = default_instance(Family::OddPower);
  const auto rho = [&lin](double x) { return lin.rho(x); };

  SUBCASE("constant exponent leaves the matrix untouched") {
    const GridSpec g = build_grid(5.0, 40);
    const auto op = build_cp_class(g, 1.0, lin);
    const auto same = envelope_similarity(op, [](double) { return 7.25; });
    CHECK(max_norm(same - op.matrix) == 0.0);
  }

  SUBCASE("matches the explicit E^-1 H E product") {
    const GridSpec g = build_grid(5.0, 40);
    const auto op = build_cp_class(g, 1.0, lin);
    Eigen::VectorXd e(2 * g.N);
    for (int i = 0; i < g.N; ++i) {
      e(i) = std::exp(-0.5 * rho(g.nodes[i]));
      e(g.N + i) = e(i);
    }
    const Eigen::MatrixXd explicit_product =
        e.cwiseInverse().asDiagonal() * op.matrix * e.asDiagonal();
    const auto fast = envelope_similarity(op, rho);
    CHECK(max_norm(fast - explicit_product) <= 1e-13 * op.scale());
  }

  SUBCASE("condition estimate") {
    const GridSpec g = build_grid(6.0, 200);
    const auto op = build_cp_class(g, 1.0, lin);
    double lo = rho(g.nodes[0]), hi = lo;
    for (double x : g.nodes) {
      lo = std::min(lo, rho(x));
      hi = std::max(hi, rho(x));
    }
    CHECK(envelope_condition_number(op, rho) ==
          doctest::Approx(std::exp(0.5 * (hi - lo))).epsilon(1e-12));
  }

  SUBCASE("overflow guard advises a smaller box") {
    const PotentialInstance sh = default_instance(Family::Sinh);
    const GridSpec g = build_grid(15.0, 50);  // rho ~ 2 cosh(15) ~ 3e6
    const auto op = build_cp_class(g, 1.0, sh);
    CHECK_THROWS_AS(
        envelope_similarity(op, [&sh](double x) { return sh.rho(x); }),
        EnvelopeRangeError);
  }

  SUBCASE("transform is Hermitian to O(h^2) on smooth states") {
    // entrywise the defect stays O(1); applied to a smooth spinor it shrinks
    // at second order, which is the sense in which the continuum transform
    // removes the odd potential
    double defects[2];
    int idx = 0;
    for (int n : {100, 200}) {
      const GridSpec g = build_grid(6.0, n);
      const auto op = build_cp_class(g, 1.0, lin);
      const Eigen::MatrixXd tr = envelope_similarity(op, rho);
      const Eigen::MatrixXd defect = tr - tr.transpose().eval();
      Eigen::VectorXd v(2 * g.N);
      for (int i = 0; i < g.N; ++i) {
        const double x = g.nodes[i];
        v(i) = std::cos(0.5 * M_PI * x / g.L);
        v(g.N + i) = std::sin(M_PI * x / g.L);
      }
      defects[idx++] = (defect * v).cwiseAbs().maxCoeff() /
                       v.cwiseAbs().maxCoeff();
    }
    const double ratio = defects[0] / defects[1];
    CHECK(ratio >= 3.0);
    CHECK(ratio <= 5.0);
  }
}

}  // TEST_SUITE
