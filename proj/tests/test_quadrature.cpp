#include "doctest.h"

#include <cmath>

#include "cpdirac/quadrature.hpp"

using namespace cpdirac;

TEST_SUITE("quadrature") {

TEST_CASE("polynomial and trigonometric integrals") {
  CHECK(adaptive_simpson([](double x) { return x * x; }, 0.0, 1.0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(adaptive_simpson([](double x) { return std::sin(x); }, 0.0, M_PI) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(adaptive_simpson([](double x) { return std::exp(-x * x); }, -6.0,
                         6.0) ==
        doctest::Approx(std::sqrt(M_PI)).epsilon(1e-10));
}

TEST_CASE("orientation and empty interval") {
  CHECK(adaptive_simpson([](double x) { return x; }, 1.0, 1.0) == 0.0);
  CHECK(adaptive_simpson([](double x) { return x; }, 1.0, 0.0) ==
        doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("integrable endpoint kink (odd-power log family shape)") {
  // y ln(y^2) is C0 with unbounded derivative at 0
  const double exact = 0.125 * (std::log(0.25) - 1.0);  // int_0^0.5 y ln y^2
  CHECK(adaptive_simpson(
            [](double y) { return y == 0.0 ? 0.0 : y * std::log(y * y); },
            0.0, 0.5) == doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("non-finite integrand raises") {
  CHECK_THROWS_AS(
      adaptive_simpson([](double x) { return std::sqrt(x - 0.5); }, 0.0, 1.0),
      QuadratureError);
}

}  // TEST_SUITE
