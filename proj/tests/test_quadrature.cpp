#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "vpth/quadrature.hpp"

using namespace vpth;

TEST_CASE("polynomials are integrated to machine precision") {
  const auto q = integrate_adaptive([](double x) { return x * x * x - 2 * x + 1; }, 0, 2);
  CHECK(q.value == Catch::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("smooth transcendental integrand") {
  const auto q = integrate_adaptive([](double x) { return std::exp(-x * x); }, 0, 1);
  // erf(1) * sqrt(pi)/2
  CHECK(q.value == Catch::Approx(0.74682413281242702540).epsilon(1e-13));
  CHECK(q.error_estimate < 1e-12);
}

TEST_CASE("boundary-layer integrand forces subdivision") {
  // layer of width 1e-4 at the left edge
  const double s = 1e-4;
  const auto q = integrate_adaptive([&](double x) { return std::exp(-x * x / (2 * s * s)); },
                                    0.0, 1.0, 1e-14, 1e-12);
  CHECK(q.value == Catch::Approx(s * std::sqrt(std::numbers::pi / 2)).epsilon(1e-11));
  CHECK(q.intervals > 4);
}

TEST_CASE("non-convergence raises NumericalError") {
  // noisy discontinuous integrand with an unreachable tolerance
  const auto nasty = [](double x) { return x > 0.3141592653589 ? 1.0 : 0.0; };
  CHECK_THROWS_AS(integrate_adaptive(nasty, 0.0, 1.0, 1e-300, 1e-300, 64), NumericalError);
}
