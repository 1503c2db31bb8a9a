#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "vpth/series.hpp"
#include "vpth/weak_field.hpp"  // Rational + its exact sqrt specialization

using namespace vpth;
using Series = TruncatedSeries<double>;

TEST_CASE("truncated ring arithmetic") {
  // (1 + t)(1 - t) at order 2 -> 1 - t^2
  Series a(2, 1.0);
  a[1] = 1.0;
  Series b(2, 1.0);
  b[1] = -1.0;
  const Series p = a * b;
  CHECK(p[0] == 1.0);
  CHECK(p[1] == 0.0);
  CHECK(p[2] == -1.0);

  // (1 + 2t + 3t^2)(4 + 5t) at order 2 -> 4 + 13t + 22t^2
  Series c(2, 1.0);
  c[1] = 2.0;
  c[2] = 3.0;
  Series d(2, 4.0);
  d[1] = 5.0;
  const Series q = c * d;
  CHECK(q[0] == 4.0);
  CHECK(q[1] == 13.0);
  CHECK(q[2] == 22.0);
}

TEST_CASE("division is exact in the ring") {
  Series a(3, 2.0);
  a[1] = -1.0;
  a[2] = 0.5;
  a[3] = 7.0;
  const Series one = a / a;
  CHECK(one[0] == 1.0);
  CHECK(one[1] == 0.0);
  CHECK(one[2] == 0.0);
  CHECK(one[3] == 0.0);
  Series zero_const(3, 0.0);
  zero_const[1] = 1.0;
  CHECK_THROWS_AS(a / zero_const, DomainError);
}

TEST_CASE("(a*b)/b recovers a for random series") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    Series a(5), b(5);
    for (int n = 0; n <= 5; ++n) {
      a[n] = u(rng);
      b[n] = u(rng);
    }
    if (std::abs(b[0]) < 0.1) b[0] = 1.0;
    const Series r = (a * b) / b;
    for (int n = 0; n <= 5; ++n) CHECK(r[n] == Catch::Approx(a[n]).margin(1e-12));
  }
}

TEST_CASE("mixed truncation orders are rejected") {
  Series a(3, 1.0), b(4, 1.0);
  CHECK_THROWS_AS(a + b, DomainError);
  CHECK_THROWS_AS(a * b, DomainError);
}

TEST_CASE("sqrt composition") {
  // sqrt(1 + t) = 1 + t/2 - t^2/8 + ...
  Series a(2, 1.0);
  a[1] = 1.0;
  const Series r = sqrt(a);
  CHECK(r[0] == 1.0);
  CHECK(r[1] == Catch::Approx(0.5));
  CHECK(r[2] == Catch::Approx(-0.125));
  const Series sq = r * r;
  CHECK(sq[0] == Catch::Approx(1.0));
  CHECK(sq[1] == Catch::Approx(1.0));
  CHECK(sq[2] == Catch::Approx(0.0).margin(1e-15));
  Series neg(2, -1.0);
  CHECK_THROWS_AS(sqrt(neg), DomainError);
  // reciprocal sqrt
  const Series rs = compose_analytic(a, AnalyticFunction::reciprocal_sqrt);
  const Series prod = rs * rs * a;
  CHECK(prod[0] == Catch::Approx(1.0));
  CHECK(prod[1] == Catch::Approx(0.0).margin(1e-14));
}

TEST_CASE("odd-log kernel values") {
  // L(0) = 2
  Series zero(3);
  const Series l0 = compose_analytic(zero, AnalyticFunction::odd_log_kernel);
  CHECK(l0[0] == Catch::Approx(2.0));
  // L(1/4) = (1/0.5) ln(1.5/0.5) = 2 ln 3, via a constant series and enough terms
  Series quarter(0, 0.25);
  const Series lq = compose_analytic(quarter, AnalyticFunction::odd_log_kernel, 80);
  CHECK(lq[0] == Catch::Approx(2.1972245773362193828).epsilon(1e-14));
}

TEST_CASE("odd-log kernel composed with a zero-constant series is exact") {
  // L(s) at s = u^2: compare against (1/u) ln[(1+u)/(1-u)] pointwise
  Series s(6);
  s[1] = 1.0;  // s = t
  const Series L = compose_analytic(s, AnalyticFunction::odd_log_kernel);
  for (double t : {0.01, 0.05, 0.2}) {
    const double u = std::sqrt(t);
    const double exact = std::log((1.0 + u) / (1.0 - u)) / u;
    CHECK(L.evaluate(t) == Catch::Approx(exact).epsilon(1e-9));
  }
}

TEST_CASE("rational scalar mode with exact square roots") {
  using RS = TruncatedSeries<Rational>;
  RS a(2, Rational(16, 9));
  a[1] = Rational(4, 3);
  const RS r = sqrt(a);
  CHECK(r[0] == Rational(4, 3));
  CHECK(r[1] == Rational(1, 2));
  // sqrt of a non-square rational is rejected rather than silently rounded
  RS b(1, Rational(2));
  CHECK_THROWS_AS(sqrt(b), DomainError);
}
