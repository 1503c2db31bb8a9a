#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "vpth/weak_field.hpp"

using namespace vpth;

namespace {
// exact expansion coefficients (scaled, pi removed)
const Rational kEtaHat[4] = {Rational(1), Rational(-405, 7168),
                             Rational(16828965, 1258815488),
                             Rational(-3886999332075) / Rational(884272562962432)};
const Rational kOmegaHat[4] = {Rational(32, 9), Rational(99, 224),
                               Rational(-1293975, 19668992),
                               Rational(524431667187) / Rational(27633517592576)};
const Rational kEpsHat[4] = {Rational(-4, 3), Rational(9, 128),
                             Rational(-8019, 1835008),
                             Rational(256449807) / Rational(322256764928)};
} // namespace

TEST_CASE("rational mode reproduces the expansion coefficients exactly") {
  const auto sol = solve_weak_field_scaled<Rational>(3);
  for (int n = 0; n <= 3; ++n) {
    CHECK(sol.eta_hat[n] == kEtaHat[n]);
    CHECK(sol.omega_hat[n] == kOmegaHat[n]);
    CHECK(sol.eps_hat[n] == kEpsHat[n]);
  }
}

TEST_CASE("50-digit float mode agrees with the rationals") {
  const auto sol = solve_weak_field_scaled<Float50>(3);
  for (int n = 0; n <= 3; ++n) {
    const Float50 eta_ref(kEtaHat[n]);
    CHECK(static_cast<double>(abs(sol.eta_hat[n] - eta_ref)) < 1e-40);
    const Float50 om_ref(kOmegaHat[n]);
    CHECK(static_cast<double>(abs(sol.omega_hat[n] - om_ref)) < 1e-40);
    const Float50 eps_ref(kEpsHat[n]);
    CHECK(static_cast<double>(abs(sol.eps_hat[n] - eps_ref)) < 1e-40);
  }
}

TEST_CASE("stationarity residual series vanishes identically") {
  const auto sol = solve_weak_field_scaled<Rational>(4);
  const auto [ge, go] = weak_field_stationarity_residual(sol);
  for (int n = 0; n <= 4; ++n) {
    CHECK(ge[n] == Rational(0));
    CHECK(go[n] == Rational(0));
  }
  // float mode: coefficients vanish to working precision (50 digits - 10)
  const auto solf = solve_weak_field_scaled<Float50>(4);
  const auto [gef, gof] = weak_field_stationarity_residual(solf);
  for (int n = 0; n <= 4; ++n) {
    CHECK(static_cast<double>(abs(gef[n])) < 1e-40);
    CHECK(static_cast<double>(abs(gof[n])) < 1e-40);
  }
}

TEST_CASE("unscaled table rows carry the pi powers") {
  const auto rows = solve_weak_field(3, 50, false);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].eta == Catch::Approx(1.0));
  CHECK(rows[0].omega == Catch::Approx(1.1317684842).epsilon(1e-9));
  CHECK(rows[0].eps == Catch::Approx(-0.4244131816).epsilon(1e-9));
  CHECK(rows[1].eta == Catch::Approx(-0.5576436638).epsilon(1e-9));
  CHECK(rows[1].omega == Catch::Approx(1.3884717532).epsilon(1e-9));
  CHECK(rows[1].eps == Catch::Approx(0.2208932335).epsilon(1e-9));
  CHECK(rows[2].eps == Catch::Approx(-0.1354976832).epsilon(1e-9));
  CHECK(rows[3].eps == Catch::Approx(0.2435284458).epsilon(1e-9));
  // reference comparison column
  CHECK(rows[0].eps_reference == Catch::Approx(-0.5));
  CHECK(rows[1].eps_reference == Catch::Approx(0.25));
  CHECK(rows[2].eps_reference == Catch::Approx(-53.0 / 192.0));
  CHECK(rows[3].eps_reference == Catch::Approx(5581.0 / 4608.0));
}

TEST_CASE("rational rows include exact strings") {
  const auto rows = solve_weak_field(2, 50, true);
  CHECK(rows[1].eta_exact == "(-405/7168)*pi^2");
  CHECK(rows[1].omega_exact == "(99/224)*pi^1");
  CHECK(rows[1].eps_exact == "(9/128)*pi^1");
  CHECK(rows[0].omega_exact == "(32/9)*pi^-1");
}

TEST_CASE("envelope property: frozen-parameter functional gives the same first coefficient") {
  // with eta and Omega frozen at order 0 the t-coefficient of the binding
  // series comes entirely from the -t/(4 Omega0) term; stationarity kills
  // the first-order parameter variations
  using S = TruncatedSeries<Float50>;
  const Float50 pi = 4 * atan(Float50(1));
  S eta(1, Float50(1));
  S omega(1, Float50(32) / 9 / pi);
  const S f = binding_functional_series(eta, omega);
  // coefficient of t equals -eps_1
  const Float50 eps1 = Float50(9) / 128 * pi;
  CHECK(static_cast<double>(abs(f[1] + eps1)) < 1e-45);
  // and the constant term equals -eps_0 = 4/(3 pi)
  CHECK(static_cast<double>(abs(f[0] - Float50(4) / 3 / pi)) < 1e-45);
}

TEST_CASE("binding functional series matches direct scalar evaluation") {
  // random constant (eta, Omega) inputs: the series evaluated at t = B^2
  // must reproduce the scalar functional
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> ueta(0.2, 0.999);
  std::uniform_real_distribution<double> uom(0.3, 3.0);
  std::uniform_real_distribution<double> ub(0.0, 0.4);
  for (int i = 0; i < 10; ++i) {
    const double eta0 = ueta(rng), om0 = uom(rng), B = ub(rng);
    TruncatedSeries<double> eta(3, eta0), omega(3, om0);
    const auto f = binding_functional_series(eta, omega, 200);
    const double series_val = f.evaluate(B * B);
    const double u = std::sqrt(1.0 - eta0);
    const double scalar = -om0 / 4.0 * (1.0 + eta0 / 2.0) - B * B / (4.0 * om0) -
                          std::sqrt(eta0 * om0 / (2.0 * std::numbers::pi)) / u *
                              std::log((1.0 - u) / (1.0 + u));
    CHECK(series_val == Catch::Approx(scalar).margin(1e-12));
  }
}

TEST_CASE("series solutions evaluated at small B track the optimum") {
  // the solved expansion, summed at t = B^2, must satisfy both scalar
  // stationarity conditions to high order
  const auto sol = solve_weak_field_scaled<Float50>(3);
  const Float50 pi = 4 * atan(Float50(1));
  const Float50 B = Float50(1) / 50;
  const Float50 tau = pi * pi * B * B;
  Float50 eta(0), om_hat(0), tp(1);
  for (int n = 0; n <= 3; ++n) {
    eta += sol.eta_hat[n] * tp;
    om_hat += sol.omega_hat[n] * tp;
    tp *= tau;
  }
  // scalar gradient of the scaled functional at the expanded parameters
  const Float50 s = 1 - eta;
  Float50 L(0), Lp(0);
  for (int k = 60; k >= 0; --k) {
    L = L * s + Float50(2) / (2 * k + 1);
    Lp = Lp * s + Float50(2 * (k + 1)) / (2 * k + 3);
  }
  const Float50 S = sqrt(om_hat * eta / 2);
  const Float50 g_eta = -om_hat / 8 + om_hat * L / (4 * S) - S * Lp;
  const Float50 g_om = Float50(-1) / 4 - eta / 8 + tau / (4 * om_hat * om_hat) +
                       eta * L / (4 * S);
  // residuals scale with the first dropped order, tau^4
  const double bound = 10.0 * std::pow(static_cast<double>(tau), 4.0);
  CHECK(std::abs(static_cast<double>(g_eta)) < bound);
  CHECK(std::abs(static_cast<double>(g_om)) < bound);
}

TEST_CASE("order validation") {
  CHECK_THROWS_AS(solve_weak_field_scaled<double>(-1), DomainError);
}
