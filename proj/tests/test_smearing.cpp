#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "oracle_gaussian_coulomb.hpp"
#include "vpth/smearing.hpp"

using namespace vpth;

TEST_CASE("isotropic widths at the origin have a closed form") {
  for (double a2 : {0.2, 0.7, 3.0}) {
    CHECK(coulomb_expectation({a2, a2, 0.0, 0.0}) ==
          Catch::Approx(-std::sqrt(2.0 / (std::numbers::pi * a2))).epsilon(1e-12));
  }
  // 40-digit reference at a2 = 0.7
  CHECK(coulomb_expectation({0.7, 0.7, 0.0, 0.0}) ==
        Catch::Approx(-0.953654454017792205).epsilon(1e-12));
}

TEST_CASE("reference value at anisotropic off-origin configuration") {
  // 40-digit evaluation of the reduced integral at a2p=2, a2l=0.5, rho0=1, z0=1
  CHECK(coulomb_expectation({2.0, 0.5, 1.0, 1.0}) ==
        Catch::Approx(-0.52171426597063678436).epsilon(1e-10));
}

TEST_CASE("agrees with direct 3D integration of the smeared Coulomb potential") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> logw(std::log(0.1), std::log(10.0));
  std::uniform_real_distribution<double> pos(0.0, 3.0);
  std::uniform_real_distribution<double> zpos(-3.0, 3.0);
  for (int i = 0; i < 8; ++i) {
    const double a2p = std::exp(logw(rng)), a2l = std::exp(logw(rng));
    const double r0 = pos(rng), z0 = zpos(rng);
    const double lib = coulomb_expectation({a2p, a2l, r0, z0});
    const double ref = -oracle::smeared_coulomb_3d(a2p, a2l, r0, z0);
    CHECK(lib == Catch::Approx(ref).epsilon(1e-6));
  }
}

TEST_CASE("strictly negative, decaying like -1/distance far away") {
  const SmearingInput base{1.3, 0.6, 0.0, 0.0};
  double prev = coulomb_expectation(base);
  CHECK(prev < 0.0);
  for (double r : {0.5, 1.0, 2.0, 5.0, 20.0, 100.0, 1000.0}) {
    const double v = coulomb_expectation({base.a2_perp, base.a2_par, r, 0.0});
    CHECK(v < 0.0);
    CHECK(v > prev);  // |V| strictly decreasing along the ray
    prev = v;
  }
  // far field approaches the bare Coulomb tail, not a Gaussian falloff
  const double far = coulomb_expectation({1.0, 1.0, 1000.0, 0.0});
  CHECK(far * 1000.0 == Catch::Approx(-1.0).epsilon(1e-5));
  const double farz = coulomb_expectation({1.0, 2.5, 0.0, 800.0});
  CHECK(farz * 800.0 == Catch::Approx(-1.0).epsilon(1e-5));
}

TEST_CASE("monotone decay along both rays") {
  for (bool along_z : {false, true}) {
    double prev = 0.0;
    bool first = true;
    for (double d = 0.0; d <= 8.0; d += 0.4) {
      const double v = coulomb_expectation({2.0, 0.5, along_z ? 0.0 : d, along_z ? d : 0.0});
      if (!first) CHECK(v > prev);
      prev = v;
      first = false;
    }
  }
}

TEST_CASE("scaling: widths and squared offsets scaled by lambda give lambda^-1/2") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.3, 3.0);
  for (int i = 0; i < 10; ++i) {
    const double a2p = u(rng), a2l = u(rng), r0 = u(rng), z0 = u(rng), lam = u(rng) * 2;
    const double v1 = coulomb_expectation({a2p, a2l, r0, z0});
    const double v2 = coulomb_expectation(
        {lam * a2p, lam * a2l, std::sqrt(lam) * r0, std::sqrt(lam) * z0});
    CHECK(v2 == Catch::Approx(v1 / std::sqrt(lam)).epsilon(1e-9));
  }
}

TEST_CASE("invalid smearing inputs") {
  CHECK_THROWS_AS(coulomb_expectation({0.0, 1.0, 0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(coulomb_expectation({1.0, -2.0, 0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(coulomb_expectation({1.0, 1.0, std::nan(""), 0.0}), DomainError);
  CHECK_THROWS_AS(coulomb_expectation_origin_T0(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(coulomb_expectation_origin_T0(1.0, -1.0), DomainError);
}

TEST_CASE("zero-temperature origin expectation: equal-frequency branch") {
  // 2 Omega_par = Omega_perp2 gives (2/sqrt(pi)) sqrt(Omega_par)
  for (double op : {0.25, 1.0, 4.0}) {
    CHECK(coulomb_expectation_origin_T0(op, 2.0 * op) ==
          Catch::Approx(2.0 / std::sqrt(std::numbers::pi) * std::sqrt(op)).epsilon(1e-13));
  }
  CHECK(coulomb_expectation_origin_T0(1.0, 2.0) ==
        Catch::Approx(1.12837916709551257).epsilon(1e-13));
}

TEST_CASE("zero-temperature origin expectation matches the quadrature limit") {
  // 40-digit references for one point per branch
  CHECK(coulomb_expectation_origin_T0(0.5, 0.5) ==
        Catch::Approx(0.626657068657750126).epsilon(1e-10));
  CHECK(coulomb_expectation_origin_T0(2.0, 1.0) ==
        Catch::Approx(0.964801672744356879).epsilon(1e-12));
  CHECK(coulomb_expectation_origin_T0(1.0, 4.0) ==
        Catch::Approx(1.40646875476466823).epsilon(1e-12));
  // quadrature route: widths a2_perp = 1/Omega_perp2, a2_par = 1/(2 Omega_par)
  const auto quad = [](double op, double o2) {
    return -coulomb_expectation({1.0 / o2, 1.0 / (2.0 * op), 0.0, 0.0});
  };
  CHECK(coulomb_expectation_origin_T0(0.5, 0.5) ==
        Catch::Approx(quad(0.5, 0.5)).epsilon(1e-10));
}

TEST_CASE("all three branches agree with the quadrature route") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> logu(std::log(0.05), std::log(20.0));
  const auto quad = [](double op, double o2) {
    return -coulomb_expectation({1.0 / o2, 1.0 / (2.0 * op), 0.0, 0.0});
  };
  int arctan_branch = 0, log_branch = 0;
  for (int i = 0; i < 200; ++i) {
    const double op = std::exp(logu(rng)), o2 = std::exp(logu(rng));
    (2 * op > o2 ? arctan_branch : log_branch)++;
    CHECK(coulomb_expectation_origin_T0(op, o2) ==
          Catch::Approx(quad(op, o2)).epsilon(1e-8));
  }
  CHECK(arctan_branch > 20);
  CHECK(log_branch > 20);
}

TEST_CASE("branches are continuous at 2 Omega_par = Omega_perp2") {
  for (double op : {0.3, 1.0, 5.0}) {
    const double o2 = 2.0 * op;
    const double mid = coulomb_expectation_origin_T0(op, o2);
    const double lo = coulomb_expectation_origin_T0(op * (1.0 - 1e-9), o2);
    const double hi = coulomb_expectation_origin_T0(op * (1.0 + 1e-9), o2);
    CHECK(std::abs(lo - mid) < 1e-9);
    CHECK(std::abs(hi - mid) < 1e-9);
  }
}

TEST_CASE("arctan-branch prefactor: only 2 Omega_par - Omega_perp2 under the root is consistent") {
  // With sqrt(op*o2/(op - o2)) instead of sqrt(op*o2/(2 op - o2)) the
  // arctan branch would be discontinuous at 2 op = o2 (and imaginary for
  // op < o2 <= 2 op); it also disagrees with the integral representation.
  const double op = 2.0, o2 = 1.0;  // arctan branch
  const double alt = 2.0 / std::sqrt(std::numbers::pi) *
                     std::sqrt(op * o2 / (op - o2)) *
                     std::atan(std::sqrt(2.0 * op / o2 - 1.0));
  const double quad = -coulomb_expectation({1.0 / o2, 1.0 / (2.0 * op), 0.0, 0.0});
  CHECK(std::abs(alt - quad) / quad > 1e-2);               // inconsistent variant
  CHECK(coulomb_expectation_origin_T0(op, o2) ==
        Catch::Approx(quad).epsilon(1e-10));               // implemented form
}
