#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "vpth/errors.hpp"
#include "vpth/oscillator.hpp"
#include "vpth/smearing.hpp"

namespace vpth {

// Thermodynamic state and anchor point.  The cyclotron frequency equals the
// field strength B in natural units; cylindrical symmetry leaves (rho0, z0)
// with z0 -> -z0 a symmetry.
struct ThermoPoint {
  double beta = 1.0;
  double B = 0.0;
  double rho0 = 0.0;
  double z0 = 0.0;
};

inline void validate(const ThermoPoint& p) {
  if (!(p.beta > 0.0) || !std::isfinite(p.beta))
    throw DomainError("ThermoPoint: beta must be positive and finite");
  if (!(p.B >= 0.0) || !std::isfinite(p.B))
    throw DomainError("ThermoPoint: B must be non-negative and finite");
  if (!(p.rho0 >= 0.0) || !std::isfinite(p.rho0) || !std::isfinite(p.z0))
    throw DomainError("ThermoPoint: bad anchor coordinates");
}

struct PotentialEvaluation {
  double value = 0.0;
  FluctuationWidths widths;
  FrequencyTriple frequencies;
  ThermoPoint point;
};

/*
 * First-order effective classical potential at fixed trial frequencies,
 *
 *   W = F_trial + (w_c - Omega_perp1) b2_perp
 *       - (1/4)(Omega_perp2^2 - w_c^2) a2_perp
 *       - (1/2) M Omega_par^2 a2_par
 *       + <Coulomb>_smeared,
 *
 * with M = 1 in natural units (the mass is kept in the comment for unit
 * checking: the a2_perp term carries 1/4 M and the a2_par term 1/2 M).
 */
inline PotentialEvaluation w1(const ThermoPoint& p, const FrequencyTriple& f) {
  validate(p);
  validate(f);
  PotentialEvaluation out;
  out.point = p;
  out.frequencies = f;
  out.widths = fluctuation_widths(p.beta, f);
  const double wc = p.B;
  double v = restricted_free_energy(p.beta, f);
  v += (wc - f.perp1) * out.widths.b2_perp;
  v -= 0.25 * (f.perp2 * f.perp2 - wc * wc) * out.widths.a2_perp;
  v -= 0.5 * f.par * f.par * out.widths.a2_par;
  v += coulomb_expectation({out.widths.a2_perp, out.widths.a2_par, p.rho0, p.z0});
  out.value = v;
  return out;
}

// Far-field plateau of the optimized potential: the Coulomb term has died
// off and the optimal frequencies are (w_c, w_c, 0), leaving
// -(1/beta) ln[(beta w_c/2)/sinh(beta w_c/2)].  Equals 0 at B = 0.
inline double w1_far_field(const ThermoPoint& p) {
  validate(p);
  return single_mode_free_energy(p.beta, p.B);
}

// Optimized-potential samples on a (rho0, z0 >= 0) tensor grid; w is stored
// row-major as w[i*z.size() + j] for rho[i], z[j].
struct PotentialGrid {
  std::vector<double> rho;
  std::vector<double> z;
  std::vector<double> w;
};

struct PartitionResult {
  double value = 0.0;           // relative partition integral
  double error_estimate = 0.0;  // grid-refinement estimate
  double w_far = 0.0;           // plateau value subtracted from W
};

namespace detail {

// Composite Simpson weights for an arbitrary (possibly non-uniform is NOT
// supported) uniform grid with n >= 3 points; even panel counts get a 3/8
// rule on the final three panels.
inline std::vector<double> simpson_weights(std::size_t n, double h) {
  if (n < 3) throw DomainError("partition_integral: grid needs at least 3 points per axis");
  std::vector<double> w(n, 0.0);
  const bool tail38 = (n % 2 == 0);  // odd panel count: 3/8 rule on the last three panels
  const std::size_t last = tail38 ? n - 4 : n - 1;
  for (std::size_t i = 0; i + 2 <= last; i += 2) {
    w[i] += h / 3.0;
    w[i + 1] += 4.0 * h / 3.0;
    w[i + 2] += h / 3.0;
  }
  if (tail38) {
    const std::size_t s = n - 4;
    w[s] += 3.0 * h / 8.0;
    w[s + 1] += 9.0 * h / 8.0;
    w[s + 2] += 9.0 * h / 8.0;
    w[s + 3] += 3.0 * h / 8.0;
  }
  return w;
}

inline void require_uniform(const std::vector<double>& x, const char* name) {
  if (x.size() < 3) throw DomainError(std::string("partition_integral: ") + name + " grid too short");
  const double h = x[1] - x[0];
  for (std::size_t i = 1; i + 1 < x.size(); ++i)
    if (std::abs((x[i + 1] - x[i]) - h) > 1e-9 * std::max(1.0, std::abs(h)))
      throw DomainError(std::string("partition_integral: ") + name + " grid must be uniform");
}

inline double integrate_grid(const PotentialGrid& g, double beta, double w_far,
                             std::size_t stride) {
  // subsampled view with the given stride (1 = full grid)
  std::vector<double> rho, z;
  for (std::size_t i = 0; i < g.rho.size(); i += stride) rho.push_back(g.rho[i]);
  for (std::size_t j = 0; j < g.z.size(); j += stride) z.push_back(g.z[j]);
  const auto wr = simpson_weights(rho.size(), rho[1] - rho[0]);
  const auto wz = simpson_weights(z.size(), z[1] - z[0]);
  double acc = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    for (std::size_t j = 0; j < z.size(); ++j) {
      const double W = g.w[(i * stride) * g.z.size() + j * stride];
      const double f = std::expm1(-beta * (W - w_far));
      acc += wr[i] * wz[j] * rho[i] * f;
    }
  }
  return acc;
}

} // namespace detail

/*
 * Relative configuration-space partition integral over the supplied grid of
 * optimized potential values.  The absolute integral diverges because W
 * tends to the finite far-field plateau rather than +inf, so the bound-state
 * contribution is isolated by subtracting the plateau:
 *
 *   Z_rel = (1/lambda_th^3) Int 2 pi rho drho dz { exp[-beta (W - W_far)] - 1 },
 *
 * lambda_th = sqrt(2 pi beta), z integrated over the full axis via mirror
 * symmetry (the grid holds z >= 0).  The error estimate compares the full
 * grid against a stride-2 subsample; a coarse grid raises NumericalError.
 */
inline PartitionResult partition_integral(double beta, double B, const PotentialGrid& grid,
                                          double rel_tol = 1e-3) {
  if (!(beta > 0.0)) throw DomainError("partition_integral: beta must be positive");
  if (!(B >= 0.0)) throw DomainError("partition_integral: B must be non-negative");
  detail::require_uniform(grid.rho, "rho");
  detail::require_uniform(grid.z, "z");
  if (grid.w.size() != grid.rho.size() * grid.z.size())
    throw DomainError("partition_integral: grid value count mismatch");

  PartitionResult out;
  out.w_far = w1_far_field({beta, B, 0.0, 0.0});
  const double lam3 = std::pow(2.0 * std::numbers::pi * beta, 1.5);
  const double pref = 2.0 * std::numbers::pi * 2.0 / lam3;  // azimuthal angle, z-mirror
  const double fine = pref * detail::integrate_grid(grid, beta, out.w_far, 1);
  out.value = fine;
  if (grid.rho.size() >= 7 && grid.z.size() >= 7) {
    const double coarse = pref * detail::integrate_grid(grid, beta, out.w_far, 2);
    out.error_estimate = std::abs(fine - coarse) / 15.0;
  } else {
    out.error_estimate = std::abs(fine);  // cannot estimate: flag as untrusted
  }
  if (out.error_estimate > rel_tol * std::max(std::abs(out.value), 1e-300))
    throw NumericalError("partition_integral: grid too coarse, refinement estimate " +
                         std::to_string(out.error_estimate) + " exceeds tolerance " +
                         std::to_string(rel_tol) + " relative");
  return out;
}

} // namespace vpth
