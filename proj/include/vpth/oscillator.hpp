#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "vpth/errors.hpp"

namespace vpth {

// The three trial frequencies (Omega_perp1, Omega_perp2, Omega_par) of the
// anisotropic harmonic + angular-momentum trial system, natural units.
struct FrequencyTriple {
  double perp1 = 0.0;
  double perp2 = 0.0;
  double par = 0.0;
};

inline void validate(const FrequencyTriple& f) {
  if (!(std::isfinite(f.perp1) && std::isfinite(f.perp2) && std::isfinite(f.par)))
    throw DomainError("FrequencyTriple: components must be finite");
  if (f.perp1 < 0 || f.perp2 < 0 || f.par < 0)
    throw DomainError("FrequencyTriple: components must be non-negative");
}

// Transverse normal modes Omega_pm = |Omega_perp1 +- Omega_perp2| / 2.
struct ModePair {
  double plus = 0.0;
  double minus = 0.0;
};

inline ModePair mode_frequencies(const FrequencyTriple& f) {
  validate(f);
  return {0.5 * (f.perp1 + f.perp2), 0.5 * std::abs(f.perp1 - f.perp2)};
}

// Fluctuation widths of the pinned trial system: transverse position
// variance a2_perp (per component), longitudinal variance a2_par, and the
// mixed moment b2_perp = <x p_y> (hbar units).
struct FluctuationWidths {
  double a2_perp = 0.0;
  double a2_par = 0.0;
  double b2_perp = 0.0;
};

namespace detail {
inline void require_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw DomainError("inverse temperature must be positive and finite, got " +
                      std::to_string(beta));
}
// Switch to the Taylor series below this value of beta*omega.  The direct
// coth/log formulas lose ~eps/(beta*omega)^2 of relative accuracy to
// cancellation, which at 1e-4 would leave ~1e-7 of relative noise in the
// widths -- enough to break gradient-based optimization on top of them.
// At 0.1 the two branches agree to ~1e-12 relative while the 5-term series
// is still converged to machine precision.
inline constexpr double kSmallArg = 0.1;
} // namespace detail

// Free energy of one pinned mode, f(Omega) = (1/beta) ln[sinh(x)/x] with
// x = beta*Omega/2.  f(0) = 0, f increasing, f -> Omega/2 as beta -> inf.
inline double single_mode_free_energy(double beta, double omega) {
  detail::require_beta(beta);
  if (omega < 0) throw DomainError("single_mode_free_energy: omega < 0");
  const double bo = beta * omega;
  const double x = 0.5 * bo;
  if (bo < detail::kSmallArg) {
    // x^2/6 - x^4/180 + x^6/2835 - x^8/37800 + x^10/467775
    const double x2 = x * x;
    return (x2 / 6.0) *
           (1.0 + x2 * (-1.0 / 30.0 +
                        x2 * (2.0 / 945.0 + x2 * (-1.0 / 6300.0 + x2 * (2.0 / 155925.0))))) /
           beta;
  }
  if (x > 19.0)  // ln sinh(x) = x - ln 2 + ln(1 - e^{-2x}), overflow-safe
    return 0.5 * omega + (std::log1p(-std::exp(-2.0 * x)) - std::log(2.0 * x)) / beta;
  return std::log(std::sinh(x) / x) / beta;
}

// g(Omega) = f'(Omega) = (1/2) coth(beta*Omega/2) - 1/(beta*Omega).
// g(0) = 0; strictly increasing; g -> 1/2 as beta -> inf at fixed Omega > 0.
inline double width_function_g(double beta, double omega) {
  detail::require_beta(beta);
  if (omega < 0) throw DomainError("width_function_g: omega < 0");
  const double bo = beta * omega;
  const double x = 0.5 * bo;
  if (bo < detail::kSmallArg)
    // x/6 - x^3/90 + x^5/945 - x^7/9450 + x^9/93555
    return x * (1.0 / 6.0 +
                x * x * (-1.0 / 90.0 +
                         x * x * (1.0 / 945.0 + x * x * (-1.0 / 9450.0 + x * x / 93555.0))));
  if (x > 19.0) {
    const double e = std::exp(-2.0 * x);
    return 0.5 + e / (1.0 - e) - 1.0 / bo;
  }
  return 0.5 / std::tanh(x) - 1.0 / bo;
}

// g(Omega)/Omega, continuous through Omega = 0 where it equals beta/12.
inline double width_function_g_over_omega(double beta, double omega) {
  detail::require_beta(beta);
  if (omega < 0) throw DomainError("width_function_g_over_omega: omega < 0");
  const double bo = beta * omega;
  if (bo < detail::kSmallArg) {
    // beta [1/12 - x^2/180 + x^4/1890 - x^6/18900 + x^8/187110], x = bo/2
    const double b2 = bo * bo;
    return beta * (1.0 / 12.0 +
                   b2 * (-1.0 / 720.0 +
                         b2 * (1.0 / 30240.0 + b2 * (-1.0 / 1209600.0 + b2 / 47900160.0))));
  }
  return width_function_g(beta, omega) / omega;
}

// Restricted trial free energy F = -(1/beta) ln Z = f(O+) + f(O-) + f(O_par).
inline double restricted_free_energy(double beta, const FrequencyTriple& f) {
  const ModePair m = mode_frequencies(f);
  return single_mode_free_energy(beta, m.plus) + single_mode_free_energy(beta, m.minus) +
         single_mode_free_energy(beta, f.par);
}

// ln of the restricted partition function; exact in log space, no overflow
// for large beta*Omega.
inline double log_restricted_partition(double beta, const FrequencyTriple& f) {
  return -beta * restricted_free_energy(beta, f);
}

// Product of the three factors x/sinh(x); each lies in (0, 1].  May
// underflow to 0 for huge beta*Omega; use log_restricted_partition then.
inline double restricted_partition(double beta, const FrequencyTriple& f) {
  return std::exp(log_restricted_partition(beta, f));
}

/*
 * Closed-form fluctuation widths, obtained by differentiating the restricted
 * free energy F(Omega) with respect to the trial couplings:
 *
 *   b2_perp = dF/dOmega_perp1            = [g(O+) - s g(O-)] / 2
 *   a2_perp = 4 dF/d(Omega_perp2^2)      = [g(O+) + s g(O-)] / Omega_perp2
 *   a2_par  = 2 dF/d(Omega_par^2)        =  g(O_par) / O_par
 *
 * with s = sign(Omega_perp2 - Omega_perp1); the s g(O-) terms come from
 * dO-/dOmega = +-s/2.  At Omega_perp1 = Omega_perp2 the O- mode vanishes and
 * g(0) = 0 keeps everything continuous.  Zero-temperature limits (g -> 1/2,
 * Omega_perp2 > Omega_perp1): a2_perp -> 1/Omega_perp2, b2_perp -> 0,
 * a2_par -> 1/(2 Omega_par).
 */
inline FluctuationWidths fluctuation_widths(double beta, const FrequencyTriple& f) {
  detail::require_beta(beta);
  validate(f);
  FluctuationWidths w;
  w.a2_par = width_function_g_over_omega(beta, f.par);
  if (f.perp2 == 0.0) {
    if (f.perp1 != 0.0)
      throw DomainError("fluctuation_widths: Omega_perp2 = 0 with Omega_perp1 > 0 "
                        "is a singular transverse configuration");
    // both transverse frequencies zero: free transverse particle
    w.a2_perp = width_function_g_over_omega(beta, 0.0);
    w.b2_perp = 0.0;
    return w;
  }
  const ModePair m = mode_frequencies(f);
  const double s = (f.perp2 > f.perp1) ? 1.0 : (f.perp2 < f.perp1 ? -1.0 : 0.0);
  const double gp = width_function_g(beta, m.plus);
  const double gm = width_function_g(beta, m.minus);
  w.a2_perp = (gp + s * gm) / f.perp2;
  w.b2_perp = 0.5 * (gp - s * gm);
  return w;
}

} // namespace vpth
