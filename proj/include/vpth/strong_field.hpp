#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "vpth/errors.hpp"
#include "vpth/minimize.hpp"

namespace vpth {

namespace strong_field_constants {
// a = 2 - ln 2, b = ln(pi/2) - 2, kept in exact form; the asymptotic term
// values are only reproducible from the unrounded constants.
inline const double a = 2.0 - std::log(2.0);
inline const double b = std::log(std::numbers::pi / 2.0) - 2.0;
} // namespace strong_field_constants

// Reduced strong-field binding functional
//   eps = B/2 - [O_perp/4 + B^2/(4 O_perp) + O_par/4 + sqrt(O_par/pi) ln(O_par/(2 O_perp))],
// valid for O_perp >> 2 O_par and O_par << B (terms of order C/O_perp dropped).
inline double binding_reduced(double omega_perp, double omega_par, double B) {
  if (!(omega_perp > 0.0) || !(omega_par > 0.0) || !(B > 0.0))
    throw DomainError("binding_reduced: omega_perp, omega_par, B must be positive");
  const double bracket = 0.25 * omega_perp + 0.25 * B * B / omega_perp + 0.25 * omega_par +
                         std::sqrt(omega_par / std::numbers::pi) *
                             std::log(omega_par / (2.0 * omega_perp));
  return 0.5 * B - bracket;
}

namespace detail {
inline double require_lnB(double B, const char* who) {
  if (!(B > 0.0) || !std::isfinite(B))
    throw DomainError(std::string(who) + ": B must be positive");
  const double l = std::log(B);
  if (!(l > 1.0))
    throw DomainError(std::string(who) + ": expansion needs ln B > 1, got ln B = " +
                      std::to_string(l));
  return l;
}
} // namespace detail

// Large-B expansion of the optimal longitudinal frequency:
//   sqrt(O_par) = (2/sqrt(pi)) (ln B - 2 ln ln B + 2a/ln B + a^2/ln^2 B + b).
// The expansion converges slowly; its accuracy improves only logarithmically
// with B.
inline double omega_par_expansion(double B) {
  using strong_field_constants::a;
  using strong_field_constants::b;
  const double l = detail::require_lnB(B, "omega_par_expansion");
  const double ll = std::log(l);
  const double s = 2.0 / std::sqrt(std::numbers::pi) *
                   (l - 2.0 * ll + 2.0 * a / l + a * a / (l * l) + b);
  return s * s;
}

// The six leading asymptotic terms of the optimized binding energy, the
// 1/ln B correction, and the 0.5 ln^2 B comparison estimate.
struct AsymptoticBreakdown {
  double B = 0.0;
  std::array<double, 6> terms{};    // (1/pi){ln^2 B, -4 lnB lnlnB, 4 ln^2lnB, -4b lnlnB, 2(b+2) lnB, b^2}
  double partial_sum = 0.0;         // sum of terms, exactly
  double correction_1_over_lnB = 0.0;
  double landau_estimate = 0.0;     // 0.5 ln^2 B
};

inline AsymptoticBreakdown binding_lnB_expansion(double B) {
  using strong_field_constants::b;
  const double l = detail::require_lnB(B, "binding_lnB_expansion");
  const double ll = std::log(l);
  const double pi = std::numbers::pi;
  AsymptoticBreakdown out;
  out.B = B;
  out.terms = {l * l / pi,
               -4.0 * l * ll / pi,
               4.0 * ll * ll / pi,
               -4.0 * b * ll / pi,
               2.0 * (b + 2.0) * l / pi,
               b * b / pi};
  out.partial_sum = 0.0;
  for (double t : out.terms) out.partial_sum += t;
  out.correction_1_over_lnB = -(8.0 * ll * ll - 8.0 * b * ll + 2.0 * b * b) / (pi * l);
  out.landau_estimate = 0.5 * l * l;
  return out;
}

struct ReducedOptimum {
  double omega_perp = 0.0;
  double omega_par = 0.0;
  double binding = 0.0;
};

// Numeric maximization of the reduced binding functional over both
// frequencies (log coordinates, seeded with O_perp = B and the leading
// O_par = (4/pi) ln^2 B).  Serves as the reference the log-expansion is
// compared against.
inline ReducedOptimum maximize_binding_reduced(double B) {
  const double l = detail::require_lnB(B, "maximize_binding_reduced");
  const auto obj = [&](const std::vector<double>& y) {
    return -binding_reduced(std::exp(std::clamp(y[0], -40.0, 45.0)),
                            std::exp(std::clamp(y[1], -40.0, 45.0)), B);
  };
  const std::vector<double> y0 = {std::log(B), std::log(4.0 / std::numbers::pi * l * l)};
  MinimizeResult r = nelder_mead(obj, y0, {0.3, 0.3}, 1e-12, 1e-14, 40000);
  if (!r.converged)
    throw NumericalError("maximize_binding_reduced: no convergence at B=" + std::to_string(B));
  ReducedOptimum out;
  out.omega_perp = std::exp(r.x[0]);
  out.omega_par = std::exp(r.x[1]);
  out.binding = -r.f;
  return out;
}

} // namespace vpth
