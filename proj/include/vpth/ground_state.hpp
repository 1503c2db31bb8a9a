#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "vpth/errors.hpp"
#include "vpth/minimize.hpp"
#include "vpth/strong_field.hpp"

namespace vpth {

struct GroundStateResult {
  double B = 0.0;
  double energy = 0.0;
  double binding = 0.0;  // B/2 - energy, exactly
  double omega_perp2 = 0.0;
  double omega_par = 0.0;
};

/*
 * Zero-temperature ground-state energy at fixed trial frequencies,
 *
 *   E = (Omega_perp2^2 + B^2)/(4 Omega_perp2) + Omega_par/4 - <1/|x|>,
 *
 * with the T -> 0 Coulomb expectation evaluated from the hard-coded widths
 * a2_perp = 1/Omega_perp2, a2_par = 1/(2 Omega_par).  Independent of
 * Omega_perp1 by construction.  Works for any real type with sqrt/atan/
 * atanh/log support (double, long double, multiprecision floats).
 */
template <class Real>
Real coulomb_T0_impl(const Real& omega_par, const Real& omega_perp2) {
  using std::atan;
  using std::atanh;
  using std::sqrt;
  if (!(omega_perp2 > 0) || !(omega_par > 0))
    throw DomainError("coulomb_T0: frequencies must be positive");
  const Real w = 2 * omega_par / omega_perp2 - 1;
  const Real pi = 4 * atan(Real(1));
  const Real pref = 2 / sqrt(pi) * sqrt(omega_par);
  Real kernel;
  if (w > Real(1e-6)) {
    const Real s = sqrt(w);
    kernel = atan(s) / s;
  } else if (w < Real(-1e-6)) {
    const Real s = sqrt(-w);
    kernel = atanh(s) / s;
  } else {
    kernel = 1 + w * (Real(-1) / 3 + w * (Real(1) / 5 + w * (Real(-1) / 7 + w / 9)));
  }
  return pref * kernel;
}

template <class Real>
Real energy_T0_impl(const Real& omega_perp2, const Real& omega_par, const Real& B,
                    bool coulomb = true) {
  if (!(omega_perp2 > 0)) throw DomainError("energy_T0: Omega_perp2 must be positive");
  if (coulomb ? !(omega_par > 0) : omega_par < 0)
    throw DomainError("energy_T0: Omega_par must be positive (non-negative without Coulomb)");
  Real e = (omega_perp2 * omega_perp2 + B * B) / (4 * omega_perp2) + omega_par / 4;
  if (coulomb) e -= coulomb_T0_impl<Real>(omega_par, omega_perp2);
  return e;
}

inline double energy_T0(double omega_perp2, double omega_par, double B, bool coulomb = true) {
  return energy_T0_impl<double>(omega_perp2, omega_par, B, coulomb);
}

// E - B/2 in the algebraically equivalent form
// (Omega_perp2 - B)^2 / (4 Omega_perp2) + Omega_par/4 - <1/|x|>.
// O(1) near the optimum even at huge B, so finite differences and simplex
// arithmetic stay free of large-scale cancellation; the binding energy is
// its negative.
template <class Real>
Real energy_T0_shifted_impl(const Real& omega_perp2, const Real& omega_par, const Real& B,
                            bool coulomb = true) {
  if (!(omega_perp2 > 0)) throw DomainError("energy_T0_shifted: Omega_perp2 must be positive");
  if (coulomb ? !(omega_par > 0) : omega_par < 0)
    throw DomainError("energy_T0_shifted: bad Omega_par");
  const Real d = omega_perp2 - B;
  Real e = d * d / (4 * omega_perp2) + omega_par / 4;
  if (coulomb) e -= coulomb_T0_impl<Real>(omega_par, omega_perp2);
  return e;
}

struct GroundStateOptions {
  bool coulomb = true;
  double tol = 1e-12;          // simplex size tolerance in (ln O2, sqrt(Opar))
  std::vector<std::pair<double, double>> warm_starts;  // (omega_perp2, omega_par)
};

// Newton refinement of the 2D minimum in (ln Omega_perp2, sqrt(Omega_par))
// coordinates, usable at any precision.  Returns the refined coordinates.
template <class Real>
void refine_T0(const Real& B, Real& omega_perp2, Real& omega_par, bool coulomb = true,
               int iters = 30) {
  using std::abs;
  using std::exp;
  using std::log;
  using std::sqrt;
  Real v = log(omega_perp2);
  Real u = sqrt(omega_par);
  const Real h = Real(1) / Real(1000000);
  for (int it = 0; it < iters; ++it) {
    const auto E = [&](const Real& vv, const Real& uu) {
      return energy_T0_shifted_impl<Real>(exp(vv), uu * uu, B, coulomb);
    };
    const Real f0 = E(v, u);
    const Real gv = (E(v + h, u) - E(v - h, u)) / (2 * h);
    const Real gu = (E(v, u + h) - E(v, u - h)) / (2 * h);
    const Real hvv = (E(v + h, u) - 2 * f0 + E(v - h, u)) / (h * h);
    const Real huu = (E(v, u + h) - 2 * f0 + E(v, u - h)) / (h * h);
    const Real hvu =
        (E(v + h, u + h) - E(v + h, u - h) - E(v - h, u + h) + E(v - h, u - h)) / (4 * h * h);
    const Real det = hvv * huu - hvu * hvu;
    if (!(abs(det) > 0)) break;
    const Real dv = -(huu * gv - hvu * gu) / det;
    const Real du = -(-hvu * gv + hvv * gu) / det;
    v += dv;
    u += du;
    if (abs(dv) + abs(du) < Real(1e-30)) break;
  }
  omega_perp2 = exp(v);
  omega_par = u * u;
}

/*
 * Minimization of the T = 0 energy over (Omega_perp2, Omega_par), in
 * (log, square-root) coordinates.  Multistart covers the B = 0 solution
 * (32/9pi, 16/9pi), the strong-field seed (B, Omega_par from the large-B
 * expansion), and caller warm starts.  With the Coulomb term disabled the
 * Omega_par minimum sits at the boundary 0 and the energy reduces to the
 * lowest Landau level B/2.
 */
inline GroundStateResult optimize_T0(double B, const GroundStateOptions& opts = {}) {
  if (!(B >= 0.0) || !std::isfinite(B)) throw DomainError("optimize_T0: B must be >= 0");

  std::vector<std::pair<double, double>> seeds = opts.warm_starts;
  seeds.emplace_back(32.0 / (9.0 * std::numbers::pi), 16.0 / (9.0 * std::numbers::pi));
  if (std::log(std::max(B, 1e-300)) > 1.0)
    seeds.emplace_back(B, omega_par_expansion(B));

  MinimizeResult best;
  best.f = std::numeric_limits<double>::infinity();
  for (const auto& [o2s, opars] : seeds) {
    const auto obj = [&](const std::vector<double>& y) {
      const double o2 = std::exp(std::clamp(y[0], -40.0, 40.0));
      const double opar = y[1] * y[1];
      if (opts.coulomb && opar == 0.0) return std::numeric_limits<double>::infinity();
      return energy_T0_shifted_impl<double>(o2, opar, B, opts.coulomb);
    };
    std::vector<double> y0 = {std::log(std::max(o2s, 1e-6)),
                              std::sqrt(std::max(opars, 0.0))};
    MinimizeResult r = nelder_mead(obj, y0, {0.4, 0.3}, opts.tol, 1e-15, 40000);
    if (r.f < best.f) best = r;
  }
  if (!std::isfinite(best.f))
    throw NumericalError("optimize_T0: no finite optimum found at B=" + std::to_string(B));

  double o2 = std::exp(best.x[0]);
  double opar = best.x[1] * best.x[1];
  if (opts.coulomb) {
    refine_T0<double>(B, o2, opar, true, 12);
  } else {
    // Omega_par -> 0 boundary; the transverse minimizer of
    // (O2 - B)^2 / (4 O2) is exactly B
    opar = 0.0;
    o2 = B > 0 ? B : o2;
  }
  GroundStateResult out;
  out.B = B;
  out.omega_perp2 = o2;
  out.omega_par = opar;
  out.binding = -energy_T0_shifted_impl<double>(o2, opts.coulomb ? opar : 0.0, B, opts.coulomb);
  out.energy = B / 2.0 - out.binding;  // keeps binding = B/2 - energy exact
  return out;
}

struct BindingScanRow {
  GroundStateResult gs;
  double landau_estimate = std::numeric_limits<double>::quiet_NaN();  // 0.5 ln^2 B
  bool ok = false;
  std::string error;
};

// Per-B ground-state optimization with warm starts chained along the
// ascending B list; failures are recorded per row and the scan continues.
inline std::vector<BindingScanRow> binding_scan(const std::vector<double>& B_list) {
  if (B_list.empty()) throw DomainError("binding_scan: empty B list");
  for (std::size_t i = 1; i < B_list.size(); ++i)
    if (!(B_list[i] >= B_list[i - 1]))
      throw DomainError("binding_scan: B list must be ascending");
  std::vector<BindingScanRow> rows;
  GroundStateOptions opts;
  for (double B : B_list) {
    BindingScanRow row;
    try {
      row.gs = optimize_T0(B, opts);
      row.ok = true;
      if (B > 0.0) {
        const double l = std::log(B);
        row.landau_estimate = 0.5 * l * l;
      }
      opts.warm_starts = {{row.gs.omega_perp2, row.gs.omega_par}};
    } catch (const std::exception& e) {
      row.gs.B = B;
      row.error = e.what();
    }
    rows.push_back(row);
  }
  return rows;
}

} // namespace vpth
