#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "vpth/effective_potential.hpp"
#include "vpth/minimize.hpp"

namespace vpth {

enum class OptStatus { minimum, stationary, boundary, failed };

inline const char* to_string(OptStatus s) {
  switch (s) {
    case OptStatus::minimum: return "minimum";
    case OptStatus::stationary: return "stationary";
    case OptStatus::boundary: return "boundary";
    case OptStatus::failed: return "failed";
  }
  return "failed";
}

struct OptimizationResult {
  FrequencyTriple frequencies;
  double value = std::numeric_limits<double>::quiet_NaN();
  double stationarity_residual = std::numeric_limits<double>::quiet_NaN();
  OptStatus status = OptStatus::failed;
  int evaluations = 0;
};

namespace detail {

// W as a function of the raw frequency coordinates, extended evenly in
// Omega_par and Omega_perp2 (the potential depends on Omega_par only through
// even functions, and flipping the sign of Omega_perp2 permutes the two
// transverse normal modes), so finite differences stay valid across the
// zero-frequency boundaries.
class PotentialObjective {
public:
  PotentialObjective(const ThermoPoint& p) : point_(p) {}

  double operator()(double o1, double o2, double opar) const {
    ++evals_;
    return w1(point_, {std::abs(o1), std::abs(o2), std::abs(opar)}).value;
  }
  int evaluations() const { return evals_; }

private:
  ThermoPoint point_;
  mutable int evals_ = 0;
};

// dW/dOmega_perp1 by central differences, step per the optimizer contract.
inline double dW_do1(const PotentialObjective& W, double o1, double o2, double opar) {
  const double h = std::max(1e-6, 1e-6 * o1);
  const double lo = std::max(0.0, o1 - h);
  return (W(o1 + h, o2, opar) - W(lo, o2, opar)) / (o1 + h - lo);
}

// Stationary Omega_perp1 at fixed (Omega_perp2, Omega_par).  The potential
// has no minimum along this direction (it drifts logarithmically downhill at
// large Omega_perp1), so the principle-of-minimal-sensitivity point is a
// root of dW/dOmega_perp1.  A warm hint is refined by secant iteration; the
// fallback scans [0, hi] for sign changes and bisects, preferring the root
// closest to the hint.
inline double stationary_o1(const PotentialObjective& W, double o2, double opar, double B,
                            double hint, double gtol) {
  // without a field the angular-momentum coupling vanishes at the
  // time-reversal-symmetric point Omega_perp1 = 0 (dW/dOmega_perp1 = 0 there
  // identically)
  if (B == 0.0) return 0.0;
  const double hi = std::max({1.5 * std::max(B, o2), 1.0});
  const auto phi = [&](double o1) { return dW_do1(W, o1, o2, opar); };

  double x0 = std::isfinite(hint) ? std::clamp(hint, 0.0, hi) : std::min(B, o2);
  double f0 = phi(x0);
  if (std::abs(f0) <= gtol) return x0;
  // secant from the hint
  double x1 = std::clamp(x0 + std::max(1e-4, 0.05 * std::max(x0, 0.1)), 0.0, hi);
  double f1 = phi(x1);
  for (int it = 0; it < 24 && std::abs(f1) > gtol; ++it) {
    if (f1 == f0) break;
    double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
    if (!std::isfinite(x2)) break;
    x2 = std::clamp(x2, 0.0, hi);
    x0 = x1; f0 = f1;
    x1 = x2; f1 = phi(x1);
    if (std::abs(x1 - x0) < 1e-13 * (1.0 + x1)) break;
  }
  if (std::abs(f1) <= gtol) return x1;

  // scan + bisect fallback
  const int n = 33;
  double best = x1, best_abs = std::abs(f1);
  double prev_x = 0.0, prev_f = phi(0.0);
  if (std::abs(prev_f) < best_abs) { best = 0.0; best_abs = std::abs(prev_f); }
  std::vector<double> roots;
  for (int i = 1; i < n; ++i) {
    const double x = hi * static_cast<double>(i) / (n - 1);
    const double fx = phi(x);
    if (std::abs(fx) < best_abs) { best = x; best_abs = std::abs(fx); }
    if ((prev_f < 0) != (fx < 0)) roots.push_back(bisect_root(phi, prev_x, x, 60));
    prev_x = x; prev_f = fx;
  }
  if (roots.empty()) return best;  // flat direction: most stationary sample
  const double target = std::isfinite(hint) ? std::clamp(hint, 0.0, hi) : std::min(B, o2);
  double pick = roots.front();
  for (double r : roots)
    if (std::abs(r - target) < std::abs(pick - target)) pick = r;
  return pick;
}

} // namespace detail

/*
 * Principle-of-minimal-sensitivity optimization of W over the trial triple
 * at a fixed thermodynamic point.  W is minimized over (Omega_perp2,
 * Omega_par) -- in (log, square-root) coordinates so positivity and the
 * Omega_par = 0 boundary are handled smoothly -- while Omega_perp1 is made
 * stationary (the zero-temperature potential is flat in Omega_perp1, so
 * strict minimization would chase a runaway direction).  Multistart: the
 * caller's init, the far-field solution (w_c, w_c, 0), and the B = 0
 * solution; lowest stationary value wins, ties broken toward smaller
 * Omega_par.  Numerical gradients use central differences with step
 * h = max(1e-6, 1e-6*Omega).
 */
inline OptimizationResult optimize_frequencies(const ThermoPoint& point,
                                               const FrequencyTriple& init,
                                               double tol = 1e-7) {
  validate(point);
  if (!(tol > 0.0)) throw DomainError("optimize_frequencies: tol must be positive");
  const detail::PotentialObjective W(point);
  const double inner_gtol = 0.25 * tol;
  const double B = point.B;

  std::vector<FrequencyTriple> seeds;
  seeds.push_back(init);
  if (B > 0.0) seeds.push_back({B, B, 0.0});
  seeds.push_back({0.0, 32.0 / (9.0 * std::numbers::pi), 16.0 / (9.0 * std::numbers::pi)});

  struct Candidate {
    FrequencyTriple f;
    double value = std::numeric_limits<double>::infinity();
    double residual = std::numeric_limits<double>::infinity();
    bool have = false;
  };
  Candidate best;

  for (const auto& seed : seeds) {
    double o1_hint = seed.perp1;
    const auto outer = [&](const std::vector<double>& y) {
      const double o2 = std::exp(std::clamp(y[0], -30.0, 30.0));
      const double opar = y[1] * y[1];
      const double o1 = detail::stationary_o1(W, o2, opar, B, o1_hint, inner_gtol);
      o1_hint = o1;
      return W(o1, o2, opar);
    };
    const double o2s = std::max(seed.perp2, 1e-4);
    std::vector<double> y0 = {std::log(o2s), std::sqrt(std::max(seed.par, 0.0))};
    MinimizeResult nm =
        nelder_mead(outer, y0, {0.35, 0.25}, 1e-8, 1e-12, 1200);

    double o2 = std::exp(std::clamp(nm.x[0], -30.0, 30.0));
    double opar = nm.x[1] * nm.x[1];
    double o1 = detail::stationary_o1(W, o2, opar, B, o1_hint, inner_gtol);

    // Damped Newton polish of the stationarity system over the coordinates
    // flagged active; pinned coordinates sit at symmetry points where the
    // exact derivative vanishes (Omega_par = 0 and the free-transverse
    // corner Omega_perp1 = Omega_perp2 = 0 at B = 0), so they contribute
    // zero to the residual.  Hessian differences use coarser steps than
    // gradients so the second differences rise above the quadrature noise.
    const auto polish = [&](std::array<double, 3> x, std::array<bool, 3> active,
                            double& res_out) {
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < 3; ++i)
        if (active[i]) idx.push_back(i);
      const std::size_t dim = idx.size();
      const std::function<double(const std::vector<double>&)> wfn =
          [&](const std::vector<double>& p) {
            std::array<double, 3> full = x;
            for (std::size_t k = 0; k < p.size(); ++k) full[idx[k]] = p[k];
            return W(full[0], full[1], full[2]);
          };
      const auto steps = [&](const std::vector<double>& p) {
        std::vector<double> h(p.size());
        for (std::size_t i = 0; i < p.size(); ++i)
          h[i] = std::max(1e-6, 1e-6 * std::abs(p[i]));
        return h;
      };
      const auto hess_steps = [&](const std::vector<double>& p) {
        std::vector<double> h(p.size());
        for (std::size_t i = 0; i < p.size(); ++i)
          h[i] = std::max(1e-3, 1e-3 * std::abs(p[i]));
        return h;
      };
      const auto gnorm = [](const std::vector<double>& g) {
        double s = 0.0;
        for (double v : g) s += v * v;
        return std::sqrt(s);
      };
      if (dim == 0) {
        res_out = 0.0;
        return x;
      }
      std::vector<double> p(dim);
      for (std::size_t k = 0; k < dim; ++k) p[k] = x[idx[k]];
      int dummy = 0;
      auto grad = fd_gradient(wfn, p, steps(p), dummy);
      double res = gnorm(grad);
      for (int it = 0; it < 10 && res > 0.05 * tol; ++it) {
        auto H = fd_hessian(wfn, p, hess_steps(p), dummy);
        double lam = 1e-8;
        for (std::size_t i = 0; i < dim; ++i) lam = std::max(lam, 1e-7 * std::abs(H[i][i]));
        bool improved = false;
        for (int damp = 0; damp < 8 && !improved; ++damp, lam *= 10.0) {
          auto Hd = H;
          for (std::size_t i = 0; i < dim; ++i) Hd[i][i] += lam;
          std::vector<double> rhs(dim);
          for (std::size_t i = 0; i < dim; ++i) rhs[i] = -grad[i];
          std::vector<double> dx;
          if (!solve_linear(Hd, rhs, dx)) continue;
          std::vector<double> pn = p;
          for (std::size_t k = 0; k < dim; ++k) {
            pn[k] = p[k] + dx[k];
            if (idx[k] == 0) pn[k] = std::max(0.0, pn[k]);
            else pn[k] = std::abs(pn[k]);
          }
          auto gn = fd_gradient(wfn, pn, steps(pn), dummy);
          if (gnorm(gn) < res) {
            p = pn;
            grad = gn;
            res = gnorm(gn);
            improved = true;
          }
        }
        if (!improved) break;
      }
      for (std::size_t k = 0; k < dim; ++k) x[idx[k]] = p[k];
      res_out = res;
      return x;
    };

    // Boundary snaps.  The potential is even in Omega_par, hence quartic in
    // the sqrt coordinate near a boundary minimum and the simplex crawls
    // there; the same happens in the free-transverse corner at B = 0.  The
    // checks run before and after polishing, since the polish itself can
    // stall on the quartic approach.
    const double snap_margin = 1e-12 * (1.0 + std::abs(nm.f));
    const auto snap_par = [&](double a1, double a2v, double ap) {
      return ap > 0.0 && ap < 0.05 && W(a1, a2v, 0.0) <= W(a1, a2v, ap) + snap_margin;
    };
    const auto snap_transverse = [&](double a1, double a2v, double ap) {
      return B == 0.0 && (a1 > 0.0 || a2v > 0.0) && std::max(a1, a2v) < 0.05 &&
             W(0.0, 0.0, ap) <= W(a1, a2v, ap) + snap_margin;
    };
    std::array<double, 3> x = {o1, o2, opar};
    std::array<bool, 3> active = {B > 0.0, true, true};
    double res = std::numeric_limits<double>::infinity();
    bool dip_scanned = false;
    for (int pass = 0; pass < 5; ++pass) {
      bool snapped = false;
      if (active[2] && snap_par(x[0], x[1], x[2])) {
        x[2] = 0.0;
        active[2] = false;
        snapped = true;
      }
      if (active[1] && snap_transverse(x[0], x[1], x[2])) {
        x[0] = x[1] = 0.0;
        active[0] = active[1] = false;
        snapped = true;
      }
      // The Omega_par direction can develop a shallow interior dip at
      // ~1e-3 frequency scale (the width curvature term ~beta^3 against
      // the Coulomb tail); Newton from a larger scale never sees it, so
      // scan once explicitly when the residual refuses to drop.
      if (!snapped && !dip_scanned && pass > 0 && res > tol && x[2] < 0.05) {
        dip_scanned = true;
        double best_op = x[2];
        double best_w = W(x[0], x[1], x[2]);
        for (double cand : {0.0, 1e-4, 3e-4, 1e-3, 3e-3, 0.01, 0.03}) {
          const double wc = W(x[0], x[1], cand);
          if (wc < best_w) {
            best_w = wc;
            best_op = cand;
          }
        }
        if (best_op != x[2]) {
          x[2] = best_op;
          if (best_op == 0.0) active[2] = false;
          snapped = true;
        }
      }
      if (pass > 0 && !snapped) break;
      x = polish(x, active, res);
    }

    Candidate c;
    c.f = {x[0], x[1], std::abs(x[2])};
    c.value = W(x[0], x[1], x[2]);
    c.residual = res;
    c.have = true;
    // stationary candidates beat non-stationary ones; among stationary the
    // lowest value wins, ties broken toward smaller Omega_par
    const auto prefer = [&](const Candidate& a, const Candidate& b) {
      const bool sa = a.residual <= tol, sb = b.residual <= tol;
      if (sa != sb) return sa;
      if (!sa) return a.residual < b.residual;
      if (std::abs(a.value - b.value) > tol) return a.value < b.value;
      return a.f.par < b.f.par;
    };
    if (!best.have || prefer(c, best)) best = c;
  }

  OptimizationResult out;
  out.frequencies = best.f;
  out.value = best.value;
  out.stationarity_residual = best.residual;
  out.evaluations = W.evaluations();
  if (!(best.residual <= tol)) {
    out.status = OptStatus::failed;
    return out;
  }
  // curvature probe on the minimized (Omega_perp2, Omega_par) subspace.
  // Omega_perp1 follows its stationarity condition during the probe -- the
  // profiled function is the one that was minimized, and its curvature can
  // differ in sign from the fixed-Omega_perp1 one.  Coarse steps; only the
  // sign matters.
  double probe_o1 = best.f.perp1;
  const std::function<double(const std::vector<double>&)> w2 =
      [&](const std::vector<double>& y) {
        probe_o1 = detail::stationary_o1(W, y[0], y[1], B, probe_o1, inner_gtol);
        return W(probe_o1, y[0], y[1]);
      };
  int dummy = 0;
  std::vector<double> h2 = {std::max(1e-3, 1e-3 * best.f.perp2),
                            std::max(1e-3, 1e-3 * best.f.par)};
  auto H2 = fd_hessian(w2, {best.f.perp2, best.f.par}, h2, dummy);
  const double det = H2[0][0] * H2[1][1] - H2[0][1] * H2[1][0];
  out.status = (H2[0][0] > 0.0 && det > -1e-9 * std::abs(H2[0][0] * H2[1][1]))
                   ? OptStatus::minimum
                   : OptStatus::stationary;
  out.evaluations = W.evaluations();
  return out;
}

struct ProfileRow {
  double distance = 0.0;
  double value = std::numeric_limits<double>::quiet_NaN();
  FrequencyTriple frequencies;
  double residual = std::numeric_limits<double>::quiet_NaN();
  OptStatus status = OptStatus::failed;
  std::string error;  // set when the point failed
};

enum class ProfileDirection { transverse, longitudinal };

// Per-point optimization along one axis with warm starts chained from the
// previous grid point; failures are recorded in the row and the scan
// continues.
inline std::vector<ProfileRow> potential_profile(double beta, double B,
                                                 ProfileDirection dir,
                                                 const std::vector<double>& grid,
                                                 double tol = 1e-7) {
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] >= grid[i - 1]))
      throw DomainError("potential_profile: grid must be ascending");
  std::vector<ProfileRow> rows;
  FrequencyTriple warm{B, std::max(B, 32.0 / (9.0 * std::numbers::pi)),
                       16.0 / (9.0 * std::numbers::pi)};
  for (double d : grid) {
    ProfileRow row;
    row.distance = d;
    const ThermoPoint p{beta, B, dir == ProfileDirection::transverse ? d : 0.0,
                        dir == ProfileDirection::longitudinal ? d : 0.0};
    try {
      OptimizationResult r = optimize_frequencies(p, warm, tol);
      row.value = r.value;
      row.frequencies = r.frequencies;
      row.residual = r.stationarity_residual;
      row.status = r.status;
      if (r.status != OptStatus::failed) warm = r.frequencies;
    } catch (const std::exception& e) {
      row.status = OptStatus::failed;
      row.error = e.what();
    }
    rows.push_back(row);
  }
  return rows;
}

} // namespace vpth
