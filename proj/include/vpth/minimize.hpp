#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace vpth {

struct MinimizeResult {
  std::vector<double> x;
  double f = std::numeric_limits<double>::quiet_NaN();
  int evaluations = 0;
  bool converged = false;
};

// Downhill-simplex minimization.  `step` sets the initial simplex scale per
// coordinate.  Stops when the simplex collapses below xtol and the function
// spread falls below ftol.
inline MinimizeResult nelder_mead(const std::function<double(const std::vector<double>&)>& fn,
                                  std::vector<double> x0, std::vector<double> step,
                                  double xtol = 1e-10, double ftol = 1e-13,
                                  int max_evals = 20000) {
  const std::size_t n = x0.size();
  std::vector<std::vector<double>> pts(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step[i];
  std::vector<double> fv(n + 1);
  int evals = 0;
  for (std::size_t i = 0; i <= n; ++i) fv[i] = (++evals, fn(pts[i]));

  const auto order = [&]() {
    std::vector<std::size_t> idx(n + 1);
    for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return fv[a] < fv[b]; });
    std::vector<std::vector<double>> p2;
    std::vector<double> f2;
    for (auto i : idx) { p2.push_back(pts[i]); f2.push_back(fv[i]); }
    pts = std::move(p2); fv = std::move(f2);
  };

  MinimizeResult res;
  while (evals < max_evals) {
    order();
    double width = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      width = std::max(width, std::abs(pts[n][i] - pts[0][i]));
    if (width < xtol && std::abs(fv[n] - fv[0]) < ftol) {
      res.converged = true;
      break;
    }
    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[i][j];
    }
    for (auto& c : centroid) c /= static_cast<double>(n);
    const auto at = [&](double t) {
      std::vector<double> p(n);
      for (std::size_t j = 0; j < n; ++j) p[j] = centroid[j] + t * (pts[n][j] - centroid[j]);
      return p;
    };
    auto xr = at(-1.0);
    double fr = (++evals, fn(xr));
    if (fr < fv[0]) {
      auto xe = at(-2.0);
      double fe = (++evals, fn(xe));
      if (fe < fr) { pts[n] = xe; fv[n] = fe; }
      else { pts[n] = xr; fv[n] = fr; }
    } else if (fr < fv[n - 1]) {
      pts[n] = xr; fv[n] = fr;
    } else {
      const bool outside = fr < fv[n];
      auto xc = at(outside ? -0.5 : 0.5);
      double fc = (++evals, fn(xc));
      if (fc < std::min(fr, fv[n])) {
        pts[n] = xc; fv[n] = fc;
      } else {  // shrink toward the best point
        for (std::size_t i = 1; i <= n; ++i) {
          for (std::size_t j = 0; j < n; ++j)
            pts[i][j] = pts[0][j] + 0.5 * (pts[i][j] - pts[0][j]);
          fv[i] = (++evals, fn(pts[i]));
        }
      }
    }
  }
  order();
  res.x = pts[0];
  res.f = fv[0];
  res.evaluations = evals;
  return res;
}

// Bisection for a bracketed sign change; f(a) and f(b) must have opposite
// signs (or one of them be zero).
template <class F>
inline double bisect_root(const F& f, double a, double b, int iters = 80) {
  double fa = f(a);
  if (fa == 0.0) return a;
  double fb = f(b);
  if (fb == 0.0) return b;
  for (int i = 0; i < iters && b - a > 1e-15 * (1.0 + std::abs(a) + std::abs(b)); ++i) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fa < 0) != (fm < 0)) { b = m; fb = fm; }
    else { a = m; fa = fm; }
  }
  return 0.5 * (a + b);
}

// Solves the small dense system A x = b in place (partial pivoting).
// Returns false if A is numerically singular.
inline bool solve_linear(std::vector<std::vector<double>> A, std::vector<double> b,
                         std::vector<double>& x) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(A[i][k]) > std::abs(A[piv][k])) piv = i;
    if (std::abs(A[piv][k]) < 1e-300) return false;
    std::swap(A[piv], A[k]);
    std::swap(b[piv], b[k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double m = A[i][k] / A[k][k];
      for (std::size_t j = k; j < n; ++j) A[i][j] -= m * A[k][j];
      b[i] -= m * b[k];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= A[i][j] * x[j];
    x[i] = s / A[i][i];
  }
  return true;
}

// Central-difference gradient with per-coordinate steps.
inline std::vector<double> fd_gradient(const std::function<double(const std::vector<double>&)>& fn,
                                       const std::vector<double>& x,
                                       const std::vector<double>& h, int& evals) {
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto xp = x, xm = x;
    xp[i] += h[i];
    xm[i] -= h[i];
    g[i] = (fn(xp) - fn(xm)) / (2.0 * h[i]);
    evals += 2;
  }
  return g;
}

// Central-difference Hessian (symmetric).
inline std::vector<std::vector<double>> fd_hessian(
    const std::function<double(const std::vector<double>&)>& fn, const std::vector<double>& x,
    const std::vector<double>& h, int& evals) {
  const std::size_t n = x.size();
  std::vector<std::vector<double>> H(n, std::vector<double>(n, 0.0));
  const double f0 = fn(x);
  ++evals;
  for (std::size_t i = 0; i < n; ++i) {
    auto xp = x, xm = x;
    xp[i] += h[i];
    xm[i] -= h[i];
    H[i][i] = (fn(xp) - 2.0 * f0 + fn(xm)) / (h[i] * h[i]);
    evals += 2;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      auto xpp = x, xpm = x, xmp = x, xmm = x;
      xpp[i] += h[i]; xpp[j] += h[j];
      xpm[i] += h[i]; xpm[j] -= h[j];
      xmp[i] -= h[i]; xmp[j] += h[j];
      xmm[i] -= h[i]; xmm[j] -= h[j];
      H[i][j] = H[j][i] = (fn(xpp) - fn(xpm) - fn(xmp) + fn(xmm)) / (4.0 * h[i] * h[j]);
      evals += 4;
    }
  }
  return H;
}

} // namespace vpth
