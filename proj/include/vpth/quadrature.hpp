#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "vpth/errors.hpp"

namespace vpth {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int intervals = 0;
};

namespace detail {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule,
// on [-1, 1]. Even-index Kronrod weights pair with the Gauss weights.
inline constexpr std::array<double, 8> kGK15Nodes = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
inline constexpr std::array<double, 8> kGK15WeightsK = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr std::array<double, 4> kGK15WeightsG = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

template <class F>
inline void gk15_panel(const F& f, double a, double b, double& kronrod,
                       double& err) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double resk = 0.0, resg = 0.0;
  // odd-index Kronrod nodes (and the centre, i = 7) carry the Gauss-7 rule
  for (std::size_t i = 0; i < 8; ++i) {
    const double dx = h * kGK15Nodes[i];
    double fv = f(c + dx);
    if (i != 7) fv += f(c - dx);
    resk += kGK15WeightsK[i] * fv;
    if (i % 2 == 1) resg += kGK15WeightsG[i / 2] * fv;
  }
  kronrod = resk * h;
  const double gauss = resg * h;
  err = std::abs(kronrod - gauss);
}

} // namespace detail

// Adaptive bisection on top of the Gauss-Kronrod 15(7) rule.  Meant for
// smooth bounded integrands; terminates when the summed panel error
// estimate satisfies err <= max(abs_tol, rel_tol*|I|).
template <class F>
inline QuadratureResult integrate_adaptive(const F& f, double a, double b,
                                           double abs_tol = 1e-13,
                                           double rel_tol = 1e-12,
                                           int max_intervals = 4096) {
  struct Panel {
    double a, b, value, err;
  };
  std::array<Panel, 1024> stack;
  int top = 0;
  double v0, e0;
  detail::gk15_panel(f, a, b, v0, e0);
  stack[top++] = {a, b, v0, e0};

  double total = v0, total_err = e0;
  int used = 1;
  while (total_err > std::max(abs_tol, rel_tol * std::abs(total))) {
    // split the worst panel
    int worst = 0;
    for (int i = 1; i < top; ++i)
      if (stack[i].err > stack[worst].err) worst = i;
    Panel p = stack[worst];
    if (used >= max_intervals || top + 1 >= static_cast<int>(stack.size())) {
      throw NumericalError(
          "integrate_adaptive: no convergence after " + std::to_string(used) +
          " panels; error estimate " + std::to_string(total_err) +
          " on [" + std::to_string(a) + "," + std::to_string(b) + "]");
    }
    const double mid = 0.5 * (p.a + p.b);
    double vl, el, vr, er;
    detail::gk15_panel(f, p.a, mid, vl, el);
    detail::gk15_panel(f, mid, p.b, vr, er);
    total += vl + vr - p.value;
    total_err += el + er - p.err;
    stack[worst] = {p.a, mid, vl, el};
    stack[top++] = {mid, p.b, vr, er};
    ++used;
    if (total_err < 1e-300) break;
  }
  return {total, total_err, used};
}

} // namespace vpth
