#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "vpth/errors.hpp"
#include "vpth/series.hpp"

namespace vpth {

using Float50 = boost::multiprecision::cpp_dec_float_50;
using Float100 = boost::multiprecision::cpp_dec_float_100;
using Rational = boost::multiprecision::cpp_rational;

// Exact square root for rationals; the weak-field recursion only ever takes
// square roots of perfect squares (the base point is 16/9).
template <>
struct SeriesScalar<Rational> {
  static Rational sqrt(const Rational& x) {
    using boost::multiprecision::cpp_int;
    const cpp_int num = numerator(x), den = denominator(x);
    const cpp_int rn = boost::multiprecision::sqrt(num);
    const cpp_int rd = boost::multiprecision::sqrt(den);
    if (rn * rn != num || rd * rd != den)
      throw DomainError("rational series sqrt: argument is not a perfect square");
    return Rational(rn, rd);
  }
};

/*
 * Weak-field machinery.  The binding energy as a functional of the
 * variational parameters eta = 2 Omega_par / Omega_perp2 and
 * Omega = Omega_perp2 is
 *
 *   eps(B) = B/2 - Omega/4 (1 + eta/2) - B^2/(4 Omega)
 *            + sqrt(Omega eta / (2 pi)) L(1 - eta),
 *
 * where L is the odd-log kernel (the Coulomb term is analytic in 1 - eta
 * even though sqrt(1 - eta) is not).  Substituting Omega = Ohat/pi and
 * t = tau/pi^2 (t = B^2) removes every pi:
 *
 *   eps - B/2 = (1/pi) Fhat(eta, Ohat, tau),
 *   Fhat = -Ohat/4 - Ohat eta/8 - tau/(4 Ohat) + sqrt(Ohat eta / 2) L(1 - eta),
 *
 * so the entire order-by-order solve runs in the rationals: the base point
 * is (eta, Ohat) = (1, 32/9) and sqrt(Ohat eta / 2) = 4/3 there.  The
 * physical coefficients are recovered as eta_n = etahat_n pi^{2n},
 * Omega_n = Ohat_n pi^{2n-1}, eps_n = epshat_n pi^{2n-1}.
 */

template <class T>
struct WeakFieldSolution {
  int order = 0;
  std::vector<T> eta_hat;    // eta_n   = eta_hat[n]   * pi^{2n}
  std::vector<T> omega_hat;  // Omega_n = omega_hat[n] * pi^{2n-1}
  std::vector<T> eps_hat;    // eps_n   = eps_hat[n]   * pi^{2n-1}
};

namespace weak_detail {

template <class T>
using Series = TruncatedSeries<T>;

template <class T>
Series<T> constant(int order, T v) {
  return Series<T>(order, std::move(v));
}

// Fhat as a series in tau given eta(tau), Ohat(tau).
template <class T>
Series<T> fhat_series(const Series<T>& eta, const Series<T>& omega_hat, int kernel_terms) {
  const int N = eta.order();
  const Series<T> tau = Series<T>::variable(N);
  const Series<T> one(N, T(1));
  const Series<T> s = one - eta;  // argument of the odd-log kernel
  const Series<T> S = sqrt(omega_hat * eta * (T(1) / T(2)));
  const Series<T> L = compose_polynomial(odd_log_kernel_coefficients<T>(kernel_terms), s);
  return omega_hat * (T(-1) / T(4)) + omega_hat * eta * (T(-1) / T(8)) -
         (tau * (T(1) / T(4))) / omega_hat + S * L;
}

// (dFhat/deta, dFhat/dOhat) as series in tau.
template <class T>
std::pair<Series<T>, Series<T>> gradient_series(const Series<T>& eta,
                                                const Series<T>& omega_hat,
                                                int kernel_terms) {
  const int N = eta.order();
  const Series<T> tau = Series<T>::variable(N);
  const Series<T> one(N, T(1));
  const Series<T> s = one - eta;
  const Series<T> S = sqrt(omega_hat * eta * (T(1) / T(2)));
  const Series<T> L = compose_polynomial(odd_log_kernel_coefficients<T>(kernel_terms), s);
  const Series<T> Lp =
      compose_polynomial(odd_log_kernel_derivative_coefficients<T>(kernel_terms), s);
  // dS/deta = Ohat/(4S), dS/dOhat = eta/(4S); d/deta L(1-eta) = -L'(1-eta)
  Series<T> g_eta = omega_hat * (T(-1) / T(8)) + (omega_hat * L) * (T(1) / T(4)) / S - S * Lp;
  Series<T> g_om = constant(N, T(-1) / T(4)) + eta * (T(-1) / T(8)) +
                   (tau * (T(1) / T(4))) / (omega_hat * omega_hat) +
                   (eta * L) * (T(1) / T(4)) / S;
  return {std::move(g_eta), std::move(g_om)};
}

} // namespace weak_detail

// Order-by-order solution of the two stationarity conditions
// dFhat/deta = dFhat/dOhat = 0.  The order-n coefficients of the gradient
// respond exactly linearly to (eta_n, Ohat_n) through the constant Hessian
// at the base point, which is extracted once by unit-perturbation probes;
// each order then takes one 2x2 solve.  The kernel keeps 2N+2 terms.
template <class T>
WeakFieldSolution<T> solve_weak_field_scaled(int N) {
  using weak_detail::Series;
  if (N < 0) throw DomainError("solve_weak_field: order must be >= 0");
  const int kernel_terms = 2 * N + 2;

  Series<T> eta(N, T(1));
  Series<T> omega(N, T(32) / T(9));

  // Hessian probe at first order (valid for every order by linearity).
  T h11{}, h12{}, h21{}, h22{};
  if (N >= 1) {
    auto [g0e, g0o] = weak_detail::gradient_series(eta, omega, kernel_terms);
    auto pe = eta;
    pe[1] += T(1);
    auto [g1e, g1o] = weak_detail::gradient_series(pe, omega, kernel_terms);
    h11 = g1e[1] - g0e[1];
    h21 = g1o[1] - g0o[1];
    auto po = omega;
    po[1] += T(1);
    auto [g2e, g2o] = weak_detail::gradient_series(eta, po, kernel_terms);
    h12 = g2e[1] - g0e[1];
    h22 = g2o[1] - g0o[1];
    const T det = h11 * h22 - h12 * h21;
    if (det == T(0))
      throw NumericalError("solve_weak_field: singular stationarity Jacobian");
  }

  for (int n = 1; n <= N; ++n) {
    auto [ge, go] = weak_detail::gradient_series(eta, omega, kernel_terms);
    const T r1 = ge[n], r2 = go[n];
    const T det = h11 * h22 - h12 * h21;
    eta[n] = -(h22 * r1 - h12 * r2) / det;
    omega[n] = -(-h21 * r1 + h11 * r2) / det;
  }

  const Series<T> fhat = weak_detail::fhat_series(eta, omega, kernel_terms);
  WeakFieldSolution<T> out;
  out.order = N;
  for (int n = 0; n <= N; ++n) {
    out.eta_hat.push_back(eta[n]);
    out.omega_hat.push_back(omega[n]);
    out.eps_hat.push_back(-fhat[n]);
  }
  return out;
}

// Residual diagnostic: the two stationarity series evaluated at a solution;
// every coefficient should vanish to working precision.
template <class T>
std::pair<TruncatedSeries<T>, TruncatedSeries<T>> weak_field_stationarity_residual(
    const WeakFieldSolution<T>& sol) {
  using weak_detail::Series;
  const int N = sol.order;
  Series<T> eta(N), omega(N);
  for (int n = 0; n <= N; ++n) {
    eta[n] = sol.eta_hat[n];
    omega[n] = sol.omega_hat[n];
  }
  return weak_detail::gradient_series(eta, omega, 2 * N + 2);
}

// The binding functional assembled in the natural variables: returns the
// series of eps(B) - B/2 in t = B^2 (coefficients are -eps_n).  Requires a
// floating scalar (pi enters through the Coulomb prefactor).
template <class T>
TruncatedSeries<T> binding_functional_series(const TruncatedSeries<T>& eta,
                                             const TruncatedSeries<T>& omega,
                                             int kernel_terms = 0) {
  using std::atan;
  const int N = eta.order();
  if (omega.order() != N) throw DomainError("binding_functional_series: order mismatch");
  if (!(eta[0] > T(0)) || !(omega[0] > T(0)))
    throw DomainError("binding_functional_series: eta0 and Omega0 must be positive");
  const int terms = kernel_terms > 0 ? kernel_terms : 2 * N + 2;
  const T pi = 4 * atan(T(1));
  const TruncatedSeries<T> tvar = TruncatedSeries<T>::variable(N);
  const TruncatedSeries<T> one(N, T(1));
  const TruncatedSeries<T> s = one - eta;
  const TruncatedSeries<T> S = sqrt(eta * omega * (T(1) / (2 * pi)));
  const TruncatedSeries<T> L = compose_polynomial(odd_log_kernel_coefficients<T>(terms), s);
  return omega * (T(-1) / T(4)) + omega * eta * (T(-1) / T(8)) -
         (tvar * (T(1) / T(4))) / omega + S * L;
}

// Display/emission form of the solved table.
struct WeakFieldRow {
  int n = 0;
  double eta = 0.0;
  double omega = 0.0;
  double eps = 0.0;
  double eps_reference = std::numeric_limits<double>::quiet_NaN();  // literature values
  std::string eta_exact, omega_exact, eps_exact;  // rational mode only
};

namespace weak_detail {

inline double reference_eps(int n) {
  switch (n) {  // exact perturbation coefficients quoted for comparison
    case 0: return -0.5;
    case 1: return 0.25;
    case 2: return -53.0 / 192.0;
    case 3: return 5581.0 / 4608.0;
    default: return std::numeric_limits<double>::quiet_NaN();
  }
}

inline std::string pi_power_string(const Rational& q, int k) {
  std::string s = "(" + q.str() + ")";
  if (k != 0) s += "*pi^" + std::to_string(k);
  return s;
}

template <class T>
std::vector<WeakFieldRow> rows_from(const WeakFieldSolution<T>& sol, bool exact_strings) {
  using std::atan;
  const T pi = 4 * atan(T(1));
  std::vector<WeakFieldRow> rows;
  for (int n = 0; n <= sol.order; ++n) {
    WeakFieldRow r;
    r.n = n;
    T p2n(1), p2nm1(1);
    for (int i = 0; i < 2 * n; ++i) p2n *= pi;
    p2nm1 = p2n / pi;
    r.eta = static_cast<double>(sol.eta_hat[n] * p2n);
    r.omega = static_cast<double>(sol.omega_hat[n] * p2nm1);
    r.eps = static_cast<double>(sol.eps_hat[n] * p2nm1);
    r.eps_reference = reference_eps(n);
    static_cast<void>(exact_strings);
    rows.push_back(r);
  }
  return rows;
}

template <>
inline std::vector<WeakFieldRow> rows_from<Rational>(const WeakFieldSolution<Rational>& sol,
                                                     bool exact_strings) {
  const double pi = 3.14159265358979323846;
  std::vector<WeakFieldRow> rows;
  for (int n = 0; n <= sol.order; ++n) {
    WeakFieldRow r;
    r.n = n;
    const double p2n = std::pow(pi, 2 * n);
    const double p2nm1 = std::pow(pi, 2 * n - 1);
    r.eta = static_cast<double>(sol.eta_hat[n]) * p2n;
    r.omega = static_cast<double>(sol.omega_hat[n]) * p2nm1;
    r.eps = static_cast<double>(sol.eps_hat[n]) * p2nm1;
    r.eps_reference = reference_eps(n);
    if (exact_strings) {
      r.eta_exact = pi_power_string(sol.eta_hat[n], 2 * n);
      r.omega_exact = pi_power_string(sol.omega_hat[n], 2 * n - 1);
      r.eps_exact = pi_power_string(sol.eps_hat[n], 2 * n - 1);
    }
    rows.push_back(r);
  }
  return rows;
}

} // namespace weak_detail

// Front-end used by the CLI: high-precision float mode (default 50 decimal
// digits; 16 selects plain double, anything above 50 selects 100) or the
// exact rational mode that also emits coefficients as rational * pi^k.
inline std::vector<WeakFieldRow> solve_weak_field(int N, int precision_digits = 50,
                                                  bool rational = false) {
  if (rational)
    return weak_detail::rows_from<Rational>(solve_weak_field_scaled<Rational>(N), true);
  if (precision_digits <= 16)
    return weak_detail::rows_from<double>(solve_weak_field_scaled<double>(N), false);
  if (precision_digits <= 50)
    return weak_detail::rows_from<Float50>(solve_weak_field_scaled<Float50>(N), false);
  return weak_detail::rows_from<Float100>(solve_weak_field_scaled<Float100>(N), false);
}

} // namespace vpth
