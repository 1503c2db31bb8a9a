#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "vpth/errors.hpp"

namespace vpth {

// Scalar hooks for TruncatedSeries.  The default works for any floating
// type with an ADL-visible sqrt; exact types (rationals) specialize this to
// supply a checked exact square root.
template <class T>
struct SeriesScalar {
  static T sqrt(const T& x) {
    using std::sqrt;
    return sqrt(x);
  }
};

// Power series in one variable truncated at a fixed order N: all arithmetic
// discards terms beyond t^N deterministically (truncated-ring semantics).
template <class T>
class TruncatedSeries {
public:
  explicit TruncatedSeries(int order, T constant = T(0))
      : c_(static_cast<std::size_t>(order) + 1, T(0)) {
    if (order < 0) throw DomainError("TruncatedSeries: order must be >= 0");
    c_[0] = std::move(constant);
  }

  static TruncatedSeries variable(int order) {
    TruncatedSeries s(order);
    if (order >= 1) s.c_[1] = T(1);
    return s;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const T& operator[](int n) const { return c_[static_cast<std::size_t>(n)]; }
  T& operator[](int n) { return c_[static_cast<std::size_t>(n)]; }
  const std::vector<T>& coefficients() const { return c_; }

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) {
    check_orders(a, b);
    for (int n = 0; n <= a.order(); ++n) a.c_[n] += b.c_[n];
    return a;
  }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) {
    check_orders(a, b);
    for (int n = 0; n <= a.order(); ++n) a.c_[n] -= b.c_[n];
    return a;
  }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    check_orders(a, b);
    TruncatedSeries out(a.order());
    for (int n = 0; n <= a.order(); ++n) {
      T acc(0);
      for (int k = 0; k <= n; ++k) acc += a.c_[k] * b.c_[n - k];
      out.c_[n] = acc;
    }
    return out;
  }
  // forward substitution: exact in the truncated ring, needs b0 != 0
  friend TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b) {
    check_orders(a, b);
    if (b.c_[0] == T(0))
      throw DomainError("TruncatedSeries: division by series with zero constant term");
    TruncatedSeries out(a.order());
    for (int n = 0; n <= a.order(); ++n) {
      T acc = a.c_[n];
      for (int k = 1; k <= n; ++k) acc -= b.c_[k] * out.c_[n - k];
      out.c_[n] = acc / b.c_[0];
    }
    return out;
  }

  friend TruncatedSeries operator*(TruncatedSeries a, const T& s) {
    for (auto& c : a.c_) c *= s;
    return a;
  }
  friend TruncatedSeries operator*(const T& s, TruncatedSeries a) { return a * s; }
  TruncatedSeries operator-() const {
    TruncatedSeries out = *this;
    for (auto& c : out.c_) c = -c;
    return out;
  }

  // Horner evaluation at a scalar point (leaves the ring; for diagnostics
  // and cross-checks).
  T evaluate(const T& t) const {
    T acc(0);
    for (int n = order(); n >= 0; --n) acc = acc * t + c_[n];
    return acc;
  }

private:
  static void check_orders(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.order() != b.order())
      throw DomainError("TruncatedSeries: mixed truncation orders " +
                        std::to_string(a.order()) + " vs " + std::to_string(b.order()));
  }
  std::vector<T> c_;
};

// sqrt via the direct recurrence about a positive constant term.
template <class T>
TruncatedSeries<T> sqrt(const TruncatedSeries<T>& a) {
  if (!(a[0] > T(0)))
    throw DomainError("TruncatedSeries sqrt: constant term must be positive");
  TruncatedSeries<T> out(a.order());
  out[0] = SeriesScalar<T>::sqrt(a[0]);
  const T two_c0 = out[0] + out[0];
  for (int n = 1; n <= a.order(); ++n) {
    T acc = a[n];
    for (int k = 1; k <= n - 1; ++k) acc -= out[k] * out[n - k];
    out[n] = acc / two_c0;
  }
  return out;
}

template <class T>
TruncatedSeries<T> one_like(const TruncatedSeries<T>& a) {
  return TruncatedSeries<T>(a.order(), T(1));
}

template <class T>
TruncatedSeries<T> rsqrt(const TruncatedSeries<T>& a) {
  return one_like(a) / sqrt(a);
}

// sum_k func[k] * s^k by Horner in the truncated ring.  Exact when the
// inner series has zero constant term and func carries at least order+1
// coefficients; otherwise it is the order-(#func-1) Taylor truncation.
template <class T>
TruncatedSeries<T> compose_polynomial(const std::vector<T>& func, const TruncatedSeries<T>& s) {
  TruncatedSeries<T> out(s.order());
  for (std::size_t i = func.size(); i-- > 0;) {
    out = out * s;
    out[0] += func[i];
  }
  return out;
}

// Coefficients of the odd-log kernel L(s) = (1/u) ln[(1+u)/(1-u)] with
// s = u^2:  L(s) = 2 sum_{k>=0} s^k / (2k+1), analytic at s = 0.
template <class T>
std::vector<T> odd_log_kernel_coefficients(int terms) {
  std::vector<T> c;
  c.reserve(static_cast<std::size_t>(terms));
  for (int k = 0; k < terms; ++k) c.push_back(T(2) / T(2 * k + 1));
  return c;
}

// Derivative L'(s) = 2 sum_{k>=1} k s^{k-1} / (2k+1).
template <class T>
std::vector<T> odd_log_kernel_derivative_coefficients(int terms) {
  std::vector<T> c;
  c.reserve(static_cast<std::size_t>(terms));
  for (int k = 0; k < terms; ++k) c.push_back(T(2 * (k + 1)) / T(2 * k + 3));
  return c;
}

enum class AnalyticFunction { sqrt, reciprocal_sqrt, odd_log_kernel };

// Composition with one of the named analytic functions.  sqrt and
// reciprocal-sqrt require a positive constant term; the odd-log kernel is
// expanded about s = 0 with `kernel_terms` coefficients (exact for series
// with zero constant term once kernel_terms > order).
template <class T>
TruncatedSeries<T> compose_analytic(const TruncatedSeries<T>& a, AnalyticFunction f,
                                    int kernel_terms = 0) {
  switch (f) {
    case AnalyticFunction::sqrt: return sqrt(a);
    case AnalyticFunction::reciprocal_sqrt: return rsqrt(a);
    case AnalyticFunction::odd_log_kernel: {
      const int terms = kernel_terms > 0 ? kernel_terms : 2 * a.order() + 2;
      return compose_polynomial(odd_log_kernel_coefficients<T>(terms), a);
    }
  }
  throw DomainError("compose_analytic: unknown function");
}

} // namespace vpth
