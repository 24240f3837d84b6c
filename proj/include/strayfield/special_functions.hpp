#pragma once

/// \file special_functions.hpp
/// Chebyshev polynomials of the first kind and their higher derivatives,
/// the normalized associated Legendre family K_l^m, and real spherical
/// harmonics on the 2-sphere.
///
/// Conventions (pinned by the low-degree golden tests):
///   K_l^m(t) = (-1)^m sqrt((l-m)!/(l+m)!) P_l^m(t), with the Condon-Shortley
///   phase inside P_l^m, so e.g. K_1^1(0) = +1/sqrt(2).  K_l^m = 0 whenever
///   |m| > l, and K_l^{-m} = (-1)^m K_l^m.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace strayfield {

namespace detail {

// Quadrature nodes in cos coordinates land at +-1 only up to rounding.
inline double clamp_unit(double x, const char* what) {
  if (x > 1.0) {
    if (x > 1.0 + 1e-12) throw std::domain_error(std::string(what) + ": argument outside [-1,1]");
    return 1.0;
  }
  if (x < -1.0) {
    if (x < -1.0 - 1e-12) throw std::domain_error(std::string(what) + ": argument outside [-1,1]");
    return -1.0;
  }
  return x;
}

}  // namespace detail

/// Degree/order pair for the Legendre family; construction enforces |m| <= l.
/// The free evaluators below additionally accept |m| > l and return exactly 0
/// there, matching the convention for the K family.
struct DegreeOrderPair {
  int l = 0;
  int m = 0;

  static DegreeOrderPair make(int l, int m) {
    if (l < 0 || m < -l || m > l)
      throw std::invalid_argument("degree/order pair requires 0 <= |m| <= l");
    return {l, m};
  }
};

/// d-th derivative of the Chebyshev polynomial T_n at x in [-1,1].
///
/// For d >= 1 this uses the Gegenbauer connection
///   T_n^(d) = 2^(d-1) (d-1)! n C_{n-d}^(d)
/// with the three-term Gegenbauer recurrence, which is stable on [-1,1]
/// and O(n) per evaluation.  Exactly 0 when d > n.
inline double chebyshev_derivative(int n, int d, double x) {
  if (n < 0 || d < 0) throw std::invalid_argument("chebyshev_derivative: n, d must be >= 0");
  x = detail::clamp_unit(x, "chebyshev_derivative");
  if (d > n) return 0.0;
  if (d == 0) {
    // plain T_n by the usual recurrence
    double prev = 1.0;
    if (n == 0) return prev;
    double cur = x;
    for (int j = 2; j <= n; ++j) {
      const double next = 2.0 * x * cur - prev;
      prev = cur;
      cur = next;
    }
    return cur;
  }
  // Gegenbauer C_j^(d), j = n - d
  const int j_max = n - d;
  double prev = 1.0;  // C_0
  double factor = 1.0;  // 2^(d-1) (d-1)!
  for (int i = 1; i < d; ++i) factor *= 2.0 * i;
  if (j_max == 0) return factor * n * prev;
  double cur = 2.0 * d * x;  // C_1
  for (int j = 2; j <= j_max; ++j) {
    const double next = (2.0 * x * (j + d - 1) * cur - (j + 2 * d - 2) * prev) / j;
    prev = cur;
    cur = next;
  }
  return factor * n * cur;
}

/// All values T_n^(d)(x) for 1 <= d <= d_max, d <= n <= n_max, built row by
/// row so a full table costs O(n_max * d_max).
class ChebyshevDerivativeTable {
 public:
  ChebyshevDerivativeTable() = default;

  ChebyshevDerivativeTable(int n_max, int d_max, double x) { build(n_max, d_max, x); }

  void build(int n_max, int d_max, double x) {
    x = detail::clamp_unit(x, "ChebyshevDerivativeTable");
    n_max_ = n_max;
    d_max_ = d_max;
    values_.assign(static_cast<std::size_t>(d_max) * (n_max + 1), 0.0);
    double factor = 1.0;
    for (int d = 1; d <= d_max; ++d) {
      double* row = &values_[static_cast<std::size_t>(d - 1) * (n_max_ + 1)];
      // row[n] = T_n^(d)(x) = factor * n * C_{n-d}^(d)(x)
      double prev = 1.0;
      double cur = 2.0 * d * x;
      if (d <= n_max) row[d] = factor * d * prev;
      if (d + 1 <= n_max) row[d + 1] = factor * (d + 1) * cur;
      for (int n = d + 2; n <= n_max; ++n) {
        const int j = n - d;
        const double next = (2.0 * x * (j + d - 1) * cur - (j + 2 * d - 2) * prev) / j;
        prev = cur;
        cur = next;
        row[n] = factor * n * cur;
      }
      factor *= 2.0 * d;
    }
  }

  /// T_n^(d)(x); zero when d > n.
  double at(int n, int d) const { return values_[static_cast<std::size_t>(d - 1) * (n_max_ + 1) + n]; }

 private:
  int n_max_ = 0;
  int d_max_ = 0;
  std::vector<double> values_;
};

/// K_l^m(t) for one (l, m).  Upward recurrence in l at fixed m from the
/// closed-form diagonal seed; factorial quotients are never formed, so
/// degrees far beyond l ~ 85 stay finite.
inline double assoc_legendre_K(int l, int m, double t) {
  if (l < 0) throw std::invalid_argument("assoc_legendre_K: l must be >= 0");
  t = detail::clamp_unit(t, "assoc_legendre_K");
  const int mm = m < 0 ? -m : m;
  if (mm > l) return 0.0;
  const double parity = (m < 0 && (mm & 1)) ? -1.0 : 1.0;  // K_l^{-m} = (-1)^m K_l^m
  // diagonal seed K_mm^mm = sqrt(prod_{j<=mm} (2j-1)/(2j)) * (1-t^2)^(mm/2)
  double diag = 1.0;
  const double s2 = (1.0 - t) * (1.0 + t);
  const double s = std::sqrt(s2 < 0.0 ? 0.0 : s2);
  for (int j = 1; j <= mm; ++j) diag *= s * std::sqrt((2.0 * j - 1.0) / (2.0 * j));
  if (l == mm) return parity * diag;
  double prev = diag;
  double cur = std::sqrt(2.0 * mm + 1.0) * t * diag;
  for (int ll = mm + 1; ll < l; ++ll) {
    const double a = std::sqrt(double(ll + 1 - mm) * double(ll + 1 + mm));
    const double b = std::sqrt(double(ll - mm) * double(ll + mm));
    const double next = ((2.0 * ll + 1.0) * t * cur - b * prev) / a;
    prev = cur;
    cur = next;
  }
  return parity * cur;
}

/// Triangular table of K_l^m(t) for 0 <= m <= l <= l_max; the signed
/// accessor applies the parity identity.
class LegendreKTable {
 public:
  LegendreKTable() = default;

  LegendreKTable(int l_max, double t) { build(l_max, t); }

  void build(int l_max, double t) {
    t = detail::clamp_unit(t, "LegendreKTable");
    l_max_ = l_max;
    values_.assign(static_cast<std::size_t>(l_max + 1) * (l_max + 2) / 2, 0.0);
    const double s2 = (1.0 - t) * (1.0 + t);
    const double s = std::sqrt(s2 < 0.0 ? 0.0 : s2);
    double diag = 1.0;
    for (int m = 0; m <= l_max; ++m) {
      if (m > 0) diag *= s * std::sqrt((2.0 * m - 1.0) / (2.0 * m));
      double prev = diag;
      values_[offset(m) + m] = prev;
      if (m == l_max) break;
      double cur = std::sqrt(2.0 * m + 1.0) * t * diag;
      values_[offset(m + 1) + m] = cur;
      for (int ll = m + 1; ll < l_max; ++ll) {
        const double a = std::sqrt(double(ll + 1 - m) * double(ll + 1 + m));
        const double b = std::sqrt(double(ll - m) * double(ll + m));
        const double next = ((2.0 * ll + 1.0) * t * cur - b * prev) / a;
        prev = cur;
        cur = next;
        values_[offset(ll + 1) + m] = cur;
      }
    }
  }

  /// K_l^m(t) for 0 <= m <= l.
  double at(int l, int m) const { return values_[offset(l) + m]; }

  /// K_l^m(t) for any m; zero outside |m| <= l.
  double at_signed(int l, int m) const {
    const int mm = m < 0 ? -m : m;
    if (mm > l) return 0.0;
    const double v = values_[offset(l) + mm];
    return (m < 0 && (mm & 1)) ? -v : v;
  }

  int l_max() const { return l_max_; }

 private:
  static std::size_t offset(int l) { return static_cast<std::size_t>(l) * (l + 1) / 2; }

  int l_max_ = 0;
  std::vector<double> values_;
};

/// c_{l,m} = (1/2) sqrt((l-m)(l+m+1)), the ladder factor of the
/// derivative recurrence for K_l^m.
inline double legendre_c(int l, int m) {
  return 0.5 * std::sqrt(double(l - m) * double(l + m + 1));
}

/// tau_{l,m} = sqrt((l+m+2)(l+m+1)), the ladder factor of the
/// division-free recurrence for K_l^m / sin(theta).
inline double legendre_tau(int l, int m) {
  return std::sqrt(double(l + m + 2) * double(l + m + 1));
}

/// sin(theta) * (K_l^m)'(cos theta), evaluated through the recurrence
///   c_{l,m} K_l^{m+1}(cos theta) - c_{l,-m} K_l^{m-1}(cos theta),
/// which contains no division and stays finite at the poles.
inline double assoc_legendre_K_theta_derivative(int l, int m, double theta) {
  if (l < 0) throw std::invalid_argument("assoc_legendre_K_theta_derivative: l must be >= 0");
  const double t = std::cos(theta);
  const auto K = [&](int mm) { return assoc_legendre_K(l, mm, t); };
  return legendre_c(l, m) * K(m + 1) - legendre_c(l, -m) * K(m - 1);
}

/// Azimuthal factor of the real harmonics: cos(m phi) for m >= 1,
/// 1/sqrt(2) for m = 0, sin(|m| phi) for m <= -1.
inline double azimuthal_factor(int m, double phi) {
  if (m > 0) return std::cos(m * phi);
  if (m < 0) return std::sin(-m * phi);
  return 1.0 / std::numbers::sqrt2;
}

/// eta_l = sqrt((2l+1)/(2 pi)).
inline double harmonic_eta(int l) {
  return std::sqrt((2.0 * l + 1.0) / (2.0 * std::numbers::pi));
}

/// Real spherical harmonic on the 2-sphere,
///   Y_{l,m}(phi, theta) = eta_l K_l^{|m|}(cos theta) * azimuthal_factor(m, phi),
/// orthonormal for the surface measure.
inline double real_spherical_harmonic(int l, int m, double phi, double theta) {
  if (l < 0 || m < -l || m > l)
    throw std::invalid_argument("real_spherical_harmonic: require |m| <= l");
  const int mm = m < 0 ? -m : m;
  return harmonic_eta(l) * assoc_legendre_K(l, mm, std::cos(theta)) * azimuthal_factor(m, phi);
}

}  // namespace strayfield
