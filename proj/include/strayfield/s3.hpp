#pragma once

/// \file s3.hpp
/// Real spherical harmonics on the unit 3-sphere of R^4 in hyperspherical
/// coordinates, and their pole-safe angular derivatives.
///
/// With alpha = (k, l, m), xi = (sin th cos ph sin ch, sin th sin ph sin ch,
/// cos th sin ch, cos ch) and a_{k,l} the normalization below,
///   Y3_alpha(xi) = a_{k,l}^{-1/2} (sin ch)^l T_{k+1}^(l+1)(cos ch) Y_{l,m}(ph, th).
/// The family is orthonormal for the surface measure of S^3 and satisfies
/// -Lap_S Y3_alpha = k(k+2) Y3_alpha.

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "strayfield/multi_index.hpp"
#include "strayfield/special_functions.hpp"

namespace strayfield {

/// Point of the unit 3-sphere, kept in both representations: the Cartesian
/// unit 4-vector xi and the angles (phi, theta, chi) with phi in [0, 2pi),
/// theta and chi in [0, pi].  The two stay consistent to ~1e-15; at the
/// coordinate degeneracies (sin chi = 0 or sin theta = 0) the undetermined
/// angles are fixed to 0.
class S3Point {
 public:
  static S3Point from_angles(double phi, double theta, double chi) {
    S3Point p;
    p.phi_ = phi;
    p.theta_ = theta;
    p.chi_ = chi;
    const double sc = std::sin(chi), cc = std::cos(chi);
    const double st = std::sin(theta), ct = std::cos(theta);
    p.xi_ = {st * std::cos(phi) * sc, st * std::sin(phi) * sc, ct * sc, cc};
    return p;
  }

  static S3Point from_unit4(const std::array<double, 4>& xi) {
    const double n2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2] + xi[3] * xi[3];
    if (std::abs(n2 - 1.0) > 1e-10)
      throw std::invalid_argument("S3Point::from_unit4: vector is not on the unit sphere");
    S3Point p;
    p.xi_ = xi;
    const double rho = std::hypot(xi[0], xi[1]);
    const double sin_chi = std::hypot(rho, xi[2]);
    p.chi_ = std::atan2(sin_chi, xi[3]);
    p.theta_ = (sin_chi > 0.0) ? std::atan2(rho, xi[2]) : 0.0;
    p.phi_ = (rho > 0.0) ? std::atan2(xi[1], xi[0]) : 0.0;
    if (p.phi_ < 0.0) p.phi_ += 2.0 * std::numbers::pi;
    return p;
  }

  const std::array<double, 4>& xi() const { return xi_; }
  double phi() const { return phi_; }
  double theta() const { return theta_; }
  double chi() const { return chi_; }

 private:
  std::array<double, 4> xi_{0.0, 0.0, 0.0, 1.0};
  double phi_ = 0.0;
  double theta_ = 0.0;
  double chi_ = 0.0;
};

/// Normalization a_{k,l} = (k+1) pi/2 * (k+l+1)!/(k-l)! as a running product
/// over (k-l+1)..(k+l+1); no raw factorials are formed.
inline double a_norm(int k, int l) {
  if (l < 0 || l > k) throw std::invalid_argument("a_norm: require 0 <= l <= k");
  double prod = (k + 1) * std::numbers::pi / 2.0;
  for (int j = k - l + 1; j <= k + l + 1; ++j) prod *= j;
  return prod;
}

/// log(a_{k,l}); usable far beyond the overflow range of a_norm.
inline double log_a_norm(int k, int l) {
  if (l < 0 || l > k) throw std::invalid_argument("log_a_norm: require 0 <= l <= k");
  return std::log((k + 1) * std::numbers::pi / 2.0) + std::lgamma(k + l + 2.0) -
         std::lgamma(k - l + 1.0);
}

/// a_{k,l}^{-1/2}, switching to log form when the product would overflow.
inline double inv_sqrt_a_norm(int k, int l) {
  if (k + l + 1 <= 150) return 1.0 / std::sqrt(a_norm(k, l));
  return std::exp(-0.5 * log_a_norm(k, l));
}

namespace detail {

// (sin chi)^l with a log-magnitude fallback once the plain power drops
// below ~1e-290, where later multiplication by large Chebyshev-derivative
// values would otherwise happen against a denormal.
inline double sin_pow(double s, int l) {
  if (l == 0) return 1.0;
  if (s <= 0.0) return 0.0;
  const double lg = l * std::log(s);
  if (lg > -667.0) {  // log(1e-290)
    double p = 1.0;
    for (int i = 0; i < l; ++i) p *= s;
    return p;
  }
  return std::exp(lg);
}

}  // namespace detail

/// Y3_alpha at a point of S^3.
inline double y_alpha(const MultiIndex& a, const S3Point& p) {
  require_valid(a);
  const double sc = std::sin(p.chi());
  const double T = chebyshev_derivative(a.k + 1, a.l + 1, std::cos(p.chi()));
  const double Y2 = real_spherical_harmonic(a.l, a.m, p.phi(), p.theta());
  return inv_sqrt_a_norm(a.k, a.l) * detail::sin_pow(sc, a.l) * T * Y2;
}

/// The three angular-derivative entries consumed by the gradient assembly,
/// already in divided (pole-safe) form:
///   dphi = (1/(sin th sin ch)) dY3/dphi,
///   dtheta = (1/sin ch) dY3/dtheta,
///   dchi = dY3/dchi.
/// All three are finite everywhere, including sin th = 0 and sin ch = 0:
/// the 1/sin th is removed by the tau ladder recurrence and the 1/sin ch by
/// the explicit (sin ch)^(l-1) factor (terms that would need negative powers
/// carry a vanishing prefactor instead).
struct AngularGradient {
  double dphi = 0.0;
  double dtheta = 0.0;
  double dchi = 0.0;
};

inline AngularGradient y_alpha_angular_derivatives(const MultiIndex& a, const S3Point& p) {
  require_valid(a);
  const int k = a.k, l = a.l, m = a.m;
  const int mm = m < 0 ? -m : m;
  const double ct = std::cos(p.theta());
  const double cc = std::cos(p.chi());
  const double sc = std::sin(p.chi());
  const double ia = inv_sqrt_a_norm(k, l);
  const double eta = harmonic_eta(l);
  const double T1 = chebyshev_derivative(k + 1, l + 1, cc);
  const double T2 = chebyshev_derivative(k + 1, l + 2, cc);
  const double scl1 = detail::sin_pow(sc, l >= 1 ? l - 1 : 0);

  AngularGradient g;

  if (m != 0) {
    // (1/(sin th sin ch)) dY3/dphi via
    //   2|m| K_l^{|m|} = sin th (tau_{l,|m|} K_{l+1}^{|m|+1} + tau_{l,-|m|} K_{l+1}^{|m|-1})
    const double ladder = legendre_tau(l, mm) * assoc_legendre_K(l + 1, mm + 1, ct) +
                          legendre_tau(l, -mm) * assoc_legendre_K(l + 1, mm - 1, ct);
    const double sign_half = (m > 0) ? -0.5 : 0.5;
    g.dphi = sign_half * ia * eta * scl1 * T1 * azimuthal_factor(-m, p.phi()) * ladder;
  }

  if (l >= 1) {
    const double dK = legendre_c(l, -mm) * assoc_legendre_K(l, mm - 1, ct) -
                      legendre_c(l, mm) * assoc_legendre_K(l, mm + 1, ct);
    g.dtheta = ia * eta * scl1 * T1 * dK * azimuthal_factor(m, p.phi());
  }

  const double Y2 = real_spherical_harmonic(l, m, p.phi(), p.theta());
  const double radial = (l >= 1 ? l * cc * scl1 * T1 : 0.0) - detail::sin_pow(sc, l + 1) * T2;
  g.dchi = ia * Y2 * radial;

  return g;
}

}  // namespace strayfield
