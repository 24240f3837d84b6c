#pragma once

/// \file basis.hpp
/// The rational basis functions W_alpha on R^3, obtained by pulling the
/// S^3 harmonics through the stereographic projection:
///   W_alpha(x) = (2/(|x|^2+1))^(1/2) Y3_alpha(stereo_inverse(x)),
/// together with their exact analytic gradients.
///
/// Key properties (all covered by tests):
///   -Lap W_alpha = (2k+1)(2k+3) (|x|^2+1)^{-2} W_alpha,
///   int W_a W_b (|x|^2+1)^{-2} dx = delta_{ab}/4,
///   int grad W_a . grad W_b dx    = (2k+1)(2k+3)/4 delta_{ab}.

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "strayfield/multi_index.hpp"
#include "strayfield/s3.hpp"

namespace strayfield {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

/// Inverse stereographic map, x in R^3 to xi on S^3 minus the north pole:
///   xi = (2x, |x|^2 - 1) / (|x|^2 + 1).
/// The angular coordinates of xi coincide with the spherical angles of x;
/// chi depends only on |x| through cos chi = (|x|^2-1)/(|x|^2+1).
inline S3Point stereo_inverse(const Vec3& x) {
  const double rho = std::hypot(x[0], x[1]);
  const double r = std::hypot(rho, x[2]);
  const double chi = std::atan2(2.0 * r, r * r - 1.0);
  const double theta = (r > 0.0) ? std::atan2(rho, x[2]) : 0.0;
  double phi = (rho > 0.0) ? std::atan2(x[1], x[0]) : 0.0;
  if (phi < 0.0) phi += 2.0 * std::numbers::pi;
  return S3Point::from_angles(phi, theta, chi);
}

/// Forward stereographic map, (xi1, xi2, xi3)/(1 - xi4).  The north pole is
/// excluded; inputs with xi4 >= 1 - 1e-12 are rejected.
inline Vec3 stereo_forward(const S3Point& p) {
  const auto& xi = p.xi();
  if (xi[3] >= 1.0 - 1e-12)
    throw std::domain_error("stereo_forward: point too close to the projection pole");
  const double f = 1.0 / (1.0 - xi[3]);
  return {xi[0] * f, xi[1] * f, xi[2] * f};
}

/// W_alpha(x).
inline double w_alpha(const MultiIndex& a, const Vec3& x) {
  const S3Point p = stereo_inverse(x);
  const double r2 = dot(x, x);
  return std::sqrt(2.0 / (r2 + 1.0)) * y_alpha(a, p);
}

/// Value and exact gradient of W_alpha at one point.
struct GradientSample {
  double w = 0.0;
  Vec3 grad{0.0, 0.0, 0.0};
};

/// Analytic gradient, assembled as
///   grad W = (1-xi4)^(1/2) [ (1-cos ch)(G_phi e_phi + G_th e_th)
///                            - ((1-cos ch) G_ch + (1/2) sin ch Y3) rhat ]
/// from the divided angular derivatives (G_phi, G_th, G_ch); every factor is
/// finite at sin th = 0 and sin ch = 0, so no point of R^3 is special.
inline GradientSample grad_w_alpha(const MultiIndex& a, const Vec3& x) {
  const S3Point p = stereo_inverse(x);
  const AngularGradient g = y_alpha_angular_derivatives(a, p);
  const double y = y_alpha(a, p);

  const double cc = std::cos(p.chi());
  const double sc = std::sin(p.chi());
  const double ct = std::cos(p.theta());
  const double st = std::sin(p.theta());
  const double cp = std::cos(p.phi());
  const double sp = std::sin(p.phi());

  const Vec3 e_phi = {-sp, cp, 0.0};
  const Vec3 e_theta = {ct * cp, ct * sp, -st};
  const Vec3 rhat = {st * cp, st * sp, ct};

  const double sigma = std::sqrt(1.0 - cc);  // (1-xi4)^(1/2) = (2/(|x|^2+1))^(1/2)
  const double tang = 1.0 - cc;
  const double radial = -(tang * g.dchi + 0.5 * sc * y);

  GradientSample out;
  out.w = sigma * y;
  for (int i = 0; i < 3; ++i)
    out.grad[i] = sigma * (tang * (g.dphi * e_phi[i] + g.dtheta * e_theta[i]) + radial * rhat[i]);
  return out;
}

/// Closed rational forms of the low-degree basis functions (k <= 2), used by
/// the golden checks and the wtable CLI command.  Throws for k > 2.
inline double w_alpha_closed_form(const MultiIndex& a, const Vec3& x) {
  require_valid(a);
  const double pi = std::numbers::pi;
  const double r2 = dot(x, x);
  const double d = r2 + 1.0;
  const double d12 = std::sqrt(d);
  const double d32 = d * d12;
  const double d52 = d * d32;
  const double s6 = std::sqrt(6.0);
  const double s2 = std::numbers::sqrt2;
  const int key = a.k * 100 + a.l * 10 + (a.m + a.l);
  switch (key) {
    case 0: return 1.0 / (pi * d12);                                  // (0,0,0)
    case 100: return 2.0 * (r2 - 1.0) / (pi * d32);                   // (1,0,0)
    case 111: return 4.0 * x[2] / (pi * d32);                         // (1,1,0)
    case 112: return 4.0 * x[0] / (pi * d32);                         // (1,1,1)
    case 110: return 4.0 * x[1] / (pi * d32);                         // (1,1,-1)
    case 200: return (3.0 * r2 * r2 - 10.0 * r2 + 3.0) / (pi * d52);  // (2,0,0)
    case 211: return 4.0 * s6 * x[2] * (r2 - 1.0) / (pi * d52);       // (2,1,0)
    case 212: return 4.0 * s6 * x[0] * (r2 - 1.0) / (pi * d52);       // (2,1,1)
    case 210: return 4.0 * s6 * x[1] * (r2 - 1.0) / (pi * d52);       // (2,1,-1)
    case 222: return 4.0 * s2 * (3.0 * x[2] * x[2] - r2) / (pi * d52);  // (2,2,0)
    case 223: return 8.0 * s6 * x[0] * x[2] / (pi * d52);             // (2,2,1)
    case 224: return 4.0 * s6 * (x[0] * x[0] - x[1] * x[1]) / (pi * d52);  // (2,2,2)
    case 221: return 8.0 * s6 * x[1] * x[2] / (pi * d52);             // (2,2,-1)
    case 220: return 8.0 * s6 * x[0] * x[1] / (pi * d52);             // (2,2,-2)
    default: throw std::invalid_argument("w_alpha_closed_form: only k <= 2 available");
  }
}

/// Human-readable formulas matching w_alpha_closed_form, in Table order.
inline std::vector<std::pair<MultiIndex, const char*>> closed_form_catalog() {
  return {
      {{0, 0, 0}, "1 / (pi (|x|^2+1)^(1/2))"},
      {{1, 0, 0}, "2 (|x|^2-1) / (pi (|x|^2+1)^(3/2))"},
      {{1, 1, 0}, "4 x3 / (pi (|x|^2+1)^(3/2))"},
      {{1, 1, 1}, "4 x1 / (pi (|x|^2+1)^(3/2))"},
      {{1, 1, -1}, "4 x2 / (pi (|x|^2+1)^(3/2))"},
      {{2, 0, 0}, "(3|x|^4 - 10|x|^2 + 3) / (pi (|x|^2+1)^(5/2))"},
      {{2, 1, 0}, "4 sqrt(6) x3 (|x|^2-1) / (pi (|x|^2+1)^(5/2))"},
      {{2, 1, 1}, "4 sqrt(6) x1 (|x|^2-1) / (pi (|x|^2+1)^(5/2))"},
      {{2, 1, -1}, "4 sqrt(6) x2 (|x|^2-1) / (pi (|x|^2+1)^(5/2))"},
      {{2, 2, 0}, "4 sqrt(2) (3 x3^2 - |x|^2) / (pi (|x|^2+1)^(5/2))"},
      {{2, 2, 1}, "8 sqrt(6) x1 x3 / (pi (|x|^2+1)^(5/2))"},
      {{2, 2, 2}, "4 sqrt(6) (x1^2 - x2^2) / (pi (|x|^2+1)^(5/2))"},
      {{2, 2, -1}, "8 sqrt(6) x2 x3 / (pi (|x|^2+1)^(5/2))"},
      {{2, 2, -2}, "8 sqrt(6) x1 x2 / (pi (|x|^2+1)^(5/2))"},
  };
}

/// Gradient values of a fixed index set at a fixed node list.  Populate once
/// (single writer), then share across readers; lookups after population are
/// const and thread-safe.
class BasisNodeCache {
 public:
  BasisNodeCache(std::vector<MultiIndex> indices, std::vector<Vec3> nodes)
      : indices_(std::move(indices)), nodes_(std::move(nodes)) {}

  void populate() {
    samples_.resize(indices_.size() * nodes_.size());
    for (std::size_t ia = 0; ia < indices_.size(); ++ia)
      for (std::size_t in = 0; in < nodes_.size(); ++in)
        samples_[ia * nodes_.size() + in] = grad_w_alpha(indices_[ia], nodes_[in]);
    populated_ = true;
  }

  const GradientSample& at(std::size_t index_pos, std::size_t node_pos) const {
    if (!populated_) throw std::logic_error("BasisNodeCache: read before populate()");
    return samples_[index_pos * nodes_.size() + node_pos];
  }

  const std::vector<MultiIndex>& indices() const { return indices_; }
  const std::vector<Vec3>& nodes() const { return nodes_; }

 private:
  std::vector<MultiIndex> indices_;
  std::vector<Vec3> nodes_;
  std::vector<GradientSample> samples_;
  bool populated_ = false;
};

}  // namespace strayfield
