#pragma once

/// \file coefficients.hpp
/// Bulk assembly of the coefficient table c_alpha = int_Omega M . grad W_alpha dx
/// for all alpha of degree <= n_max.
///
/// Three evaluation paths, all deterministic (fixed loop orders, compensated
/// accumulation, no run-to-run reordering):
///
///  * generic: one sweep over the rule's nodes; per node the Chebyshev and
///    Legendre recurrences are run once and shared across every alpha, so
///    the cost per (alpha, node) is O(1).
///  * ball tensor: for product rules on origin-centered balls the integrand
///    separates in (r, theta, phi); the triple sum is contracted one axis at
///    a time, reducing O(|Lambda*| Q) work to three small stages.
///  * box surface: for constant M the divergence theorem turns the volume
///    integral into face integrals of (M.n) W_alpha, dropping a dimension.
///    Cross-checked against the volume path in the test suite.

#include <cstring>
#include <vector>

#include "strayfield/quadrature.hpp"
#include "strayfield/solver.hpp"

namespace strayfield {

/// Node counts per axis for a degree-N run: max(2(N+1)+8, 24) unless
/// overridden.  Exposed as a tunable because the integrand sharpens with N.
struct QuadratureResolution {
  int radial = 0, theta = 0, phi = 0, axis = 0;  // 0 = use the policy default

  static int default_per_axis(int n_max) { return std::max(2 * (n_max + 1) + 8, 24); }

  int radial_for(int n_max) const { return radial > 0 ? radial : default_per_axis(n_max); }
  int theta_for(int n_max) const { return theta > 0 ? theta : default_per_axis(n_max); }
  int phi_for(int n_max) const { return phi > 0 ? phi : default_per_axis(n_max); }
  int axis_for(int n_max) const { return axis > 0 ? axis : default_per_axis(n_max); }
};

namespace detail {

// x-independent per-(l,k) and per-l factors, built once per sweep.
struct BasisNormalization {
  int n_max = 0;
  std::vector<double> inv_sqrt_a;  // [lk_index]
  std::vector<double> eta;         // [l]

  explicit BasisNormalization(int n) : n_max(n) {
    inv_sqrt_a.resize(lk_count(n));
    eta.resize(n + 1);
    for (int l = 0; l <= n; ++l) {
      eta[l] = harmonic_eta(l);
      for (int k = l; k <= n; ++k) inv_sqrt_a[lk_index(n, l, k)] = inv_sqrt_a_norm(k, l);
    }
  }

  static std::size_t lk_count(int n) {
    return static_cast<std::size_t>(n + 1) * (n + 2) / 2;
  }
  // rows by l, entries k = l..n contiguous
  static std::size_t lk_index(int n, int l, int k) {
    return static_cast<std::size_t>(l) * (n + 1) - static_cast<std::size_t>(l) * (l - 1) / 2 +
           (k - l);
  }
};

// Per-point recurrence tables shared by every alpha at that point.
struct SweepTables {
  int n_max = 0;
  ChebyshevDerivativeTable cheb;
  LegendreKTable K;                  // at cos(theta), degrees to n_max+1
  std::vector<double> Pphi, Ptheta;  // ladder combinations, triangular over (l, m0)
  std::vector<double> cosm, sinm;    // cos/sin(m phi)
  std::vector<double> R1, R3, RW;    // radial factors, [lk]
  double sigma = 0.0, c_chi = 0.0, s_chi = 0.0;
  Vec3 e_phi{}, e_theta{}, r_hat{};

  static std::size_t tri_index(int l, int m) {
    return static_cast<std::size_t>(l) * (l + 1) / 2 + m;
  }

  void build_geometry(const Vec3& x, int n) {
    n_max = n;
    const double rho = std::hypot(x[0], x[1]);
    const double r = std::hypot(rho, x[2]);
    const double d = r * r + 1.0;
    c_chi = (r * r - 1.0) / d;
    s_chi = 2.0 * r / d;
    sigma = std::sqrt(2.0 / d);
    const double ct = (r > 0.0) ? x[2] / r : 1.0;
    const double st = (r > 0.0) ? rho / r : 0.0;
    const double cp = (rho > 0.0) ? x[0] / rho : 1.0;
    const double sp = (rho > 0.0) ? x[1] / rho : 0.0;
    e_phi = {-sp, cp, 0.0};
    e_theta = {ct * cp, ct * sp, -st};
    r_hat = {st * cp, st * sp, ct};

    cosm.resize(n + 1);
    sinm.resize(n + 1);
    cosm[0] = 1.0;
    sinm[0] = 0.0;
    for (int m = 1; m <= n; ++m) {
      cosm[m] = cosm[m - 1] * cp - sinm[m - 1] * sp;
      sinm[m] = sinm[m - 1] * cp + cosm[m - 1] * sp;
    }

    cheb.build(n + 1, n + 2, c_chi);
    K.build(n + 1, ct);

    Pphi.assign(tri_index(n, n) + 1, 0.0);
    Ptheta.assign(tri_index(n, n) + 1, 0.0);
    for (int l = 1; l <= n; ++l) {
      for (int m0 = 0; m0 <= l; ++m0) {
        const double k_hi = (m0 + 1 <= l) ? K.at(l, m0 + 1) : 0.0;
        const double k_lo = (m0 >= 1) ? K.at(l, m0 - 1) : -K.at(l, 1);
        Ptheta[tri_index(l, m0)] = legendre_c(l, -m0) * k_lo - legendre_c(l, m0) * k_hi;
        if (m0 >= 1) {
          const double kp = (m0 + 1 <= l + 1) ? K.at(l + 1, m0 + 1) : 0.0;
          Pphi[tri_index(l, m0)] =
              legendre_tau(l, m0) * kp + legendre_tau(l, -m0) * K.at(l + 1, m0 - 1);
        }
      }
    }
  }

  /// Radial factors of the gradient contraction:
  ///   M.grad W_alpha = R1[l][k] u1(l,m) + R3[l][k] u3(l,m)
  /// with u1, u3 the per-(l,m) angular/azimuthal combinations.
  void build_gradient_rows(const BasisNormalization& nrm) {
    const int n = n_max;
    R1.assign(BasisNormalization::lk_count(n), 0.0);
    R3.assign(BasisNormalization::lk_count(n), 0.0);
    const double one_minus = 1.0 - c_chi;
    const double s2 = s_chi * s_chi;
    double spow = 1.0;  // (sin chi)^(l-1), starting at l = 1
    for (int l = 0; l <= n; ++l) {
      if (l >= 2) spow *= s_chi;
      for (int k = l; k <= n; ++k) {
        const std::size_t lk = BasisNormalization::lk_index(n, l, k);
        const double ia = nrm.inv_sqrt_a[lk];
        const double t1 = cheb.at(k + 1, l + 1);
        const double t2 = cheb.at(k + 1, l + 2);
        if (l == 0) {
          R3[lk] = -sigma * ia * s_chi * (0.5 * t1 - one_minus * t2);
        } else {
          R1[lk] = sigma * ia * one_minus * spow * t1;
          R3[lk] = -sigma * ia * spow *
                   (one_minus * (l * c_chi * t1 - s2 * t2) + 0.5 * s2 * t1);
        }
      }
    }
  }

  /// Radial factors of the plain value contraction:
  ///   W_alpha = RW[l][k] * eta_l K_l^{m0} y_m.
  void build_value_rows(const BasisNormalization& nrm) {
    const int n = n_max;
    RW.assign(BasisNormalization::lk_count(n), 0.0);
    double spow = 1.0;  // (sin chi)^l
    for (int l = 0; l <= n; ++l) {
      if (l >= 1) spow *= s_chi;
      for (int k = l; k <= n; ++k) {
        const std::size_t lk = BasisNormalization::lk_index(n, l, k);
        RW[lk] = sigma * nrm.inv_sqrt_a[lk] * spow * cheb.at(k + 1, l + 1);
      }
    }
  }

  double y_m(int m) const {
    if (m > 0) return cosm[m];
    if (m < 0) return sinm[-m];
    return 1.0 / std::numbers::sqrt2;
  }

  double y_neg_m(int m) const {
    if (m > 0) return sinm[m];
    if (m < 0) return cosm[-m];
    return 1.0 / std::numbers::sqrt2;
  }
};

// Map a finished (l,m)-major work layout into flat (k,l,m) order.
inline void scatter_to_flat(int n_max, const std::vector<double>& lm_major,
                            std::vector<double>& flat) {
  flat.assign(static_cast<std::size_t>(index_count(n_max)), 0.0);
  std::size_t pos = 0;
  for (int l = 0; l <= n_max; ++l)
    for (int m = -l; m <= l; ++m)
      for (int k = l; k <= n_max; ++k)
        flat[static_cast<std::size_t>(flat_index({k, l, m}))] = lm_major[pos++];
}

}  // namespace detail

/// Generic path: sweep the rule's nodes in stored order, Kahan-accumulating
/// every c_alpha.  Works for any rule and any field; cost is
/// O(Q * |Lambda*_N|).
inline CoefficientTable coefficients_generic(const MagnetizationField& field,
                                             const QuadratureRule& rule, int n_max,
                                             double mu0 = 1.0) {
  const detail::BasisNormalization nrm(n_max);
  detail::SweepTables tab;

  // (l,m)-major accumulators: for fixed (l,m) the k entries are contiguous.
  std::size_t total = static_cast<std::size_t>(index_count(n_max));
  std::vector<double> sum(total, 0.0), carry(total, 0.0);

  for (std::size_t node = 0; node < rule.size(); ++node) {
    const Vec3& x = rule.nodes[node];
    const Vec3 mvec = field.at(x, node);
    const double w = rule.weights[node];
    tab.build_geometry(x, n_max);
    tab.build_gradient_rows(nrm);
    const double m_phi = dot(mvec, tab.e_phi);
    const double m_theta = dot(mvec, tab.e_theta);
    const double m_r = dot(mvec, tab.r_hat);

    std::size_t pos = 0;
    for (int l = 0; l <= n_max; ++l) {
      const std::size_t lk0 = detail::BasisNormalization::lk_index(n_max, l, l);
      const double* r1 = &tab.R1[lk0];
      const double* r3 = &tab.R3[lk0];
      for (int m = -l; m <= l; ++m) {
        const int m0 = m < 0 ? -m : m;
        const double sphi = (m > 0) ? -0.5 : (m < 0 ? 0.5 : 0.0);
        const double u1 =
            w * nrm.eta[l] *
            (sphi * tab.Pphi[detail::SweepTables::tri_index(l, m0)] * tab.y_neg_m(m) * m_phi +
             tab.Ptheta[detail::SweepTables::tri_index(l, m0)] * tab.y_m(m) * m_theta);
        const double u3 = w * nrm.eta[l] * tab.K.at(l, m0) * tab.y_m(m) * m_r;
        double* s = &sum[pos];
        double* c = &carry[pos];
        for (int k = 0; k <= n_max - l; ++k) {
          const double y = (r1[k] * u1 + r3[k] * u3) - c[k];
          const double t = s[k] + y;
          c[k] = (t - s[k]) - y;
          s[k] = t;
        }
        pos += n_max - l + 1;
      }
    }
  }

  CoefficientTable table;
  table.n_max = n_max;
  table.mu0 = mu0;
  detail::scatter_to_flat(n_max, sum, table.values);
  return table;
}

/// Ball-tensor path: factorized contraction over phi, then theta, then r.
/// Requires an origin-centered ball rule (the hyperspherical angles of a
/// node then coincide with its spherical angles).
inline CoefficientTable coefficients_ball_tensor(const MagnetizationField& field,
                                                 const QuadratureRule& rule, int n_max,
                                                 double mu0 = 1.0) {
  if (!rule.ball_tensor) throw std::invalid_argument("coefficients_ball_tensor: not a ball rule");
  const BallTensorLayout& lay = *rule.ball_tensor;
  if (norm(lay.center) != 0.0)
    throw std::invalid_argument("coefficients_ball_tensor: ball must be origin-centered");

  const int nr = static_cast<int>(lay.r_nodes.size());
  const int nt = static_cast<int>(lay.t_nodes.size());
  const int np = lay.n_phi;
  const int N = n_max;
  const std::size_t nij = static_cast<std::size_t>(nr) * nt;
  const detail::BasisNormalization nrm(N);

  // trig tables over the periodic phi grid
  const double wphi = 2.0 * std::numbers::pi / np;
  std::vector<double> cos_mphi(static_cast<std::size_t>(N + 1) * np);
  std::vector<double> sin_mphi(static_cast<std::size_t>(N + 1) * np);
  for (int m = 0; m <= N; ++m)
    for (int l = 0; l < np; ++l) {
      cos_mphi[static_cast<std::size_t>(m) * np + l] = std::cos(m * wphi * l);
      sin_mphi[static_cast<std::size_t>(m) * np + l] = std::sin(m * wphi * l);
    }

  // spherical components of M on the grid, phi fastest
  enum { c_phi = 0, c_theta = 1, c_r = 2 };
  std::array<std::vector<double>, 3> mcomp;
  for (auto& v : mcomp) v.resize(nij * np);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nt; ++j) {
      const double ct = lay.t_nodes[j];
      const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      for (int l = 0; l < np; ++l) {
        const double phi = wphi * l;
        const double cp = std::cos(phi), sp = std::sin(phi);
        const Vec3 x = {lay.r_nodes[i] * st * cp, lay.r_nodes[i] * st * sp,
                        lay.r_nodes[i] * ct};
        const std::size_t node = (static_cast<std::size_t>(i) * nt + j) * np + l;
        const Vec3 mv = field.at(x, node);
        mcomp[c_phi][node] = -sp * mv[0] + cp * mv[1];
        mcomp[c_theta][node] = ct * cp * mv[0] + ct * sp * mv[1] - st * mv[2];
        mcomp[c_r][node] = st * cp * mv[0] + st * sp * mv[1] + ct * mv[2];
      }
    }

  // stage 1: contract phi.  Cc/Cs[comp][m][ij] = sum_l w_phi trig(m phi_l) comp(ij, l)
  std::array<std::vector<double>, 3> Cc, Cs;
  for (auto& v : Cc) v.resize(static_cast<std::size_t>(N + 1) * nij);
  for (auto& v : Cs) v.resize(static_cast<std::size_t>(N + 1) * nij);
  for (int comp = 0; comp < 3; ++comp)
    for (int m = 0; m <= N; ++m) {
      const double* cm = &cos_mphi[static_cast<std::size_t>(m) * np];
      const double* sm = &sin_mphi[static_cast<std::size_t>(m) * np];
      for (std::size_t ij = 0; ij < nij; ++ij) {
        const double* src = &mcomp[comp][ij * np];
        KahanSum ac, as;
        for (int l = 0; l < np; ++l) {
          ac += cm[l] * src[l];
          as += sm[l] * src[l];
        }
        Cc[comp][static_cast<std::size_t>(m) * nij + ij] = wphi * ac.value();
        Cs[comp][static_cast<std::size_t>(m) * nij + ij] = wphi * as.value();
      }
    }

  // angular tables at the theta nodes
  const std::size_t ktri = static_cast<std::size_t>(N + 2) * (N + 3) / 2;
  const std::size_t ptri = static_cast<std::size_t>(N + 1) * (N + 2) / 2;
  std::vector<double> Ktab(static_cast<std::size_t>(nt) * ktri);
  std::vector<double> Pphi(static_cast<std::size_t>(nt) * ptri, 0.0);
  std::vector<double> Ptheta(static_cast<std::size_t>(nt) * ptri, 0.0);
  {
    LegendreKTable kt;
    for (int j = 0; j < nt; ++j) {
      kt.build(N + 1, lay.t_nodes[j]);
      for (int l = 0; l <= N + 1; ++l)
        for (int m0 = 0; m0 <= l; ++m0)
          Ktab[j * ktri + detail::SweepTables::tri_index(l, m0)] = kt.at(l, m0);
      for (int l = 1; l <= N; ++l)
        for (int m0 = 0; m0 <= l; ++m0) {
          const double k_hi = (m0 + 1 <= l) ? kt.at(l, m0 + 1) : 0.0;
          const double k_lo = (m0 >= 1) ? kt.at(l, m0 - 1) : -kt.at(l, 1);
          Ptheta[j * ptri + detail::SweepTables::tri_index(l, m0)] =
              legendre_c(l, -m0) * k_lo - legendre_c(l, m0) * k_hi;
          if (m0 >= 1)
            Pphi[j * ptri + detail::SweepTables::tri_index(l, m0)] =
                legendre_tau(l, m0) * ((m0 + 1 <= l + 1) ? kt.at(l + 1, m0 + 1) : 0.0) +
                legendre_tau(l, -m0) * kt.at(l + 1, m0 - 1);
        }
    }
  }

  // stage 2: contract theta.  E1/E3[lm][i]
  const std::size_t n_lm = static_cast<std::size_t>(N + 1) * (N + 1);
  std::vector<double> E1(n_lm * nr, 0.0), E3(n_lm * nr, 0.0);
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  for (int l = 0; l <= N; ++l)
    for (int m = -l; m <= l; ++m) {
      const int m0 = m < 0 ? -m : m;
      const std::size_t lm = static_cast<std::size_t>(l) * (l + 1) + m;
      const double sphi = (m > 0) ? -0.5 : (m < 0 ? 0.5 : 0.0);
      // azimuthal pairing: y_m picks cos for m>0, sin for m<0, 1/sqrt2 for 0;
      // y_{-m} swaps cos and sin.
      const double* c_for_phi = (m > 0) ? &Cs[c_phi][m0 * nij] : &Cc[c_phi][m0 * nij];
      const double* c_for_theta = (m < 0) ? &Cs[c_theta][m0 * nij] : &Cc[c_theta][m0 * nij];
      const double* c_for_r = (m < 0) ? &Cs[c_r][m0 * nij] : &Cc[c_r][m0 * nij];
      const double scale0 = (m == 0) ? inv_sqrt2 : 1.0;
      for (int i = 0; i < nr; ++i) {
        KahanSum a1, a3;
        for (int j = 0; j < nt; ++j) {
          const std::size_t ij = static_cast<std::size_t>(i) * nt + j;
          const double wt = lay.t_weights[j];
          const std::size_t tri = detail::SweepTables::tri_index(l, m0);
          double g1 = 0.0;
          if (l >= 1) {
            if (m != 0) g1 += sphi * Pphi[j * ptri + tri] * c_for_phi[ij];
            g1 += Ptheta[j * ptri + tri] * scale0 * c_for_theta[ij];
          }
          a1 += wt * g1;
          a3 += wt * Ktab[j * ktri + tri] * scale0 * c_for_r[ij];
        }
        E1[lm * nr + i] = nrm.eta[l] * a1.value();
        E3[lm * nr + i] = nrm.eta[l] * a3.value();
      }
    }

  // radial factor tables, [lk][i] with i contiguous
  const std::size_t lkN = detail::BasisNormalization::lk_count(N);
  std::vector<double> R1t(lkN * nr), R3t(lkN * nr);
  {
    detail::SweepTables tab;
    for (int i = 0; i < nr; ++i) {
      const Vec3 x = {0.0, 0.0, lay.r_nodes[i]};  // any direction; radius fixes chi
      tab.build_geometry(x, N);
      tab.build_gradient_rows(nrm);
      for (std::size_t lk = 0; lk < lkN; ++lk) {
        R1t[lk * nr + i] = tab.R1[lk];
        R3t[lk * nr + i] = tab.R3[lk];
      }
    }
  }

  // stage 3: contract r
  CoefficientTable table;
  table.n_max = N;
  table.mu0 = mu0;
  table.values.assign(static_cast<std::size_t>(index_count(N)), 0.0);
  for (int l = 0; l <= N; ++l)
    for (int m = -l; m <= l; ++m) {
      const std::size_t lm = static_cast<std::size_t>(l) * (l + 1) + m;
      const double* e1 = &E1[lm * nr];
      const double* e3 = &E3[lm * nr];
      for (int k = l; k <= N; ++k) {
        const std::size_t lk = detail::BasisNormalization::lk_index(N, l, k);
        const double* r1 = &R1t[lk * nr];
        const double* r3 = &R3t[lk * nr];
        KahanSum acc;
        for (int i = 0; i < nr; ++i) acc += lay.r_weights[i] * (r1[i] * e1[i] + r3[i] * e3[i]);
        table.values[static_cast<std::size_t>(flat_index({k, l, m}))] = acc.value();
      }
    }
  return table;
}

/// Box-surface path for constant M: c_alpha = sum_faces (M.n) int_face W_alpha dS,
/// exact for divergence-free (here constant) fields.  Face grids use n x n
/// Gauss-Legendre points; faces with M.n = 0 contribute nothing and are
/// skipped.  Face order: axis 0..2, low side before high side.
inline CoefficientTable coefficients_box_surface(const MagnetizationField& field,
                                                 const BoxDomain& box, int n_per_axis, int n_max,
                                                 double mu0 = 1.0) {
  if (!field.is_constant || !field.constant_value)
    throw std::invalid_argument("coefficients_box_surface: field must be constant");
  const Vec3 mvec = *field.constant_value;
  const detail::BasisNormalization nrm(n_max);
  detail::SweepTables tab;
  const GaussLegendre gl = gauss_legendre(n_per_axis);

  std::size_t total = static_cast<std::size_t>(index_count(n_max));
  std::vector<double> sum(total, 0.0), carry(total, 0.0);

  for (int axis = 0; axis < 3; ++axis) {
    if (mvec[axis] == 0.0) continue;
    const int b = (axis + 1) % 3, c = (axis + 2) % 3;
    const double mid_b = 0.5 * (box.lo[b] + box.hi[b]), half_b = 0.5 * (box.hi[b] - box.lo[b]);
    const double mid_c = 0.5 * (box.lo[c] + box.hi[c]), half_c = 0.5 * (box.hi[c] - box.lo[c]);
    for (int side = 0; side < 2; ++side) {
      const double m_dot_n = (side == 0 ? -1.0 : 1.0) * mvec[axis];
      const double face_coord = (side == 0) ? box.lo[axis] : box.hi[axis];
      for (int ib = 0; ib < n_per_axis; ++ib)
        for (int ic = 0; ic < n_per_axis; ++ic) {
          Vec3 x{};
          x[axis] = face_coord;
          x[b] = mid_b + half_b * gl.nodes[ib];
          x[c] = mid_c + half_c * gl.nodes[ic];
          const double w =
              m_dot_n * half_b * gl.weights[ib] * half_c * gl.weights[ic];
          tab.build_geometry(x, n_max);
          tab.build_value_rows(nrm);

          std::size_t pos = 0;
          for (int l = 0; l <= n_max; ++l) {
            const std::size_t lk0 = detail::BasisNormalization::lk_index(n_max, l, l);
            const double* rw = &tab.RW[lk0];
            for (int m = -l; m <= l; ++m) {
              const int m0 = m < 0 ? -m : m;
              const double u = w * nrm.eta[l] * tab.K.at(l, m0) * tab.y_m(m);
              double* s = &sum[pos];
              double* cr = &carry[pos];
              for (int k = 0; k <= n_max - l; ++k) {
                const double y = rw[k] * u - cr[k];
                const double t = s[k] + y;
                cr[k] = (t - s[k]) - y;
                s[k] = t;
              }
              pos += n_max - l + 1;
            }
          }
        }
    }
  }

  CoefficientTable table;
  table.n_max = n_max;
  table.mu0 = mu0;
  detail::scatter_to_flat(n_max, sum, table.values);
  return table;
}

/// Dispatch over a prepared rule: ball-tensor rules centered at the origin
/// take the factorized path, everything else the generic sweep.
inline CoefficientTable compute_coefficients(const MagnetizationField& field,
                                             const QuadratureRule& rule, int n_max,
                                             double mu0 = 1.0) {
  if (rule.ball_tensor && norm(rule.ball_tensor->center) == 0.0)
    return coefficients_ball_tensor(field, rule, n_max, mu0);
  return coefficients_generic(field, rule, n_max, mu0);
}

/// Dispatch over a domain: builds the policy rule, then picks the fastest
/// applicable path (surface route for constant fields on boxes).
inline CoefficientTable compute_coefficients(const MagnetizationField& field,
                                             const SampleDomain& domain,
                                             const QuadratureResolution& res, int n_max,
                                             double mu0 = 1.0) {
  switch (domain.kind()) {
    case SampleDomain::Kind::ball: {
      const QuadratureRule rule = build_ball_rule(domain, res.radial_for(n_max),
                                                  res.theta_for(n_max), res.phi_for(n_max));
      return compute_coefficients(field, rule, n_max, mu0);
    }
    case SampleDomain::Kind::box: {
      if (field.is_constant)
        return coefficients_box_surface(field, domain.box(), res.axis_for(n_max), n_max, mu0);
      const QuadratureRule rule = build_box_rule(domain, res.axis_for(n_max));
      return coefficients_generic(field, rule, n_max, mu0);
    }
    case SampleDomain::Kind::cloud: {
      const QuadratureRule rule = build_cloud_rule(domain);
      return coefficients_generic(field, rule, n_max, mu0);
    }
  }
  throw std::logic_error("compute_coefficients: unknown domain kind");
}

}  // namespace strayfield
