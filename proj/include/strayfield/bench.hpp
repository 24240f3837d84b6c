#pragma once

/// \file bench.hpp
/// Built-in benchmark problems with exact stray-field solutions, the
/// convergence runner, and log-log slope fitting.
///
/// Case 1: nonuniformly magnetized ball, M = cos(th) e_phi + sin(th) e_th,
///         r0 = 1/2.  |M| = 1 and M.n = 0 on the boundary; exact energy
///         (16/81) pi r0^3, exact potential known in closed form.
/// Case 2: uniformly magnetized ball, M = (0,0,1), r0 = 1/2.  Exact energy
///         2 pi r0^3 / 9 = pi/36; potential M.x/3 inside, dipole outside.
/// Case 3: uniformly magnetized cube (-1/2,1/2)^3, M = (0,1,0).  Exact
///         energy 1/6; exact demagnetizing field by the cuboid closed form
///         (triple alternating sum of logs and arctans).

#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "strayfield/coefficients.hpp"
#include "strayfield/quadrature.hpp"
#include "strayfield/solver.hpp"

namespace strayfield {

struct BenchmarkCase {
  int id = 0;
  std::string name;
  SampleDomain domain;
  MagnetizationField field;
  double exact_energy = 0.0;
  std::function<double(const Vec3&)> exact_potential;  // null when unknown
  std::function<Vec3(const Vec3&)> exact_strayfield;   // null when unknown
};

/// Spherical unit vectors in the physics convention (theta = polar angle):
///   e_theta = (cos th cos ph, cos th sin ph, -sin th),
///   e_phi   = (-sin ph, cos ph, 0).
inline BenchmarkCase case_example1() {
  const double r0 = 0.5;
  BenchmarkCase c;
  c.id = 1;
  c.name = "tangential ball";
  c.domain = SampleDomain::make_ball(r0);
  c.field.evaluator = [](const Vec3& x) -> Vec3 {
    const double rho = std::hypot(x[0], x[1]);
    const double r = std::hypot(rho, x[2]);
    const double ct = (r > 0.0) ? x[2] / r : 1.0;
    const double st = (r > 0.0) ? rho / r : 0.0;
    const double cp = (rho > 0.0) ? x[0] / rho : 1.0;
    const double sp = (rho > 0.0) ? x[1] / rho : 0.0;
    // M = cos(th) e_phi + sin(th) e_th
    return {ct * (-sp) + st * (ct * cp), ct * cp + st * (ct * sp), st * (-st)};
  };
  c.field.divergence_free_tangential = true;
  c.exact_energy = 16.0 / 81.0 * std::numbers::pi * r0 * r0 * r0;
  c.exact_potential = [r0](const Vec3& x) {
    const double r = norm(x);
    const double z = x[2];
    if (r <= r0) {
      if (r == 0.0) return 0.0;
      return -2.0 * z / 9.0 + 2.0 * z / 3.0 * std::log(r / r0);
    }
    return -2.0 * r0 * r0 * r0 * z / (9.0 * r * r * r);
  };
  return c;
}

inline BenchmarkCase case_example2() {
  const double r0 = 0.5;
  const Vec3 m0 = {0.0, 0.0, 1.0};
  BenchmarkCase c;
  c.id = 2;
  c.name = "uniform ball";
  c.domain = SampleDomain::make_ball(r0);
  c.field = constant_field(m0);
  c.exact_energy = 2.0 * std::numbers::pi * dot(m0, m0) * r0 * r0 * r0 / 9.0;
  c.exact_potential = [r0, m0](const Vec3& x) {
    const double r = norm(x);
    if (r < r0) return dot(m0, x) / 3.0;
    return r0 * r0 * r0 / 3.0 * dot(m0, x) / (r * r * r);
  };
  c.exact_strayfield = [r0, m0](const Vec3& x) -> Vec3 {
    const double r = norm(x);
    if (r < r0) return {-m0[0] / 3.0, -m0[1] / 3.0, -m0[2] / 3.0};
    const double r3 = r * r * r, r5 = r3 * r * r;
    const double mdx = dot(m0, x);
    Vec3 h;
    for (int i = 0; i < 3; ++i)
      h[i] = -r0 * r0 * r0 / 3.0 * (m0[i] / r3 - 3.0 * mdx * x[i] / r5);
    return h;
  };
  return c;
}

/// Demagnetizing field of a cube (-g,g)^3 uniformly magnetized along y,
/// as a triple alternating sum over the corner offsets.
inline Vec3 cuboid_strayfield(const Vec3& x, double g) {
  double hx = 0.0, hy = 0.0, hz = 0.0;
  for (int k = 1; k <= 2; ++k)
    for (int l = 1; l <= 2; ++l)
      for (int m = 1; m <= 2; ++m) {
        const double sgn = ((k + l + m) % 2 == 0) ? 1.0 : -1.0;
        const double ax = x[0] + ((k % 2 == 0) ? g : -g);
        const double ay = x[1] + ((l % 2 == 0) ? g : -g);
        const double az = x[2] + ((m % 2 == 0) ? g : -g);
        const double rho = std::sqrt(ax * ax + ay * ay + az * az);
        hx += sgn * std::log(az + rho);
        hy -= sgn * std::atan2(ax * az, ay * rho);
        hz += sgn * std::log(ax + rho);
      }
  const double f = 1.0 / (4.0 * std::numbers::pi);
  return {f * hx, f * hy, f * hz};
}

inline BenchmarkCase case_example3() {
  const double g = 0.5;
  BenchmarkCase c;
  c.id = 3;
  c.name = "uniform cube";
  c.domain = SampleDomain::make_box({-g, -g, -g}, {g, g, g});
  c.field = constant_field({0.0, 1.0, 0.0});
  c.exact_energy = 1.0 / 6.0;
  c.exact_strayfield = [g](const Vec3& x) { return cuboid_strayfield(x, g); };
  return c;
}

inline BenchmarkCase benchmark_case(int id) {
  switch (id) {
    case 1: return case_example1();
    case 2: return case_example2();
    case 3: return case_example3();
    default: throw std::invalid_argument("benchmark id must be 1, 2 or 3");
  }
}

struct ConvergenceRow {
  int N = 0;
  double energy = 0.0;
  double rel_energy_err = 0.0;
  double e0 = 0.0;
};

/// Coefficient table for a benchmark at degree n_max under the resolution
/// policy (Example 1/2 through the ball-tensor path, Example 3 through the
/// surface path).
inline CoefficientTable bench_table(const BenchmarkCase& c, int n_max,
                                    const QuadratureResolution& res = {}, double mu0 = 1.0) {
  return compute_coefficients(c.field, c.domain, res, n_max, mu0);
}

/// One row per requested N, all sharing the coefficient table computed once
/// at n_max = max(N_list).
inline std::vector<ConvergenceRow> run_convergence(const BenchmarkCase& c,
                                                   const std::vector<int>& n_list,
                                                   const QuadratureResolution& res = {},
                                                   const CoefficientTable* shared_table = nullptr,
                                                   double mu0 = 1.0) {
  if (n_list.empty()) throw std::invalid_argument("run_convergence: empty N list");
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1])
      throw std::invalid_argument("run_convergence: N list must be ascending");
  CoefficientTable local;
  const CoefficientTable* table = shared_table;
  if (!table) {
    local = bench_table(c, n_list.back(), res, mu0);
    table = &local;
  }
  if (table->n_max < n_list.back())
    throw std::invalid_argument("run_convergence: table degree below max N");
  const EnergyBreakdown bd = energy_breakdown(*table);
  std::vector<ConvergenceRow> rows;
  rows.reserve(n_list.size());
  for (int N : n_list) {
    ConvergenceRow row;
    row.N = N;
    row.energy = bd.cumulative[N];
    const double gap = c.exact_energy - row.energy;
    row.rel_energy_err = gap / c.exact_energy;
    row.e0 = std::sqrt(std::max(gap, 0.0) / c.exact_energy);
    rows.push_back(row);
  }
  return rows;
}

/// Least-squares slope of log(err) against log(N).
inline double fit_log_slope(const std::vector<int>& ns, const std::vector<double>& errs) {
  if (ns.size() != errs.size() || ns.size() < 3)
    throw std::invalid_argument("fit_log_slope: need at least 3 matching points");
  const std::size_t n = ns.size();
  double mx = 0.0, my = 0.0;
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(errs[i] > 0.0)) throw std::invalid_argument("fit_log_slope: errors must be positive");
    xs[i] = std::log(double(ns[i]));
    ys[i] = std::log(errs[i]);
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

struct SlopeSummary {
  double energy_slope = 0.0;
  double e0_slope = 0.0;
};

inline SlopeSummary fit_slopes(const std::vector<ConvergenceRow>& rows) {
  std::vector<int> ns;
  std::vector<double> es, e0s;
  for (const auto& r : rows) {
    ns.push_back(r.N);
    es.push_back(r.rel_energy_err);
    e0s.push_back(r.e0);
  }
  return {fit_log_slope(ns, es), fit_log_slope(ns, e0s)};
}

namespace detail {

inline std::string format_full(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

/// CSV emission: one '#' comment line embedding the resolved config, a
/// header, then 17-significant-digit rows.
inline void write_convergence_csv(const std::string& path,
                                  const std::vector<ConvergenceRow>& rows,
                                  const nlohmann::json& config) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "# config: " << config.dump() << "\n";
  out << "N,E_N,rel_energy_err,e0\n";
  for (const auto& r : rows)
    out << r.N << "," << detail::format_full(r.energy) << ","
        << detail::format_full(r.rel_energy_err) << "," << detail::format_full(r.e0) << "\n";
}

inline nlohmann::json convergence_json(const std::vector<ConvergenceRow>& rows,
                                       const nlohmann::json& config, double exact_energy) {
  nlohmann::json jrows = nlohmann::json::array();
  for (const auto& r : rows)
    jrows.push_back({{"N", r.N},
                     {"E_N", r.energy},
                     {"rel_energy_err", r.rel_energy_err},
                     {"e0", r.e0}});
  nlohmann::json j = {{"config", config}, {"exact_energy", exact_energy}, {"rows", jrows}};
  if (rows.size() >= 3) {
    const SlopeSummary s = fit_slopes(rows);
    j["slopes"] = {{"energy", s.energy_slope}, {"e0", s.e0_slope}};
  }
  return j;
}

inline void write_convergence_json(const std::string& path,
                                   const std::vector<ConvergenceRow>& rows,
                                   const nlohmann::json& config, double exact_energy) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << convergence_json(rows, config, exact_energy).dump(1) << "\n";
}

}  // namespace strayfield
