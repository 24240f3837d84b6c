#pragma once

/// \file solver.hpp
/// Truncated stray-field energy, truncated potential, and pointwise field
/// evaluation from a table of basis coefficients.
///
/// With c_alpha = int_Omega M . grad W_alpha dx and d_k = (2k+1)(2k+3),
///   E_N   = sum_{k<=N} (2 mu0 / d_k) sum_{alpha in block k} c_alpha^2,
///   U_N(x)= sum_{k<=N} sum_alpha (4 / d_k) c_alpha W_alpha(x),
///   H_d   = -grad U_N.
/// The discrete problem behind U_N is diagonal: X = D B with
/// D = diag(4/d_k); series_coefficient() is exactly that solve.

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "strayfield/basis.hpp"
#include "strayfield/kahan.hpp"
#include "strayfield/multi_index.hpp"

namespace strayfield {

/// (2k+1)(2k+3); equal to 4(k+1)^2 - 1 (asserted for k <= 100 in the tests).
inline double degree_eigenvalue(int k) { return (2.0 * k + 1.0) * (2.0 * k + 3.0); }

/// Coefficient table for all alpha with degree <= n_max, in flat_index order.
struct CoefficientTable {
  int n_max = -1;
  double mu0 = 1.0;
  std::vector<double> values;

  double at(const MultiIndex& a) const {
    require_valid(a);
    if (a.k > n_max) throw std::out_of_range("CoefficientTable: degree exceeds n_max");
    return values[static_cast<std::size_t>(flat_index(a))];
  }

  double& at(const MultiIndex& a) {
    require_valid(a);
    if (a.k > n_max) throw std::out_of_range("CoefficientTable: degree exceeds n_max");
    return values[static_cast<std::size_t>(flat_index(a))];
  }

  std::size_t size() const { return values.size(); }
};

inline CoefficientTable make_zero_table(int n_max, double mu0 = 1.0) {
  CoefficientTable t;
  t.n_max = n_max;
  t.mu0 = mu0;
  t.values.assign(static_cast<std::size_t>(index_count(n_max)), 0.0);
  return t;
}

/// Per-degree contributions and running truncations of the energy.
struct EnergyBreakdown {
  std::vector<double> per_degree;  // 2 mu0/d_k * sum of c^2 over block k
  std::vector<double> cumulative;  // E_N for N = 0..n_max
};

/// Accumulation order: increasing k, lexicographic alpha inside a block,
/// compensated; table comparisons at 7+ digits rely on this being fixed.
inline EnergyBreakdown energy_breakdown(const CoefficientTable& table) {
  EnergyBreakdown out;
  out.per_degree.resize(table.n_max + 1);
  out.cumulative.resize(table.n_max + 1);
  KahanSum running;
  std::size_t pos = 0;
  for (int k = 0; k <= table.n_max; ++k) {
    KahanSum block;
    const std::size_t count = static_cast<std::size_t>(degree_block_size(k));
    for (std::size_t i = 0; i < count; ++i, ++pos)
      block += table.values[pos] * table.values[pos];
    out.per_degree[k] = 2.0 * table.mu0 / degree_eigenvalue(k) * block.value();
    running += out.per_degree[k];
    out.cumulative[k] = running.value();
  }
  return out;
}

/// Truncated energy E_N; bitwise equal to energy_breakdown().cumulative[N].
inline double energy(const CoefficientTable& table, int N) {
  if (N < 0 || N > table.n_max) throw std::out_of_range("energy: N outside 0..n_max");
  return energy_breakdown(table).cumulative[N];
}

/// Solution coefficient of the diagonal system, x_alpha = (4/d_k) c_alpha.
inline double series_coefficient(const CoefficientTable& table, const MultiIndex& a) {
  return 4.0 / degree_eigenvalue(a.k) * table.at(a);
}

/// Diagonal of the discrete system in flat order, diag(4/d_k).
inline std::vector<double> diagonal_solve_matrix(int n_max) {
  std::vector<double> d(static_cast<std::size_t>(index_count(n_max)));
  std::size_t pos = 0;
  for (int k = 0; k <= n_max; ++k) {
    const double v = 4.0 / degree_eigenvalue(k);
    for (std::int64_t i = 0; i < degree_block_size(k); ++i) d[pos++] = v;
  }
  return d;
}

/// Truncated potential U_N at a point.
inline double potential_eval(const CoefficientTable& table, int N, const Vec3& x) {
  if (N < 0 || N > table.n_max) throw std::out_of_range("potential_eval: N outside 0..n_max");
  KahanSum acc;
  std::size_t pos = 0;
  for (int k = 0; k <= N; ++k) {
    const double scale = 4.0 / degree_eigenvalue(k);
    for (int l = 0; l <= k; ++l)
      for (int m = -l; m <= l; ++m, ++pos)
        acc += scale * table.values[pos] * w_alpha({k, l, m}, x);
  }
  return acc.value();
}

/// Stray field H_d = -grad U_N at a point.
inline Vec3 strayfield_eval(const CoefficientTable& table, int N, const Vec3& x) {
  if (N < 0 || N > table.n_max) throw std::out_of_range("strayfield_eval: N outside 0..n_max");
  KahanSum acc[3];
  std::size_t pos = 0;
  for (int k = 0; k <= N; ++k) {
    const double scale = 4.0 / degree_eigenvalue(k);
    for (int l = 0; l <= k; ++l)
      for (int m = -l; m <= l; ++m, ++pos) {
        const GradientSample g = grad_w_alpha({k, l, m}, x);
        for (int i = 0; i < 3; ++i) acc[i] += scale * table.values[pos] * g.grad[i];
      }
  }
  return {-acc[0].value(), -acc[1].value(), -acc[2].value()};
}

/// Error split against a known exact energy:
///   abs = E - E_N, rel = abs/E, e0 = sqrt(max(abs,0)/E).
/// e0 is the relative energy-norm error of the stray field; the identity
/// E - E_N = (mu0/2) |U - U_N|^2 makes it the square root of rel.
struct EnergyErrorSplit {
  double abs_err = 0.0;
  double rel_err = 0.0;
  double e0 = 0.0;
};

inline EnergyErrorSplit energy_error_split(const CoefficientTable& table, double exact_energy,
                                           int N) {
  if (!(exact_energy > 0.0))
    throw std::invalid_argument("energy_error_split: exact energy must be positive");
  const double e_n = energy(table, N);
  EnergyErrorSplit out;
  out.abs_err = exact_energy - e_n;
  out.rel_err = out.abs_err / exact_energy;
  out.e0 = std::sqrt(std::max(out.abs_err, 0.0) / exact_energy);
  return out;
}

/// JSON form: {"n_max": int, "mu0": real, "coeffs": [{"k","l","m","c"}...]}.
/// Doubles survive the round trip bit-exactly (shortest-representation
/// serialization).  Extra top-level keys (e.g. embedded run config) are
/// preserved on write and ignored on read.
inline nlohmann::json to_json(const CoefficientTable& table) {
  nlohmann::json coeffs = nlohmann::json::array();
  std::size_t pos = 0;
  for (int k = 0; k <= table.n_max; ++k)
    for (int l = 0; l <= k; ++l)
      for (int m = -l; m <= l; ++m, ++pos)
        coeffs.push_back({{"k", k}, {"l", l}, {"m", m}, {"c", table.values[pos]}});
  return {{"n_max", table.n_max}, {"mu0", table.mu0}, {"coeffs", std::move(coeffs)}};
}

inline CoefficientTable table_from_json(const nlohmann::json& j) {
  CoefficientTable t = make_zero_table(j.at("n_max").get<int>(), j.at("mu0").get<double>());
  for (const auto& e : j.at("coeffs")) {
    const MultiIndex a{e.at("k").get<int>(), e.at("l").get<int>(), e.at("m").get<int>()};
    t.at(a) = e.at("c").get<double>();
  }
  return t;
}

inline void save_coefficient_table(const std::string& path, const CoefficientTable& table,
                                   const nlohmann::json& config = nlohmann::json()) {
  nlohmann::json j = to_json(table);
  if (!config.is_null()) j["config"] = config;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(1) << "\n";
}

inline CoefficientTable load_coefficient_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  nlohmann::json j;
  in >> j;
  return table_from_json(j);
}

}  // namespace strayfield
