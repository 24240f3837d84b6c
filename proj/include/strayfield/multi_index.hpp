#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace strayfield {

/// Basis label alpha = (k, l, m) with 0 <= l <= k and -l <= m <= l.
struct MultiIndex {
  int k = 0;
  int l = 0;
  int m = 0;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

inline bool is_valid(const MultiIndex& a) {
  return a.k >= 0 && a.l >= 0 && a.l <= a.k && a.m >= -a.l && a.m <= a.l;
}

inline void require_valid(const MultiIndex& a) {
  if (!is_valid(a))
    throw std::invalid_argument("multi-index (" + std::to_string(a.k) + "," +
                                std::to_string(a.l) + "," +
                                std::to_string(a.m) + ") outside index set");
}

/// Number of indices with first entry exactly k: (k+1)^2.
inline std::int64_t degree_block_size(int k) {
  return std::int64_t(k + 1) * std::int64_t(k + 1);
}

/// Number of indices with first entry <= N: (N+1)(N+2)(2N+3)/6.
inline std::int64_t index_count(int n_max) {
  const std::int64_t n = n_max;
  return (n + 1) * (n + 2) * (2 * n + 3) / 6;
}

/// Position of alpha in the lexicographic (k, l, m) enumeration.
/// Within one k block the offset is l*(l+1) + m.
inline std::int64_t flat_index(const MultiIndex& a) {
  const std::int64_t k = a.k;
  return k * (k + 1) * (2 * k + 1) / 6 + std::int64_t(a.l) * (a.l + 1) + a.m;
}

/// All indices of degree exactly k, lexicographic in (l, m).
inline std::vector<MultiIndex> degree_block(int k) {
  std::vector<MultiIndex> out;
  out.reserve(static_cast<std::size_t>(degree_block_size(k)));
  for (int l = 0; l <= k; ++l)
    for (int m = -l; m <= l; ++m) out.push_back({k, l, m});
  return out;
}

/// All indices of degree <= n_max, lexicographic in (k, l, m).
inline std::vector<MultiIndex> index_range(int n_max) {
  std::vector<MultiIndex> out;
  out.reserve(static_cast<std::size_t>(index_count(n_max)));
  for (int k = 0; k <= n_max; ++k)
    for (int l = 0; l <= k; ++l)
      for (int m = -l; m <= l; ++m) out.push_back({k, l, m});
  return out;
}

}  // namespace strayfield
