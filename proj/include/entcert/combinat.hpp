#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace entcert {

/// Binomial coefficient C(n,k), saturating at uint64 max instead of wrapping.
inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (2 * k > n) k = n - k;
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    std::uint64_t f = static_cast<std::uint64_t>(n - k + i);
    if (r > kMax / f) return kMax;
    r = r * f / static_cast<std::uint64_t>(i);
  }
  return r;
}

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  if (b != 0 && a > kMax / b) return kMax;
  return a * b;
}

/// b^e with saturation at uint64 max.
inline std::uint64_t saturating_pow(std::uint64_t b, std::uint64_t e) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (b != 0 && r > kMax / b) return kMax;
    r *= b;
  }
  return r;
}

/// Nondecreasing tuple of local indices in [0, d); labels one column of a
/// level-k system.
using MultisetIndex = std::vector<int>;

/// Strictly increasing tuple in [0, d); labels one wedge-basis vector.
using WedgeIndex = std::vector<int>;

/// All nondecreasing length-`len` tuples over [0, d), in lexicographic order.
/// Exactly C(d + len - 1, len) of them.
inline std::vector<MultisetIndex> enumerate_multisets(int d, int len) {
  if (d < 1 || len < 1) throw std::invalid_argument("enumerate_multisets: d and len must be >= 1");
  std::vector<MultisetIndex> out;
  MultisetIndex cur(static_cast<std::size_t>(len), 0);
  while (true) {
    out.push_back(cur);
    int i = len - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == d - 1) --i;
    if (i < 0) break;
    int v = ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < len; ++j) cur[static_cast<std::size_t>(j)] = v;
  }
  return out;
}

/// All strictly increasing length-`len` tuples over [0, d), lexicographic.
/// Empty when len > d (the antisymmetric subspace is trivial there).
inline std::vector<WedgeIndex> enumerate_wedge(int d, int len) {
  if (d < 1 || len < 1) throw std::invalid_argument("enumerate_wedge: d and len must be >= 1");
  std::vector<WedgeIndex> out;
  if (len > d) return out;
  WedgeIndex cur(static_cast<std::size_t>(len));
  for (int i = 0; i < len; ++i) cur[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(cur);
    int i = len - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == d - len + i) --i;
    if (i < 0) break;
    int v = ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < len; ++j) cur[static_cast<std::size_t>(j)] = v + (j - i);
  }
  return out;
}

/// Distinct orderings of a multiset, each carrying weight 1/#orderings.
/// Averaging a tensor product over these orderings realizes the symmetrizer
/// without ever forming it as a matrix.
struct MultisetOrderings {
  std::vector<std::vector<int>> orderings;  // lexicographic, starts at the sorted tuple
  std::uint64_t weight_denominator = 1;     // each ordering has weight 1/weight_denominator
};

inline MultisetOrderings permutations_of_multiset(const MultisetIndex& m) {
  if (m.empty()) throw std::invalid_argument("permutations_of_multiset: empty multiset");
  if (!std::is_sorted(m.begin(), m.end()))
    throw std::invalid_argument("permutations_of_multiset: entries must be nondecreasing");
  MultisetOrderings out;
  std::vector<int> cur = m;
  do {
    out.orderings.push_back(cur);
  } while (std::next_permutation(cur.begin(), cur.end()));
  out.weight_denominator = out.orderings.size();
  return out;
}

}  // namespace entcert
