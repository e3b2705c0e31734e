#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "entcert/combinat.hpp"
#include "entcert/scalar.hpp"
#include "entcert/tensor_space.hpp"

namespace entcert {

namespace detail {

/// Determinant by Laplace expansion along the first row. The slices taken
/// here never exceed a handful of rows, and this avoids divisions so the
/// same code is exact over the rationals.
template <class S>
S laplace_det(const std::vector<S>& m, int n) {
  if (n == 1) return m[0];
  if (n == 2) return m[0] * m[3] - m[1] * m[2];
  if (n == 3)
    return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
  S acc = ScalarOps<S>::zero();
  std::vector<S> minor(static_cast<std::size_t>((n - 1) * (n - 1)));
  for (int c = 0; c < n; ++c) {
    if (ScalarOps<S>::is_zero(m[static_cast<std::size_t>(c)])) continue;
    for (int i = 1; i < n; ++i) {
      int mj = 0;
      for (int j = 0; j < n; ++j) {
        if (j == c) continue;
        minor[static_cast<std::size_t>((i - 1) * (n - 1) + mj)] =
            m[static_cast<std::size_t>(i * n + j)];
        ++mj;
      }
    }
    S term = m[static_cast<std::size_t>(c)] * laplace_det(minor, n - 1);
    if (c % 2 == 0)
      acc += term;
    else
      acc -= term;
  }
  return acc;
}

}  // namespace detail

/// Coordinates of (P-wedge tensor P-wedge) applied to x_1 (x) ... (x) x_{r+1},
/// indexed by pairs of strictly increasing tuples (S over the A side, T over
/// the B side), A-major. The coordinate convention expands the projected
/// vector over the unnormalized wedge differences e_S (x) e_T; the scalar is
/// fixed so that for the two-qubit Bell state and r = 1 the single surviving
/// coordinate is 1/4. Only the zero pattern feeds the certification verdicts.
///
/// Each coordinate is a sum of products of (r+1)x(r+1) minors: writing X_t for
/// the d_A x d_B reshape of x_t,
///
///   coord(S, T) = sum over distinct row assignments d of
///                 det[ X_{d(t)}[S_t, T_u] ]_{t,u}  /  ((r+1)! * #assignments)
///
/// which collapses to det(X[S, T]) / (r+1)! when all inputs coincide, so the
/// coordinates vanish exactly when every (r+1)x(r+1) minor of X does, i.e.
/// when the Schmidt rank is at most r.
template <class S>
std::vector<S> apply_antisym_pair(int d_A, int d_B, const std::vector<std::vector<S>>& xs) {
  const int n = static_cast<int>(xs.size());
  if (n < 1) throw std::invalid_argument("apply_antisym_pair: no input vectors");
  for (const auto& x : xs)
    if (x.size() != static_cast<std::size_t>(d_A) * static_cast<std::size_t>(d_B))
      throw std::invalid_argument("apply_antisym_pair: vector length != d_A * d_B");
  const auto wedge_a = enumerate_wedge(d_A, n);
  const auto wedge_b = enumerate_wedge(d_B, n);
  std::vector<S> coords(wedge_a.size() * wedge_b.size(), ScalarOps<S>::zero());
  if (coords.empty()) return coords;  // antisymmetric space is trivial

  // Distinct assignments of the inputs to the slice rows; equal inputs are
  // collapsed into classes so repeated vectors are not re-enumerated.
  std::vector<int> class_of(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    class_of[static_cast<std::size_t>(i)] = i;
    for (int j = 0; j < i; ++j)
      if (xs[static_cast<std::size_t>(j)] == xs[static_cast<std::size_t>(i)]) {
        class_of[static_cast<std::size_t>(i)] = class_of[static_cast<std::size_t>(j)];
        break;
      }
  }
  std::vector<int> order = class_of;
  std::sort(order.begin(), order.end());
  std::vector<std::vector<int>> assignments;
  do {
    assignments.push_back(order);
  } while (std::next_permutation(order.begin(), order.end()));

  std::uint64_t fact = 1;
  for (int i = 2; i <= n; ++i) fact *= static_cast<std::uint64_t>(i);
  const std::uint64_t denom = fact * assignments.size();

  std::vector<S> slice(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (const auto& asg : assignments) {
    std::size_t out = 0;
    for (const auto& sa : wedge_a) {
      for (const auto& tb : wedge_b) {
        for (int t = 0; t < n; ++t) {
          const auto& x = xs[static_cast<std::size_t>(asg[static_cast<std::size_t>(t)])];
          for (int u = 0; u < n; ++u)
            slice[static_cast<std::size_t>(t * n + u)] =
                x[static_cast<std::size_t>(sa[static_cast<std::size_t>(t)]) * d_B +
                  static_cast<std::size_t>(tb[static_cast<std::size_t>(u)])];
        }
        coords[out] += detail::laplace_det(slice, n);
        ++out;
      }
    }
  }
  for (auto& c : coords) c = ScalarOps<S>::div_int(c, denom);
  return coords;
}

/// Dimensions of one level of the bipartite hierarchy.
struct BipartiteLevelShape {
  int d_A = 0;
  int d_B = 0;
  int r = 1;
  int k = 1;

  std::uint64_t nominal_rows() const {
    const std::uint64_t wedge_pairs = saturating_mul(binomial(d_A, r + 1), binomial(d_B, r + 1));
    const std::uint64_t trail = saturating_pow(static_cast<std::uint64_t>(d_A) * d_B,
                                               static_cast<std::uint64_t>(k - 1));
    return saturating_mul(wedge_pairs, trail);
  }

  std::uint64_t columns_for(int d_S) const { return binomial(d_S + r + k - 1, r + k); }
};

namespace detail {

/// Trailing identity-factor tensor: accumulates weight * product of the
/// trailing vectors' amplitudes over the flat index of H^(k-1).
template <class S>
void accumulate_trailing(std::vector<S>& g, const std::vector<const std::vector<S>*>& trailing,
                         std::int64_t dim_h, const S& weight) {
  std::vector<S> t{weight};
  t.reserve(g.size());
  for (const auto* vec : trailing) {
    std::vector<S> next(t.size() * static_cast<std::size_t>(dim_h), ScalarOps<S>::zero());
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (ScalarOps<S>::is_zero(t[i])) continue;
      for (std::int64_t j = 0; j < dim_h; ++j) {
        const S& a = (*vec)[static_cast<std::size_t>(j)];
        if (ScalarOps<S>::is_zero(a)) continue;
        next[i * static_cast<std::size_t>(dim_h) + static_cast<std::size_t>(j)] = t[i] * a;
      }
    }
    t = std::move(next);
  }
  for (std::size_t i = 0; i < g.size(); ++i) g[i] += t[i];
}

}  // namespace detail

/// Builder for the columns of one bipartite level-k system. The symmetrizer
/// is realized by averaging over the distinct orderings of the multiset, the
/// wedge pair by apply_antisym_pair on the leading r+1 factors, and the
/// identity by the trailing amplitude products; no projector matrix is ever
/// materialized. Row order is (wedge_A x wedge_B) major, trailing flat minor.
template <class S>
class BipartiteLevelSystem {
 public:
  explicit BipartiteLevelSystem(BipartiteLevelShape shape)
      : shape_(shape),
        wedge_a_(enumerate_wedge(shape.d_A, shape.r + 1)),
        wedge_b_(enumerate_wedge(shape.d_B, shape.r + 1)),
        dim_h_(static_cast<std::int64_t>(shape.d_A) * shape.d_B),
        trailing_dim_(1) {
    if (shape.r < 1 || shape.k < 1)
      throw std::invalid_argument("BipartiteLevelSystem: r and k must be >= 1");
    for (int i = 1; i < shape.k; ++i) trailing_dim_ *= dim_h_;
  }

  const BipartiteLevelShape& shape() const { return shape_; }
  std::int64_t rows() const {
    return static_cast<std::int64_t>(wedge_a_.size() * wedge_b_.size()) * trailing_dim_;
  }
  bool trivial() const { return wedge_a_.empty() || wedge_b_.empty(); }

  /// One column: Phi applied to the symmetrized product labeled by the
  /// nondecreasing multiset m over the basis. Returns (row, value) pairs.
  std::vector<std::pair<std::int64_t, S>> column(const std::vector<std::vector<S>>& basis,
                                                 const MultisetIndex& m) const {
    const int lead = shape_.r + 1;
    if (static_cast<int>(m.size()) != shape_.r + shape_.k)
      throw std::invalid_argument("column: multiset length != r + k");
    std::vector<std::pair<std::int64_t, S>> out;
    if (trivial()) return out;

    const auto orderings = permutations_of_multiset(m);
    const S weight = ScalarOps<S>::div_int(ScalarOps<S>::one(), orderings.weight_denominator);

    // Group orderings by the sorted leading multiset; the antisymmetric
    // coordinates are invariant under reordering their inputs.
    std::map<std::vector<int>, std::vector<S>> trailing_by_lead;
    for (const auto& o : orderings.orderings) {
      std::vector<int> key(o.begin(), o.begin() + lead);
      std::sort(key.begin(), key.end());
      auto it = trailing_by_lead
                    .try_emplace(key, std::vector<S>(static_cast<std::size_t>(trailing_dim_),
                                                     ScalarOps<S>::zero()))
                    .first;
      std::vector<const std::vector<S>*> trailing;
      for (std::size_t i = static_cast<std::size_t>(lead); i < o.size(); ++i)
        trailing.push_back(&basis[static_cast<std::size_t>(o[i])]);
      detail::accumulate_trailing(it->second, trailing, dim_h_, weight);
    }

    std::vector<std::vector<S>> lead_vectors(static_cast<std::size_t>(lead));
    for (const auto& [key, g] : trailing_by_lead) {
      for (int t = 0; t < lead; ++t)
        lead_vectors[static_cast<std::size_t>(t)] = basis[static_cast<std::size_t>(key[static_cast<std::size_t>(t)])];
      const auto coords = apply_antisym_pair(shape_.d_A, shape_.d_B, lead_vectors);
      for (std::size_t p = 0; p < coords.size(); ++p) {
        if (ScalarOps<S>::is_zero(coords[p])) continue;
        for (std::int64_t f = 0; f < trailing_dim_; ++f) {
          const S& gf = g[static_cast<std::size_t>(f)];
          if (ScalarOps<S>::is_zero(gf)) continue;
          out.emplace_back(static_cast<std::int64_t>(p) * trailing_dim_ + f, coords[p] * gf);
        }
      }
    }
    return out;
  }

 private:
  BipartiteLevelShape shape_;
  std::vector<WedgeIndex> wedge_a_;
  std::vector<WedgeIndex> wedge_b_;
  std::int64_t dim_h_;
  std::int64_t trailing_dim_;
};

/// Spanning (or orthonormalized) vectors of the sum of wedge-product
/// subspaces whose kernel characterizes fully product vectors. Columns live
/// in the doubled space H (x) H, stored dense; the ambient dimension is the
/// square of the total dimension.
template <class S>
struct CesProjectorBasis {
  TensorSpace space;
  std::int64_t pair_dim = 0;              // (total dimension)^2
  std::vector<std::vector<S>> columns;    // float: orthonormal; rational: raw spanning set
  std::vector<std::vector<std::size_t>> cuts;  // left-party sets, one per summand
};

namespace detail {

/// The bipartition chain behind the product test: a vector is fully product
/// iff it is product across each listed cut. Three parties use the chain
/// {A | BC, AB | C}; four and more use the single-party cuts that isolate
/// every party but the last.
inline std::vector<std::vector<std::size_t>> ces_cut_chain(std::size_t parties) {
  if (parties < 3) throw std::invalid_argument("ces_cut_chain: need at least 3 parties");
  std::vector<std::vector<std::size_t>> cuts;
  if (parties == 3) {
    cuts.push_back({0});
    cuts.push_back({0, 1});
  } else {
    for (std::size_t i = 0; i + 1 < parties; ++i) cuts.push_back({i});
  }
  return cuts;
}

}  // namespace detail

/// Flat-index regrouping for a bipartition: party subset `left` becomes the
/// first factor. Returns {d_left, d_right, map} with map[original] = regrouped.
struct BipartitionMap {
  std::int64_t d_left = 0;
  std::int64_t d_right = 0;
  std::vector<std::int64_t> to_regrouped;
};

inline BipartitionMap bipartition_map(const TensorSpace& space,
                                      const std::vector<std::size_t>& left) {
  if (left.empty() || left.size() >= space.parties())
    throw std::invalid_argument("bipartition_map: left set must be a nonempty proper subset");
  std::vector<bool> is_left(space.parties(), false);
  for (std::size_t p : left) {
    if (p >= space.parties()) throw std::invalid_argument("bipartition_map: party out of range");
    is_left[p] = true;
  }
  BipartitionMap out;
  out.d_left = 1;
  out.d_right = 1;
  for (std::size_t p = 0; p < space.parties(); ++p)
    (is_left[p] ? out.d_left : out.d_right) *= space.dim(p);
  const std::int64_t total = space.total_dimension();
  out.to_regrouped.resize(static_cast<std::size_t>(total));
  for (std::int64_t flat = 0; flat < total; ++flat) {
    const auto multi = space.unflatten(flat);
    std::int64_t l = 0, r = 0;
    for (std::size_t p = 0; p < space.parties(); ++p) {
      if (is_left[p])
        l = l * space.dim(p) + multi[p];
      else
        r = r * space.dim(p) + multi[p];
    }
    out.to_regrouped[static_cast<std::size_t>(flat)] = l * out.d_right + r;
  }
  return out;
}

/// Spanning set of the non-direct sum of wedge-pair subspaces, one summand
/// per cut in the chain. Float mode orthonormalizes by modified Gram-Schmidt
/// with re-orthogonalization, truncating at relative tolerance 1e-12; exact
/// mode keeps the raw spanning set, whose joint inner products define the
/// same kernel (orthonormalization would leave the rational field).
template <class S>
CesProjectorBasis<S> build_ces_projector(const TensorSpace& space) {
  if (space.parties() < 3)
    throw std::invalid_argument("build_ces_projector: need at least 3 parties");
  for (std::size_t p = 0; p < space.parties(); ++p)
    if (space.dim(p) < 2)
      throw std::invalid_argument("build_ces_projector: degenerate party of dimension 1");

  const std::int64_t total = space.total_dimension();
  CesProjectorBasis<S> basis;
  basis.space = space;
  basis.pair_dim = total * total;
  basis.cuts = detail::ces_cut_chain(space.parties());

  const S half = ScalarOps<S>::div_int(ScalarOps<S>::one(), 2);
  for (const auto& cut : basis.cuts) {
    const auto map = bipartition_map(space, cut);
    std::vector<std::int64_t> from_regrouped(static_cast<std::size_t>(total));
    for (std::int64_t f = 0; f < total; ++f)
      from_regrouped[static_cast<std::size_t>(map.to_regrouped[static_cast<std::size_t>(f)])] = f;
    const auto flat_of = [&](std::int64_t l, std::int64_t r) {
      return from_regrouped[static_cast<std::size_t>(l * map.d_right + r)];
    };
    for (std::int64_t a0 = 0; a0 < map.d_left; ++a0)
      for (std::int64_t a1 = a0 + 1; a1 < map.d_left; ++a1)
        for (std::int64_t b0 = 0; b0 < map.d_right; ++b0)
          for (std::int64_t b1 = b0 + 1; b1 < map.d_right; ++b1) {
            std::vector<S> v(static_cast<std::size_t>(basis.pair_dim), ScalarOps<S>::zero());
            const auto put = [&](std::int64_t first, std::int64_t second, bool plus) {
              v[static_cast<std::size_t>(first * total + second)] = plus ? half : -half;
            };
            put(flat_of(a0, b0), flat_of(a1, b1), true);
            put(flat_of(a0, b1), flat_of(a1, b0), false);
            put(flat_of(a1, b0), flat_of(a0, b1), false);
            put(flat_of(a1, b1), flat_of(a0, b0), true);
            basis.columns.push_back(std::move(v));
          }
  }

  if constexpr (ScalarOps<S>::mode == ArithmeticMode::Float) {
    std::vector<std::vector<S>> ortho;
    for (auto& v : basis.columns) {
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& q : ortho) {
          S overlap = ScalarOps<S>::zero();
          for (std::size_t i = 0; i < v.size(); ++i) overlap += std::conj(q[i]) * v[i];
          for (std::size_t i = 0; i < v.size(); ++i) v[i] -= overlap * q[i];
        }
      }
      double norm = 0.0;
      for (const auto& c : v) norm += std::norm(c);
      norm = std::sqrt(norm);
      if (norm <= 1e-12) continue;  // inside the span already
      for (auto& c : v) c /= norm;
      ortho.push_back(std::move(v));
    }
    basis.columns = std::move(ortho);
  }
  return basis;
}

/// Coordinates of a doubled-space vector against the basis columns. The
/// coordinate map has the same kernel as the orthogonal projection onto the
/// summed subspace, which is all the certification needs.
template <class S>
std::vector<S> ces_coordinates(const CesProjectorBasis<S>& basis, const std::vector<S>& y) {
  if (y.size() != static_cast<std::size_t>(basis.pair_dim))
    throw std::invalid_argument("ces_coordinates: wrong ambient dimension");
  std::vector<S> coords(basis.columns.size(), ScalarOps<S>::zero());
  for (std::size_t j = 0; j < basis.columns.size(); ++j) {
    const auto& q = basis.columns[j];
    S acc = ScalarOps<S>::zero();
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (ScalarOps<S>::is_zero(q[i])) continue;
      acc += ScalarOps<S>::conj(q[i]) * y[i];
    }
    coords[j] = acc;
  }
  return coords;
}

/// Column builder for the multipartite completely-entangled-subspace
/// hierarchy: symmetrize k+1 copies, take CES coordinates on the leading
/// two, amplitudes on the rest. Row order is (basis column) major.
template <class S>
class CesLevelSystem {
 public:
  CesLevelSystem(const CesProjectorBasis<S>* basis, int k)
      : basis_(basis), k_(k), dim_h_(basis->space.total_dimension()), trailing_dim_(1) {
    if (k < 1) throw std::invalid_argument("CesLevelSystem: k must be >= 1");
    for (int i = 1; i < k; ++i) trailing_dim_ *= dim_h_;
  }

  std::int64_t rows() const {
    return static_cast<std::int64_t>(basis_->columns.size()) * trailing_dim_;
  }
  std::uint64_t columns_for(int d_S) const { return binomial(d_S + k_, k_ + 1); }

  std::vector<std::pair<std::int64_t, S>> column(const std::vector<std::vector<S>>& subspace,
                                                 const MultisetIndex& m) const {
    if (static_cast<int>(m.size()) != k_ + 1)
      throw std::invalid_argument("column: multiset length != k + 1");
    const auto orderings = permutations_of_multiset(m);
    const S weight = ScalarOps<S>::div_int(ScalarOps<S>::one(), orderings.weight_denominator);

    std::map<std::pair<int, int>, std::vector<S>> trailing_by_lead;
    for (const auto& o : orderings.orderings) {
      std::pair<int, int> key{std::min(o[0], o[1]), std::max(o[0], o[1])};
      auto it = trailing_by_lead
                    .try_emplace(key, std::vector<S>(static_cast<std::size_t>(trailing_dim_),
                                                     ScalarOps<S>::zero()))
                    .first;
      std::vector<const std::vector<S>*> trailing;
      for (std::size_t i = 2; i < o.size(); ++i)
        trailing.push_back(&subspace[static_cast<std::size_t>(o[i])]);
      detail::accumulate_trailing(it->second, trailing, dim_h_, weight);
    }

    std::vector<std::pair<std::int64_t, S>> out;
    std::vector<S> y(static_cast<std::size_t>(basis_->pair_dim));
    for (const auto& [key, g] : trailing_by_lead) {
      // Basis columns are invariant under swapping the two copies, so the
      // coordinates of x_a (x) x_b already match the symmetrized pair.
      const auto& xa = subspace[static_cast<std::size_t>(key.first)];
      const auto& xb = subspace[static_cast<std::size_t>(key.second)];
      for (std::int64_t u = 0; u < dim_h_; ++u)
        for (std::int64_t v = 0; v < dim_h_; ++v)
          y[static_cast<std::size_t>(u * dim_h_ + v)] =
              xa[static_cast<std::size_t>(u)] * xb[static_cast<std::size_t>(v)];
      const auto coords = ces_coordinates(*basis_, y);
      for (std::size_t p = 0; p < coords.size(); ++p) {
        if (ScalarOps<S>::is_zero(coords[p])) continue;
        for (std::int64_t f = 0; f < trailing_dim_; ++f) {
          const S& gf = g[static_cast<std::size_t>(f)];
          if (ScalarOps<S>::is_zero(gf)) continue;
          out.emplace_back(static_cast<std::int64_t>(p) * trailing_dim_ + f, coords[p] * gf);
        }
      }
    }
    return out;
  }

 private:
  const CesProjectorBasis<S>* basis_;
  int k_;
  std::int64_t dim_h_;
  std::int64_t trailing_dim_;
};

}  // namespace entcert
