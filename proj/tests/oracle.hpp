// Dense brute-force constructions of the projector maps, used only to check
// the sparse implicit columns. Everything here materializes full matrices and
// is deliberately independent of the library's minor-based evaluation path.
#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <numeric>
#include <vector>

#include "entcert/projectors.hpp"
#include "entcert/scalar.hpp"
#include "entcert/tensor_space.hpp"

namespace oracle {

using entcert::Complexd;
using EMat = Eigen::MatrixXcd;
using EVec = Eigen::VectorXcd;

inline std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

inline std::vector<int> digits(std::int64_t flat, std::int64_t base, int n) {
  std::vector<int> d(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    d[static_cast<std::size_t>(i)] = static_cast<int>(flat % base);
    flat /= base;
  }
  return d;
}

inline std::int64_t undigits(const std::vector<int>& d, std::int64_t base) {
  std::int64_t flat = 0;
  for (int v : d) flat = flat * base + v;
  return flat;
}

/// All permutations of {0..n-1} with signs.
inline std::vector<std::pair<std::vector<int>, double>> permutations_with_sign(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::pair<std::vector<int>, double>> out;
  do {
    // Count inversions for the sign.
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(j)]) ++inv;
    out.emplace_back(p, inv % 2 == 0 ? 1.0 : -1.0);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Projector onto the antisymmetric (signed) or symmetric (unsigned)
/// subspace of n copies of a base-dimensional space.
inline EMat permutation_average(std::int64_t base, int n, bool signed_sum) {
  const std::int64_t dim = ipow(base, n);
  EMat p = EMat::Zero(dim, dim);
  const auto perms = permutations_with_sign(n);
  for (std::int64_t col = 0; col < dim; ++col) {
    const auto idx = digits(col, base, n);
    for (const auto& [perm, sign] : perms) {
      std::vector<int> moved(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i)
        moved[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] =
            idx[static_cast<std::size_t>(i)];
      p(undigits(moved, base), col) += (signed_sum ? sign : 1.0) / perms.size();
    }
  }
  return p;
}

inline EMat antisym_projector(std::int64_t base, int n) {
  return permutation_average(base, n, true);
}
inline EMat sym_projector(std::int64_t base, int n) {
  return permutation_average(base, n, false);
}

inline EMat kron(const EMat& a, const EMat& b) {
  EMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Permutation matrix regrouping (H_A (x) H_B)^(r+k) into
/// H_A^(r+1) (x) H_B^(r+1) (x) (H_A (x) H_B)^(k-1).
inline EMat regroup_matrix(int d_a, int d_b, int r, int k) {
  const std::int64_t d = static_cast<std::int64_t>(d_a) * d_b;
  const int n = r + k;
  const std::int64_t dim = ipow(d, n);
  const std::int64_t db_pow = ipow(d_b, r + 1);
  const std::int64_t trail_pow = ipow(d, k - 1);
  EMat p = EMat::Zero(dim, dim);
  for (std::int64_t col = 0; col < dim; ++col) {
    const auto copies = digits(col, d, n);
    std::int64_t aflat = 0, bflat = 0, trail = 0;
    for (int t = 0; t <= r; ++t) {
      aflat = aflat * d_a + copies[static_cast<std::size_t>(t)] / d_b;
      bflat = bflat * d_b + copies[static_cast<std::size_t>(t)] % d_b;
    }
    for (int t = r + 1; t < n; ++t) trail = trail * d + copies[static_cast<std::size_t>(t)];
    p((aflat * db_pow + bflat) * trail_pow + trail, col) = 1.0;
  }
  return p;
}

/// The full level map as a dense matrix from (H_A (x) H_B)^(r+k) into the
/// regrouped space: (antisym (x) antisym (x) identity) . regroup . symmetrize.
inline EMat dense_level_map(int d_a, int d_b, int r, int k) {
  const std::int64_t d = static_cast<std::int64_t>(d_a) * d_b;
  const EMat wedge_pair = kron(antisym_projector(d_a, r + 1), antisym_projector(d_b, r + 1));
  const EMat lifted = kron(wedge_pair, EMat::Identity(ipow(d, k - 1), ipow(d, k - 1)));
  return lifted * regroup_matrix(d_a, d_b, r, k) * sym_projector(d, r + k);
}

/// Tensor product of chosen basis vectors, as a dense column.
inline EVec product_vector(const std::vector<std::vector<Complexd>>& basis,
                           const std::vector<int>& picks) {
  EVec v = EVec::Ones(1);
  for (int pick : picks) {
    const auto& x = basis[static_cast<std::size_t>(pick)];
    EVec next(v.size() * static_cast<Eigen::Index>(x.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j)
        next(i * static_cast<Eigen::Index>(x.size()) + static_cast<Eigen::Index>(j)) = v(i) * x[j];
    v = next;
  }
  return v;
}

/// Expands an implicit sparse column (wedge-pair coordinates over the
/// unnormalized wedge differences) into the same regrouped dense space that
/// dense_level_map produces.
inline EVec expand_column(const std::vector<std::pair<std::int64_t, Complexd>>& column, int d_a,
                          int d_b, int r, int k) {
  const std::int64_t d = static_cast<std::int64_t>(d_a) * d_b;
  const int n = r + 1;
  const std::int64_t trail_pow = ipow(d, k - 1);
  const std::int64_t db_pow = ipow(d_b, n);
  const auto wedge_a = entcert::enumerate_wedge(d_a, n);
  const auto wedge_b = entcert::enumerate_wedge(d_b, n);
  const auto perms = permutations_with_sign(n);
  EVec out = EVec::Zero(ipow(d_a, n) * db_pow * trail_pow);
  for (const auto& [row, value] : column) {
    const std::int64_t pair_idx = row / trail_pow;
    const std::int64_t f = row % trail_pow;
    const auto& sa = wedge_a[static_cast<std::size_t>(pair_idx / static_cast<std::int64_t>(wedge_b.size()))];
    const auto& tb = wedge_b[static_cast<std::size_t>(pair_idx % static_cast<std::int64_t>(wedge_b.size()))];
    for (const auto& [pa, sign_a] : perms) {
      std::int64_t aflat = 0;
      for (int t = 0; t < n; ++t)
        aflat = aflat * d_a + sa[static_cast<std::size_t>(pa[static_cast<std::size_t>(t)])];
      for (const auto& [pb, sign_b] : perms) {
        std::int64_t bflat = 0;
        for (int t = 0; t < n; ++t)
          bflat = bflat * d_b + tb[static_cast<std::size_t>(pb[static_cast<std::size_t>(t)])];
        out((aflat * db_pow + bflat) * trail_pow + f) += value * sign_a * sign_b;
      }
    }
  }
  return out;
}

/// Orthonormal basis (as columns) of the summed wedge-pair subspace, built
/// densely: project with each cut's wedge-pair projector, sum, and take the
/// eigenvectors of the sum with nonnegligible eigenvalue.
inline EMat dense_ces_span(const entcert::TensorSpace& space) {
  const std::int64_t total = space.total_dimension();
  const std::int64_t dim = total * total;
  EMat sum = EMat::Zero(dim, dim);
  for (const auto& cut : entcert::detail::ces_cut_chain(space.parties())) {
    const auto map = entcert::bipartition_map(space, cut);
    // Regroup (H)^(2) -> H_L^(2) (x) H_R^(2).
    EMat reg = EMat::Zero(dim, dim);
    for (std::int64_t u = 0; u < total; ++u)
      for (std::int64_t v = 0; v < total; ++v) {
        const std::int64_t lu = map.to_regrouped[static_cast<std::size_t>(u)] / map.d_right;
        const std::int64_t ru = map.to_regrouped[static_cast<std::size_t>(u)] % map.d_right;
        const std::int64_t lv = map.to_regrouped[static_cast<std::size_t>(v)] / map.d_right;
        const std::int64_t rv = map.to_regrouped[static_cast<std::size_t>(v)] % map.d_right;
        const std::int64_t target = ((lu * map.d_left + lv) * map.d_right + ru) * map.d_right + rv;
        reg(target, u * total + v) = 1.0;
      }
    const EMat wedge_pair = kron(antisym_projector(map.d_left, 2), antisym_projector(map.d_right, 2));
    sum += reg.adjoint() * wedge_pair * reg;
  }
  Eigen::SelfAdjointEigenSolver<EMat> es(sum);
  Eigen::Index keep = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > 1e-9) ++keep;
  return es.eigenvectors().rightCols(keep);
}

}  // namespace oracle
