#include "entcert/rank.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <Eigen/SparseQR>
#include <Eigen/OrderingMethods>

#include <algorithm>
#include <cmath>
#include <limits>

namespace entcert {

namespace {

using EMat = Eigen::MatrixXcd;
using ESparse = Eigen::SparseMatrix<Complexd>;
using ESparseRow = Eigen::SparseMatrix<Complexd, Eigen::RowMajor>;

ESparseRow to_eigen_row_major(const SparseMatrix<Complexd>& m) {
  std::vector<Eigen::Triplet<Complexd>> ts;
  ts.reserve(m.nnz());
  for (const auto& e : m.entries())
    ts.emplace_back(static_cast<int>(e.row), static_cast<int>(e.col), e.value);
  ESparseRow s(m.rows(), m.cols());
  s.setFromTriplets(ts.begin(), ts.end());
  return s;
}

// Orthogonal reduction of a tall sparse matrix to its square triangular
// factor, one dense row block at a time. Singular values of the result equal
// those of the input.
EMat triangular_factor_by_blocks(const ESparseRow& a) {
  const std::int64_t rows = a.rows(), cols = a.cols();
  const std::int64_t block = std::max<std::int64_t>(2 * cols, 1024);
  EMat r = EMat::Zero(0, cols);
  for (std::int64_t start = 0; start < rows; start += block) {
    const std::int64_t height = std::min(block, rows - start);
    EMat stacked(r.rows() + height, cols);
    stacked.topRows(r.rows()) = r;
    stacked.bottomRows(height) = a.middleRows(start, height).toDense();
    Eigen::HouseholderQR<EMat> qr(stacked);
    const std::int64_t keep = std::min<std::int64_t>(stacked.rows(), cols);
    r = EMat(qr.matrixQR().topRows(keep).triangularView<Eigen::Upper>());
  }
  if (r.rows() < cols) {
    EMat padded = EMat::Zero(cols, cols);
    padded.topRows(r.rows()) = r;
    r = padded;
  }
  return r;
}

RankResult rank_from_singular_values(const Eigen::VectorXd& sv, std::int64_t nrows,
                                     std::int64_t ncols, double rel_tol, double abs_floor) {
  RankResult out;
  out.mode = ArithmeticMode::Float;
  const double sigma_max = sv.size() > 0 ? sv(0) : 0.0;
  const double rel =
      rel_tol >= 0.0
          ? rel_tol
          : static_cast<double>(std::max(nrows, ncols)) * std::numeric_limits<double>::epsilon();
  out.tolerance = std::max(rel * sigma_max, abs_floor);
  std::int64_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > out.tolerance) ++rank;
  out.rank = rank;
  out.full_column_rank = rank == ncols;
  if (rank > 0) out.smallest_retained_singular_value = sv(rank - 1);
  out.largest_discarded_singular_value = rank < sv.size() ? sv(rank) : 0.0;
  return out;
}

}  // namespace

RankResult numerical_rank(const SparseMatrix<Complexd>& m, double rel_tol, double abs_floor) {
  if (m.rows() == 0 || m.cols() == 0 || m.nnz() == 0) {
    RankResult out;
    out.mode = ArithmeticMode::Float;
    out.full_column_rank = m.cols() == 0;
    out.largest_discarded_singular_value = 0.0;
    return out;
  }

  constexpr std::int64_t kDenseLimit = 2000;
  if (std::min(m.rows(), m.cols()) <= kDenseLimit) {
    // Work on whichever orientation is tall; rank and spectrum are shared
    // with the transpose.
    const bool transpose = m.cols() > m.rows();
    ESparseRow a = to_eigen_row_major(transpose ? m.transposed() : m);
    EMat r = triangular_factor_by_blocks(a);
    Eigen::BDCSVD<EMat> svd(r);
    return rank_from_singular_values(svd.singularValues(), m.rows(), m.cols(), rel_tol, abs_floor);
  }

  try {
    ESparse a(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
    {
      std::vector<Eigen::Triplet<Complexd>> ts;
      ts.reserve(m.nnz());
      for (const auto& e : m.entries())
        ts.emplace_back(static_cast<int>(e.row), static_cast<int>(e.col), e.value);
      a.setFromTriplets(ts.begin(), ts.end());
    }
    Eigen::SparseQR<ESparse, Eigen::COLAMDOrdering<int>> qr;
    const double rel = rel_tol >= 0.0 ? rel_tol
                                      : static_cast<double>(std::max(m.rows(), m.cols())) *
                                            std::numeric_limits<double>::epsilon();
    double max_col_norm = 0.0;
    for (int c = 0; c < a.outerSize(); ++c) {
      double s = 0.0;
      for (ESparse::InnerIterator it(a, c); it; ++it) s += std::norm(it.value());
      max_col_norm = std::max(max_col_norm, std::sqrt(s));
    }
    qr.setPivotThreshold(std::max(rel * max_col_norm, abs_floor));
    qr.compute(a);
    if (qr.info() != Eigen::Success)
      throw ResourceError("sparse rank-revealing QR failed to factorize");
    RankResult out;
    out.mode = ArithmeticMode::Float;
    out.rank = qr.rank();
    out.full_column_rank = out.rank == m.cols();
    out.tolerance = std::max(rel * max_col_norm, abs_floor);
    return out;
  } catch (const std::bad_alloc&) {
    throw ResourceError("matrix too large for dense fallback and sparse factorization ran out of memory");
  }
}

namespace {

struct GaussInt {
  mpz_class re, im;
  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  mpz_class norm_sq() const { return re * re + im * im; }
};

GaussInt mul(const GaussInt& a, const GaussInt& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

GaussInt sub(const GaussInt& a, const GaussInt& b) { return {a.re - b.re, a.im - b.im}; }

// Exact division in Z[i]: multiply by the conjugate, then divide by the
// (integer) norm. Caller guarantees divisibility.
GaussInt divexact(const GaussInt& a, const GaussInt& b) {
  const mpz_class n = b.norm_sq();
  GaussInt num{a.re * b.re + a.im * b.im, a.im * b.re - a.re * b.im};
  GaussInt out;
  mpz_divexact(out.re.get_mpz_t(), num.re.get_mpz_t(), n.get_mpz_t());
  mpz_divexact(out.im.get_mpz_t(), num.im.get_mpz_t(), n.get_mpz_t());
  return out;
}

}  // namespace

RankResult exact_rank(const SparseMatrix<RationalComplex>& m) {
  RankResult out;
  out.mode = ArithmeticMode::Rational;
  if (m.rows() == 0 || m.cols() == 0 || m.nnz() == 0) {
    out.full_column_rank = m.cols() == 0;
    return out;
  }

  const std::size_t nr = static_cast<std::size_t>(m.rows());
  const std::size_t nc = static_cast<std::size_t>(m.cols());
  try {
    // Column scaling by the lcm of denominators preserves rank and moves the
    // whole elimination into the Gaussian integers.
    std::vector<std::vector<GaussInt>> w(nr, std::vector<GaussInt>(nc));
    std::vector<mpz_class> col_lcm(nc, 1);
    for (const auto& e : m.entries()) {
      auto& l = col_lcm[static_cast<std::size_t>(e.col)];
      l = lcm(l, mpz_class(e.value.re.get_den()));
      l = lcm(l, mpz_class(e.value.im.get_den()));
    }
    for (const auto& e : m.entries()) {
      const auto& l = col_lcm[static_cast<std::size_t>(e.col)];
      GaussInt g;
      g.re = mpz_class(e.value.re.get_num()) * (l / e.value.re.get_den());
      g.im = mpz_class(e.value.im.get_num()) * (l / e.value.im.get_den());
      w[static_cast<std::size_t>(e.row)][static_cast<std::size_t>(e.col)] = g;
    }

    // Fraction-free elimination (Bareiss): after each step the entries are
    // minors of the original matrix, and division by the previous pivot is
    // exact. Pivot choice: largest magnitude-squared in the current column.
    GaussInt prev{mpz_class(1), mpz_class(0)};
    std::size_t row = 0;
    for (std::size_t col = 0; col < nc && row < nr; ++col) {
      std::size_t pivot = row;
      mpz_class best = w[row][col].norm_sq();
      for (std::size_t i = row + 1; i < nr; ++i) {
        mpz_class n = w[i][col].norm_sq();
        if (n > best) {
          best = n;
          pivot = i;
        }
      }
      if (sgn(best) == 0) continue;
      std::swap(w[pivot], w[row]);
      for (std::size_t i = row + 1; i < nr; ++i) {
        for (std::size_t j = col + 1; j < nc; ++j)
          w[i][j] = divexact(sub(mul(w[row][col], w[i][j]), mul(w[i][col], w[row][j])), prev);
        w[i][col] = GaussInt{};
      }
      prev = w[row][col];
      ++row;
    }
    out.rank = static_cast<std::int64_t>(row);
    out.full_column_rank = out.rank == m.cols();
    return out;
  } catch (const std::bad_alloc&) {
    throw ResourceError("exact elimination exhausted memory from fill-in; retry in float mode");
  }
}

std::vector<double> singular_values_reshaped(const std::vector<Complexd>& x, int d_left,
                                             int d_right) {
  if (d_left < 1 || d_right < 1 ||
      x.size() != static_cast<std::size_t>(d_left) * static_cast<std::size_t>(d_right))
    throw std::invalid_argument("singular_values_reshaped: dimension mismatch");
  EMat r(d_left, d_right);
  for (int a = 0; a < d_left; ++a)
    for (int b = 0; b < d_right; ++b)
      r(a, b) = x[static_cast<std::size_t>(a) * d_right + static_cast<std::size_t>(b)];
  Eigen::JacobiSVD<EMat> svd(r);
  const auto& sv = svd.singularValues();
  return std::vector<double>(sv.data(), sv.data() + sv.size());
}

}  // namespace entcert
