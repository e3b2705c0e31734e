#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "entcert/scalar.hpp"
#include "entcert/sparse.hpp"

namespace entcert {

/// Raised when a computation refuses to proceed for size/memory reasons.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Outcome of a rank decision. In float mode the spectral-gap fields let a
/// caller audit how close the decision was to the tolerance cut.
struct RankResult {
  std::int64_t rank = 0;
  bool full_column_rank = false;
  ArithmeticMode mode = ArithmeticMode::Float;
  double tolerance = 0.0;  // absolute threshold actually applied (float mode)
  std::optional<double> smallest_retained_singular_value;
  std::optional<double> largest_discarded_singular_value;

  /// largest discarded over smallest retained; 0 when nothing was discarded.
  double spectral_gap_ratio() const {
    if (!smallest_retained_singular_value || !largest_discarded_singular_value) return 0.0;
    if (*smallest_retained_singular_value == 0.0) return 0.0;
    return *largest_discarded_singular_value / *smallest_retained_singular_value;
  }
};

/// Singular values above max(rel_tol * sigma_max, abs_floor) are counted
/// toward the rank; rel_tol < 0 selects the default
/// max(nrows, ncols) * machine-epsilon. The absolute floor lets callers with
/// a known input scale keep an identically-zero matrix (whose "spectrum" is
/// rounding noise) at rank zero. Matrices with min(rows, cols) <= 2000 go
/// through an orthogonal row-block reduction followed by a dense SVD of the
/// triangular factor (exact singular values, full diagnostics); anything
/// larger falls back to sparse rank-revealing QR, which reports the rank
/// without the spectrum.
RankResult numerical_rank(const SparseMatrix<Complexd>& m, double rel_tol = -1.0,
                          double abs_floor = 0.0);

/// Exact rank over the Gaussian rationals: denominators are cleared per
/// column and a fraction-free (Bareiss) elimination with partial pivoting on
/// magnitude-squared runs over Gaussian integers. No tolerance is involved.
RankResult exact_rank(const SparseMatrix<RationalComplex>& m);

/// Singular values of the d_left x d_right reshape of x, nonincreasing.
/// The count above a threshold is the Schmidt rank of x across that split.
std::vector<double> singular_values_reshaped(const std::vector<Complexd>& x, int d_left,
                                             int d_right);

}  // namespace entcert
