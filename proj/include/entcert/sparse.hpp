#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "entcert/scalar.hpp"

namespace entcert {

template <class S>
struct Triplet {
  std::int64_t row;
  std::int64_t col;
  S value;
};

/// Complex sparse matrix in sorted, deduplicated column-major triplet form.
/// Immutable after assembly; this is the carrier of the level-k systems.
template <class S>
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::int64_t nrows, std::int64_t ncols, std::vector<Triplet<S>> entries)
      : nrows_(nrows), ncols_(ncols), entries_(std::move(entries)) {}

  std::int64_t rows() const { return nrows_; }
  std::int64_t cols() const { return ncols_; }
  const std::vector<Triplet<S>>& entries() const { return entries_; }
  std::size_t nnz() const { return entries_.size(); }

  SparseMatrix transposed() const {
    std::vector<Triplet<S>> t = entries_;
    for (auto& e : t) std::swap(e.row, e.col);
    std::sort(t.begin(), t.end(), [](const Triplet<S>& a, const Triplet<S>& b) {
      return a.col != b.col ? a.col < b.col : a.row < b.row;
    });
    return SparseMatrix(ncols_, nrows_, std::move(t));
  }

 private:
  std::int64_t nrows_ = 0;
  std::int64_t ncols_ = 0;
  std::vector<Triplet<S>> entries_;
};

/// Sums duplicate (row, col) entries, drops exact zeros, and in float mode
/// additionally drops entries below 1e-14 of the largest magnitude
/// (structural zeros from cancellation).
template <class S>
SparseMatrix<S> assemble(std::int64_t nrows, std::int64_t ncols, std::vector<Triplet<S>> triplets) {
  if (nrows < 0 || ncols < 0) throw std::invalid_argument("assemble: negative dimension");
  for (const auto& t : triplets)
    if (t.row < 0 || t.row >= nrows || t.col < 0 || t.col >= ncols)
      throw std::invalid_argument("assemble: triplet out of bounds");
  std::sort(triplets.begin(), triplets.end(), [](const Triplet<S>& a, const Triplet<S>& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
  std::vector<Triplet<S>> out;
  out.reserve(triplets.size());
  for (auto& t : triplets) {
    if (!out.empty() && out.back().row == t.row && out.back().col == t.col)
      out.back().value += t.value;
    else
      out.push_back(std::move(t));
  }
  std::erase_if(out, [](const Triplet<S>& t) { return ScalarOps<S>::is_zero(t.value); });
  if constexpr (ScalarOps<S>::mode == ArithmeticMode::Float) {
    double max_mag = 0.0;
    for (const auto& t : out) max_mag = std::max(max_mag, std::abs(t.value));
    const double cutoff = 1e-14 * max_mag;
    std::erase_if(out, [cutoff](const Triplet<S>& t) { return std::abs(t.value) < cutoff; });
  }
  return SparseMatrix<S>(nrows, ncols, std::move(out));
}

}  // namespace entcert
