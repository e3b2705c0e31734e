#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "entcert/rank.hpp"
#include "entcert/scalar.hpp"
#include "entcert/sparse.hpp"
#include "entcert/tensor_space.hpp"

namespace entcert {

/// A subspace given by an explicit basis of state vectors. Construction
/// rejects linearly dependent bases: the column counts of the hierarchy
/// systems presume the basis size is the true dimension.
template <class S>
class Subspace {
 public:
  Subspace(TensorSpace space, std::vector<std::vector<S>> basis, bool validate = true)
      : space_(std::move(space)), basis_(std::move(basis)) {
    if (basis_.empty()) throw std::invalid_argument("Subspace: empty basis");
    const auto total = static_cast<std::size_t>(space_.total_dimension());
    for (const auto& v : basis_)
      if (v.size() != total)
        throw std::invalid_argument("Subspace: basis vector length != total dimension");
    if (basis_.size() > total)
      throw std::invalid_argument("Subspace: more basis vectors than ambient dimension");
    if (validate && basis_rank() != static_cast<std::int64_t>(basis_.size()))
      throw std::invalid_argument("Subspace: basis vectors are linearly dependent");
  }

  const TensorSpace& space() const { return space_; }
  const std::vector<std::vector<S>>& basis() const { return basis_; }
  int dimension() const { return static_cast<int>(basis_.size()); }
  static constexpr ArithmeticMode mode() { return ScalarOps<S>::mode; }

 private:
  std::int64_t basis_rank() const {
    std::vector<Triplet<S>> ts;
    for (std::size_t j = 0; j < basis_.size(); ++j)
      for (std::size_t i = 0; i < basis_[j].size(); ++i)
        if (!ScalarOps<S>::is_zero(basis_[j][i]))
          ts.push_back({static_cast<std::int64_t>(i), static_cast<std::int64_t>(j), basis_[j][i]});
    auto m = assemble<S>(space_.total_dimension(), static_cast<std::int64_t>(basis_.size()),
                         std::move(ts));
    if constexpr (ScalarOps<S>::mode == ArithmeticMode::Rational)
      return exact_rank(m).rank;
    else
      return numerical_rank(m).rank;
  }

  TensorSpace space_;
  std::vector<std::vector<S>> basis_;
};

/// Float view of an exact subspace; basis vectors are normalized here (exact
/// amplitudes are stored unnormalized, and the verdicts are scale-invariant).
inline Subspace<Complexd> to_float(const Subspace<RationalComplex>& s) {
  std::vector<std::vector<Complexd>> basis;
  basis.reserve(s.basis().size());
  for (const auto& v : s.basis()) {
    std::vector<Complexd> w(v.size());
    double norm = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      w[i] = to_complexd(v[i]);
      norm += std::norm(w[i]);
    }
    norm = std::sqrt(norm);
    if (norm > 0.0)
      for (auto& c : w) c /= norm;
    basis.push_back(std::move(w));
  }
  return Subspace<Complexd>(s.space(), std::move(basis), false);
}

}  // namespace entcert
