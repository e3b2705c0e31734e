#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace entcert {

/// An ordered list of local dimensions d_1 x d_2 x ... defining a
/// tensor-product space. Owns the flat <-> multi index arithmetic;
/// flattening is row-major with the first factor most significant,
/// matching the Kronecker-product convention.
class TensorSpace {
 public:
  TensorSpace() = default;
  explicit TensorSpace(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw std::invalid_argument("TensorSpace: no factors");
    for (int d : dims_)
      if (d < 1) throw std::invalid_argument("TensorSpace: every dimension must be >= 1");
  }

  const std::vector<int>& dims() const { return dims_; }
  int dim(std::size_t party) const { return dims_.at(party); }
  std::size_t parties() const { return dims_.size(); }

  std::int64_t total_dimension() const {
    std::int64_t t = 1;
    for (int d : dims_) t *= d;
    return t;
  }

  std::int64_t flatten(const std::vector<int>& multi) const {
    if (multi.size() != dims_.size())
      throw std::invalid_argument("flatten: index length does not match factor count");
    std::int64_t flat = 0;
    for (std::size_t p = 0; p < dims_.size(); ++p) {
      if (multi[p] < 0 || multi[p] >= dims_[p])
        throw std::invalid_argument("flatten: local index out of range for party " + std::to_string(p));
      flat = flat * dims_[p] + multi[p];
    }
    return flat;
  }

  std::vector<int> unflatten(std::int64_t flat) const {
    if (flat < 0 || flat >= total_dimension())
      throw std::invalid_argument("unflatten: flat index out of range");
    std::vector<int> multi(dims_.size());
    for (std::size_t p = dims_.size(); p-- > 0;) {
      multi[p] = static_cast<int>(flat % dims_[p]);
      flat /= dims_[p];
    }
    return multi;
  }

  bool operator==(const TensorSpace& o) const { return dims_ == o.dims_; }

 private:
  std::vector<int> dims_;
};

}  // namespace entcert
