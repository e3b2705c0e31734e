#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "entcert/certificate.hpp"
#include "entcert/combinat.hpp"
#include "entcert/projectors.hpp"
#include "entcert/rank.hpp"
#include "entcert/scalar.hpp"
#include "entcert/sparse.hpp"
#include "entcert/subspace.hpp"
#include "entcert/tensor_space.hpp"

namespace entcert {

struct CertifyOptions {
  double rel_tol = -1.0;                  // float rank tolerance; negative = default policy
  std::uint64_t guardrail_rows = 5'000'000;  // refuse systems with more rows than this
  int threads = 1;
  bool ges_stop_at_first_failure = false;
  double range_rel_cutoff = 1e-10;  // eigenvalue cutoff for mixed-state range extraction
};

/// Level at which the bipartite hierarchy is complete: (max{r,2}+1)^(d_A d_B) - r,
/// saturated at uint64 max (it is astronomical for any interesting dimension).
inline std::uint64_t bipartite_level_cap(int r, std::int64_t dim_product) {
  const std::uint64_t base = static_cast<std::uint64_t>(std::max(r, 2) + 1);
  const std::uint64_t p = saturating_pow(base, static_cast<std::uint64_t>(dim_product));
  if (p == std::numeric_limits<std::uint64_t>::max()) return p;
  return p - static_cast<std::uint64_t>(r);
}

/// Completeness cap for the multipartite hierarchies, 3^(total dimension) - 1.
inline std::uint64_t multipartite_level_cap(std::int64_t total_dim) {
  const std::uint64_t p = saturating_pow(3, static_cast<std::uint64_t>(total_dim));
  if (p == std::numeric_limits<std::uint64_t>::max()) return p;
  return p - 1;
}

/// Largest subspace dimension the first level can possibly certify:
/// the biggest d_S with C(d_S + r, r+1) <= C(d_A, r+1) * C(d_B, r+1).
inline int max_level1_dimension(int d_A, int d_B, int r) {
  if (r < 1 || r + 1 > std::min(d_A, d_B))
    throw std::invalid_argument("max_level1_dimension: need 1 <= r < min(d_A, d_B)");
  const std::uint64_t rows = saturating_mul(binomial(d_A, r + 1), binomial(d_B, r + 1));
  // The bound can never exceed the ambient dimension, which also keeps the
  // scan finite when the row count saturates.
  const int ambient = d_A * d_B;
  int d_S = 1;
  while (d_S < ambient && binomial(d_S + 1 + r, r + 1) <= rows) ++d_S;
  return d_S;
}

/// Schmidt rank across the bipartite split: singular values of the reshape
/// above rel_tol * sigma_max.
inline int schmidt_rank(const std::vector<Complexd>& x, const TensorSpace& space,
                        double rel_tol = 1e-10) {
  if (space.parties() != 2) throw std::invalid_argument("schmidt_rank: need 2 parties");
  const auto sv = singular_values_reshaped(x, space.dim(0), space.dim(1));
  if (sv.empty() || sv[0] == 0.0) throw std::invalid_argument("schmidt_rank: zero vector");
  int count = 0;
  for (double s : sv)
    if (s > rel_tol * sv[0]) ++count;
  return count;
}

/// Exact Schmidt rank of a Gaussian-rational vector (rank of its reshape).
inline int schmidt_rank_exact(const std::vector<RationalComplex>& x, const TensorSpace& space) {
  if (space.parties() != 2) throw std::invalid_argument("schmidt_rank_exact: need 2 parties");
  std::vector<Triplet<RationalComplex>> ts;
  for (int a = 0; a < space.dim(0); ++a)
    for (int b = 0; b < space.dim(1); ++b) {
      const auto& v = x[static_cast<std::size_t>(a) * space.dim(1) + static_cast<std::size_t>(b)];
      if (!v.is_zero()) ts.push_back({a, b, v});
    }
  if (ts.empty()) throw std::invalid_argument("schmidt_rank_exact: zero vector");
  return static_cast<int>(
      exact_rank(assemble<RationalComplex>(space.dim(0), space.dim(1), std::move(ts))).rank);
}

namespace detail {

/// Column entries are built from unit basis vectors (drivers normalize), so
/// an absolute floor at the machine scale keeps identically-zero systems at
/// rank zero instead of promoting rounding noise.
template <class S>
RankResult rank_of(const SparseMatrix<S>& m, double rel_tol) {
  if constexpr (ScalarOps<S>::mode == ArithmeticMode::Rational) {
    (void)rel_tol;
    return exact_rank(m);
  } else {
    const double floor = static_cast<double>(std::max(m.rows(), m.cols())) *
                         std::numeric_limits<double>::epsilon();
    return numerical_rank(m, rel_tol, floor);
  }
}

/// Unit-normalized copy of a float basis; exact bases pass through untouched
/// (verdicts are scale-invariant, and normalizing would leave the rationals).
template <class S>
std::vector<std::vector<S>> unit_basis(const std::vector<std::vector<S>>& basis) {
  if constexpr (ScalarOps<S>::mode == ArithmeticMode::Rational) {
    return basis;
  } else {
    std::vector<std::vector<S>> out = basis;
    for (auto& v : out) {
      double norm = 0.0;
      for (const auto& c : v) norm += std::norm(c);
      norm = std::sqrt(norm);
      if (norm > 0.0)
        for (auto& c : v) c /= norm;
    }
    return out;
  }
}

/// Generates all columns (in parallel when asked) and assembles the system.
template <class S, class Fn>
SparseMatrix<S> assemble_columns(std::int64_t rows, std::size_t ncols, int threads,
                                 Fn&& column_fn) {
  std::vector<std::vector<std::pair<std::int64_t, S>>> cols(ncols);
  const int nthreads = std::clamp<int>(threads, 1, static_cast<int>(std::max<std::size_t>(ncols, 1)));
  if (nthreads <= 1) {
    for (std::size_t c = 0; c < ncols; ++c) cols[c] = column_fn(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t)
      pool.emplace_back([&] {
        try {
          while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t c = next.fetch_add(1);
            if (c >= ncols) break;
            cols[c] = column_fn(c);
          }
        } catch (...) {
          std::scoped_lock lock(error_mutex);
          if (!error) error = std::current_exception();
          failed.store(true);
        }
      });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
  }
  std::size_t total = 0;
  for (const auto& c : cols) total += c.size();
  std::vector<Triplet<S>> ts;
  ts.reserve(total);
  for (std::size_t c = 0; c < ncols; ++c)
    for (const auto& [row, val] : cols[c]) ts.push_back({row, static_cast<std::int64_t>(c), val});
  return assemble<S>(rows, static_cast<std::int64_t>(ncols), std::move(ts));
}

inline std::string party_letters(const std::vector<std::size_t>& parties) {
  std::string s;
  for (std::size_t p : parties) s += static_cast<char>('A' + p);
  return s;
}

}  // namespace detail

/// Level-k test for r-entanglement: the subspace is certified when the
/// hierarchy columns over all nondecreasing multisets are linearly
/// independent. Columns can never be independent when they outnumber the
/// rows, so that case is decided without any rank computation.
template <class S>
Certificate certify_bipartite(const Subspace<S>& s, int r, int k,
                              const CertifyOptions& opts = {}) {
  const auto& dims = s.space().dims();
  if (dims.size() != 2) throw std::invalid_argument("certify_bipartite: need exactly 2 parties");
  if (r < 1 || k < 1) throw std::invalid_argument("certify_bipartite: need r >= 1 and k >= 1");
  if (r + 1 > std::min(dims[0], dims[1]))
    throw std::invalid_argument(
        "certify_bipartite: r + 1 exceeds a local dimension, no Schmidt rank can reach it");

  Certificate cert;
  cert.target = CertificateTarget::r_entangled(r);
  cert.mode = ScalarOps<S>::mode;
  cert.requested_rel_tol = opts.rel_tol;
  cert.level_cap = bipartite_level_cap(r, s.space().total_dimension());
  cert.level = k;

  const BipartiteLevelShape shape{dims[0], dims[1], r, k};
  const std::uint64_t rows = shape.nominal_rows();
  const std::uint64_t cols = shape.columns_for(s.dimension());
  SystemReport rep;
  rep.label = "AB";
  rep.level = k;
  rep.rows = static_cast<std::int64_t>(rows);
  rep.cols = static_cast<std::int64_t>(cols);

  if (rows > opts.guardrail_rows) {
    cert.verdict = Verdict::SystemTooLarge;
    cert.systems.push_back(rep);
    return cert;
  }
  if (cols > rows) {
    rep.size_short_circuit = true;
    cert.verdict = Verdict::NotCertifiedAtLevel;
    cert.systems.push_back(rep);
    return cert;
  }

  const BipartiteLevelSystem<S> sys(shape);
  const auto basis = detail::unit_basis(s.basis());
  const auto multisets = enumerate_multisets(s.dimension(), r + k);
  const auto m = detail::assemble_columns<S>(
      sys.rows(), multisets.size(), opts.threads,
      [&](std::size_t c) { return sys.column(basis, multisets[c]); });
  rep.rank = detail::rank_of(m, opts.rel_tol);
  cert.verdict =
      rep.rank->full_column_rank ? Verdict::Certified : Verdict::NotCertifiedAtLevel;
  cert.systems.push_back(std::move(rep));
  return cert;
}

/// Walks levels 1..k_max (clamped by the completeness cap), returning at the
/// first certified level. System reports of every attempted level are kept.
template <class S>
Certificate certify_bipartite_auto(const Subspace<S>& s, int r, int k_max,
                                   const CertifyOptions& opts = {}) {
  if (k_max < 1) throw std::invalid_argument("certify_bipartite_auto: k_max must be >= 1");
  Certificate out;
  const std::uint64_t cap = bipartite_level_cap(r, s.space().total_dimension());
  const int last = static_cast<int>(
      std::min<std::uint64_t>(static_cast<std::uint64_t>(k_max), cap));
  for (int k = 1; k <= last; ++k) {
    Certificate step = certify_bipartite(s, r, k, opts);
    if (k == 1) {
      out = step;
    } else {
      out.verdict = step.verdict;
      out.level = step.level;
      for (auto& rep : step.systems) out.systems.push_back(std::move(rep));
    }
    if (out.verdict == Verdict::Certified || out.verdict == Verdict::SystemTooLarge) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Mixed states and the Schmidt-number bound
// ---------------------------------------------------------------------------

/// Bipartite density matrix, row-major. Trace one, Hermitian, PSD; use
/// validate_mixed_state before trusting file input.
template <class S>
struct MixedState {
  TensorSpace space;
  std::vector<std::vector<S>> rho;
};

inline MixedState<Complexd> to_float(const MixedState<RationalComplex>& m) {
  MixedState<Complexd> out{m.space, {}};
  out.rho.reserve(m.rho.size());
  for (const auto& row : m.rho) {
    std::vector<Complexd> r(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) r[j] = to_complexd(row[j]);
    out.rho.push_back(std::move(r));
  }
  return out;
}

namespace detail {

inline Eigen::MatrixXcd to_eigen(const MixedState<Complexd>& m) {
  const auto d = static_cast<Eigen::Index>(m.space.total_dimension());
  Eigen::MatrixXcd a(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      a(i, j) = m.rho[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return a;
}

inline RationalComplex div_rational(const RationalComplex& a, const mpq_class& d) {
  return {a.re / d, a.im / d};
}

/// Exact PSD test by pivoted Hermitian elimination: a Hermitian matrix is
/// PSD iff no Schur complement ever exposes a negative diagonal entry or a
/// zero diagonal with a nonzero residual row.
inline bool exact_psd(std::vector<std::vector<RationalComplex>> a) {
  const std::size_t n = a.size();
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pivot = n;
    mpq_class best(0);
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      if (sgn(a[i][i].im) != 0) return false;  // not Hermitian, defensive
      if (sgn(a[i][i].re) < 0) return false;
      if (a[i][i].re > best) {
        best = a[i][i].re;
        pivot = i;
      }
    }
    if (pivot == n) {
      // All remaining diagonal entries are zero; PSD requires the whole
      // residual block to vanish.
      for (std::size_t i = 0; i < n; ++i) {
        if (done[i]) continue;
        for (std::size_t j = 0; j < n; ++j)
          if (!done[j] && !a[i][j].is_zero()) return false;
      }
      return true;
    }
    const mpq_class d = a[pivot][pivot].re;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || i == pivot) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (done[j] || j == pivot) continue;
        a[i][j] -= div_rational(a[i][pivot] * a[pivot][j], d);
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      a[i][pivot] = RationalComplex{};
      a[pivot][i] = RationalComplex{};
    }
    done[pivot] = true;
  }
  return true;
}

}  // namespace detail

/// Throws with a diagnostic when the state is not Hermitian, not PSD, or not
/// trace one (exactly in rational mode, within the stated tolerances in
/// float mode).
template <class S>
void validate_mixed_state(const MixedState<S>& m) {
  if (m.space.parties() != 2)
    throw std::invalid_argument("mixed state: need exactly 2 parties");
  const auto d = static_cast<std::size_t>(m.space.total_dimension());
  if (m.rho.size() != d) throw std::invalid_argument("mixed state: matrix is not D x D");
  for (const auto& row : m.rho)
    if (row.size() != d) throw std::invalid_argument("mixed state: matrix is not D x D");

  if constexpr (ScalarOps<S>::mode == ArithmeticMode::Rational) {
    mpq_class trace(0);
    for (std::size_t i = 0; i < d; ++i) {
      if (sgn(m.rho[i][i].im) != 0)
        throw std::invalid_argument("mixed state: diagonal is not real");
      trace += m.rho[i][i].re;
      for (std::size_t j = 0; j < d; ++j)
        if (!(m.rho[i][j] == m.rho[j][i].conj()))
          throw std::invalid_argument("mixed state: not Hermitian");
    }
    if (trace != 1) throw std::invalid_argument("mixed state: trace is not exactly 1");
    if (!detail::exact_psd(m.rho))
      throw std::invalid_argument("mixed state: not positive semidefinite");
  } else {
    const auto a = detail::to_eigen(m);
    if ((a - a.adjoint()).cwiseAbs().maxCoeff() >= 1e-12)
      throw std::invalid_argument("mixed state: not Hermitian (deviation >= 1e-12)");
    if (std::abs(a.trace().real() - 1.0) > 1e-10 || std::abs(a.trace().imag()) > 1e-10)
      throw std::invalid_argument("mixed state: trace differs from 1 by more than 1e-10");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
      throw std::invalid_argument("mixed state: negative eigenvalue below -1e-10");
  }
}

/// Partial transpose over the second party; its spectrum is the standard PPT
/// screen for comparison against the hierarchy verdicts.
template <class S>
MixedState<S> partial_transpose(const MixedState<S>& m) {
  const int da = m.space.dim(0), db = m.space.dim(1);
  MixedState<S> out{m.space,
                    std::vector<std::vector<S>>(m.rho.size(),
                                                std::vector<S>(m.rho.size(), ScalarOps<S>::zero()))};
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b)
      for (int a2 = 0; a2 < da; ++a2)
        for (int b2 = 0; b2 < db; ++b2)
          out.rho[static_cast<std::size_t>(a * db + b)][static_cast<std::size_t>(a2 * db + b2)] =
              m.rho[static_cast<std::size_t>(a * db + b2)][static_cast<std::size_t>(a2 * db + b)];
  return out;
}

inline std::vector<double> hermitian_eigenvalues(const MixedState<Complexd>& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(detail::to_eigen(m), Eigen::EigenvaluesOnly);
  return std::vector<double>(es.eigenvalues().data(),
                             es.eigenvalues().data() + es.eigenvalues().size());
}

template <class S>
struct RangeExtraction {
  std::vector<std::vector<S>> basis;
  std::vector<double> discarded_eigenvalues;
};

/// Basis of range(rho). Float mode keeps eigenvectors with eigenvalue above
/// rel_cutoff * lambda_max and records what was dropped (overestimating the
/// range would invalidate the Schmidt-number bound). Rational mode takes the
/// pivot columns of an exact elimination: for Hermitian PSD matrices the
/// column span is the range, so no eigendecomposition is needed and the
/// extraction stays exact.
template <class S>
RangeExtraction<S> range_basis(const MixedState<S>& m, double rel_cutoff = 1e-10) {
  RangeExtraction<S> out;
  const auto d = static_cast<std::size_t>(m.space.total_dimension());
  if constexpr (ScalarOps<S>::mode == ArithmeticMode::Rational) {
    auto work = m.rho;
    std::size_t row = 0;
    std::vector<std::size_t> pivot_cols;
    for (std::size_t col = 0; col < d && row < d; ++col) {
      std::size_t p = row;
      mpq_class best = work[row][col].norm_sq();
      for (std::size_t i = row + 1; i < d; ++i) {
        mpq_class v = work[i][col].norm_sq();
        if (v > best) {
          best = v;
          p = i;
        }
      }
      if (sgn(best) == 0) continue;
      std::swap(work[p], work[row]);
      for (std::size_t i = row + 1; i < d; ++i) {
        if (work[i][col].is_zero()) continue;
        // factor = work[i][col] / work[row][col]
        const mpq_class nrm = work[row][col].norm_sq();
        const RationalComplex factor =
            detail::div_rational(work[i][col] * work[row][col].conj(), nrm);
        for (std::size_t j = col; j < d; ++j) work[i][j] -= factor * work[row][j];
      }
      pivot_cols.push_back(col);
      ++row;
    }
    if (pivot_cols.empty()) throw std::invalid_argument("range_basis: zero state");
    for (std::size_t col : pivot_cols) {
      std::vector<S> v(d);
      for (std::size_t i = 0; i < d; ++i) v[i] = m.rho[i][col];
      out.basis.push_back(std::move(v));
    }
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(detail::to_eigen(m));
    const auto& ev = es.eigenvalues();
    const double lambda_max = ev.maxCoeff();
    if (lambda_max <= 0.0) throw std::invalid_argument("range_basis: numerically zero state");
    const double cutoff = rel_cutoff * lambda_max;
    for (Eigen::Index i = ev.size() - 1; i >= 0; --i) {
      if (ev(i) > cutoff) {
        std::vector<S> v(d);
        for (std::size_t g = 0; g < d; ++g) v[g] = es.eigenvectors()(static_cast<Eigen::Index>(g), i);
        out.basis.push_back(std::move(v));
      } else {
        out.discarded_eigenvalues.push_back(ev(i));
      }
    }
  }
  return out;
}

/// The range criterion driven by the hierarchy: certifying the range basis
/// r-entangled at some level proves the Schmidt number exceeds r.
template <class S>
Certificate schmidt_number_bound(const MixedState<S>& m, int r, int k,
                                 const CertifyOptions& opts = {}) {
  auto range = range_basis(m, opts.range_rel_cutoff);
  Subspace<S> s(m.space, std::move(range.basis), false);
  Certificate cert = certify_bipartite(s, r, k, opts);
  cert.target = CertificateTarget::schmidt_number_at_least(r + 1);
  cert.discarded_range_eigenvalues = std::move(range.discarded_eigenvalues);
  return cert;
}

// ---------------------------------------------------------------------------
// Multipartite drivers
// ---------------------------------------------------------------------------

struct RegroupedBipartition {
  TensorSpace bipartite;
  std::vector<std::int64_t> to_regrouped;  // flat-index permutation
};

/// Regroups the tensor factors into (left parties) x (the rest), keeping the
/// original party order inside each side. Applying the permutation to a
/// vector's amplitudes re-expresses it in the bipartite space.
inline RegroupedBipartition regroup_bipartition(const TensorSpace& space,
                                                const std::vector<std::size_t>& left_parties) {
  const auto map = bipartition_map(space, left_parties);
  return {TensorSpace({static_cast<int>(map.d_left), static_cast<int>(map.d_right)}),
          map.to_regrouped};
}

template <class S>
std::vector<S> regroup_vector(const std::vector<std::int64_t>& perm, const std::vector<S>& v) {
  if (perm.size() != v.size()) throw std::invalid_argument("regroup_vector: size mismatch");
  std::vector<S> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(perm[i])] = v[i];
  return out;
}

/// Level-k certification that a multipartite subspace contains no fully
/// product vector.
template <class S>
Certificate certify_ces(const Subspace<S>& s, int k, const CertifyOptions& opts = {}) {
  if (s.space().parties() < 3)
    throw std::invalid_argument("certify_ces: need at least 3 parties");
  if (k < 1) throw std::invalid_argument("certify_ces: k must be >= 1");

  Certificate cert;
  cert.target = CertificateTarget::completely_entangled();
  cert.mode = ScalarOps<S>::mode;
  cert.requested_rel_tol = opts.rel_tol;
  cert.level_cap = multipartite_level_cap(s.space().total_dimension());
  cert.level = k;

  const auto projector = build_ces_projector<S>(s.space());
  const CesLevelSystem<S> sys(&projector, k);
  const std::uint64_t rows = static_cast<std::uint64_t>(sys.rows());
  const std::uint64_t cols = sys.columns_for(s.dimension());
  SystemReport rep;
  rep.label = "ces";
  rep.level = k;
  rep.rows = sys.rows();
  rep.cols = static_cast<std::int64_t>(cols);

  if (rows > opts.guardrail_rows) {
    cert.verdict = Verdict::SystemTooLarge;
    cert.systems.push_back(rep);
    return cert;
  }
  if (cols > rows) {
    rep.size_short_circuit = true;
    cert.verdict = Verdict::NotCertifiedAtLevel;
    cert.systems.push_back(rep);
    return cert;
  }

  const auto basis = detail::unit_basis(s.basis());
  const auto multisets = enumerate_multisets(s.dimension(), k + 1);
  const auto m = detail::assemble_columns<S>(
      sys.rows(), multisets.size(), opts.threads,
      [&](std::size_t c) { return sys.column(basis, multisets[c]); });
  rep.rank = detail::rank_of(m, opts.rel_tol);
  cert.verdict =
      rep.rank->full_column_rank ? Verdict::Certified : Verdict::NotCertifiedAtLevel;
  cert.systems.push_back(std::move(rep));
  return cert;
}

/// Level-k certification that no vector of the subspace is product across
/// any bipartition: the r = 1 system must have full column rank for every
/// one of the 2^(p-1) - 1 cuts. All cuts are reported unless the caller asks
/// to stop at the first failure.
template <class S>
Certificate certify_ges(const Subspace<S>& s, int k, const CertifyOptions& opts = {}) {
  const std::size_t p = s.space().parties();
  if (p < 3) throw std::invalid_argument("certify_ges: need at least 3 parties");
  if (k < 1) throw std::invalid_argument("certify_ges: k must be >= 1");
  for (std::size_t i = 0; i < p; ++i)
    if (s.space().dim(i) < 2)
      throw std::invalid_argument("certify_ges: a party of dimension 1 is product across its cut");

  Certificate cert;
  cert.target = CertificateTarget::genuinely_entangled();
  cert.mode = ScalarOps<S>::mode;
  cert.requested_rel_tol = opts.rel_tol;
  cert.level_cap = multipartite_level_cap(s.space().total_dimension());
  cert.level = k;

  std::vector<std::vector<std::size_t>> cuts;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << p) - 1; ++mask) {
    if (!(mask & 1)) continue;  // fix party A on the left to visit each cut once
    std::vector<std::size_t> left;
    for (std::size_t i = 0; i < p; ++i)
      if (mask & (std::uint64_t{1} << i)) left.push_back(i);
    cuts.push_back(std::move(left));
  }

  bool all_full_rank = true;
  for (const auto& left : cuts) {
    const auto map = bipartition_map(s.space(), left);
    std::vector<std::size_t> right;
    for (std::size_t i = 0; i < p; ++i)
      if (std::find(left.begin(), left.end(), i) == left.end()) right.push_back(i);

    const BipartiteLevelShape shape{static_cast<int>(map.d_left), static_cast<int>(map.d_right),
                                    1, k};
    const std::uint64_t rows = shape.nominal_rows();
    const std::uint64_t cols = shape.columns_for(s.dimension());
    SystemReport rep;
    rep.label = detail::party_letters(left) + "|" + detail::party_letters(right);
    rep.level = k;
    rep.rows = static_cast<std::int64_t>(rows);
    rep.cols = static_cast<std::int64_t>(cols);

    if (rows > opts.guardrail_rows) {
      cert.verdict = Verdict::SystemTooLarge;
      cert.systems.push_back(std::move(rep));
      return cert;
    }
    if (cols > rows) {
      rep.size_short_circuit = true;
      all_full_rank = false;
      cert.systems.push_back(std::move(rep));
      if (opts.ges_stop_at_first_failure) break;
      continue;
    }

    std::vector<std::vector<S>> regrouped;
    regrouped.reserve(s.basis().size());
    for (const auto& v : detail::unit_basis(s.basis()))
      regrouped.push_back(regroup_vector(map.to_regrouped, v));
    const BipartiteLevelSystem<S> sys(shape);
    const auto multisets = enumerate_multisets(s.dimension(), 1 + k);
    const auto m = detail::assemble_columns<S>(
        sys.rows(), multisets.size(), opts.threads,
        [&](std::size_t c) { return sys.column(regrouped, multisets[c]); });
    rep.rank = detail::rank_of(m, opts.rel_tol);
    if (!rep.rank->full_column_rank) all_full_rank = false;
    cert.systems.push_back(std::move(rep));
    if (!all_full_rank && opts.ges_stop_at_first_failure) break;
  }
  cert.verdict = all_full_rank ? Verdict::Certified : Verdict::NotCertifiedAtLevel;
  return cert;
}

/// Auto-level variants mirroring certify_bipartite_auto.
template <class S>
Certificate certify_ces_auto(const Subspace<S>& s, int k_max, const CertifyOptions& opts = {}) {
  if (k_max < 1) throw std::invalid_argument("certify_ces_auto: k_max must be >= 1");
  Certificate out;
  for (int k = 1; k <= k_max; ++k) {
    Certificate step = certify_ces(s, k, opts);
    if (k == 1) {
      out = step;
    } else {
      out.verdict = step.verdict;
      out.level = step.level;
      for (auto& rep : step.systems) out.systems.push_back(std::move(rep));
    }
    if (out.verdict == Verdict::Certified || out.verdict == Verdict::SystemTooLarge) break;
  }
  return out;
}

template <class S>
Certificate certify_ges_auto(const Subspace<S>& s, int k_max, const CertifyOptions& opts = {}) {
  if (k_max < 1) throw std::invalid_argument("certify_ges_auto: k_max must be >= 1");
  Certificate out;
  for (int k = 1; k <= k_max; ++k) {
    Certificate step = certify_ges(s, k, opts);
    if (k == 1) {
      out = step;
    } else {
      out.verdict = step.verdict;
      out.level = step.level;
      for (auto& rep : step.systems) out.systems.push_back(std::move(rep));
    }
    if (out.verdict == Verdict::Certified || out.verdict == Verdict::SystemTooLarge) break;
  }
  return out;
}

}  // namespace entcert
