#include "entcert/constructions.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace entcert::constructions {

namespace {

using Rc = RationalComplex;

std::vector<Rc> rc_vector(std::int64_t len, const std::vector<std::pair<std::int64_t, long>>& amps) {
  std::vector<Rc> v(static_cast<std::size_t>(len));
  for (const auto& [idx, val] : amps) v[static_cast<std::size_t>(idx)] = Rc(val);
  return v;
}

// Indexing on (4,4): |a> (x) |b>  ->  4a + b.
std::vector<std::vector<Rc>> example1_vectors() {
  std::vector<std::vector<Rc>> xs;
  xs.push_back(rc_vector(16, {{0, 1}, {5, 1}, {10, 1}, {15, 1}}));    // 00+11+22+33
  xs.push_back(rc_vector(16, {{0, 1}, {5, -1}, {10, 1}, {15, -1}}));  // 00-11+22-33
  xs.push_back(rc_vector(16, {{1, 1}, {6, 1}, {11, 1}}));             // 01+12+23
  xs.push_back(rc_vector(16, {{4, 1}, {9, 1}, {14, 1}}));             // 10+21+32
  xs.push_back(rc_vector(16, {{1, 1}, {6, 2}, {11, 3}}));             // 01+2*12+3*23
  xs.push_back(rc_vector(16, {{4, 1}, {9, 2}, {14, 3}}));             // 10+2*21+3*32
  xs.push_back(rc_vector(16, {{2, 1}, {7, 1}}));                      // 02+13
  xs.push_back(rc_vector(16, {{8, 1}, {13, 1}}));                     // 20+31
  return xs;
}

MixedState<Rc> upb_complement_state(const TensorSpace& space,
                                    const std::vector<std::vector<Rc>>& upb) {
  const auto d = static_cast<std::size_t>(space.total_dimension());
  const long remaining = static_cast<long>(d) - static_cast<long>(upb.size());
  if (remaining <= 0) throw std::invalid_argument("upb_complement_state: basis too large");
  MixedState<Rc> out{space, std::vector<std::vector<Rc>>(d, std::vector<Rc>(d))};
  for (std::size_t i = 0; i < d; ++i) out.rho[i][i] = Rc(1);
  for (const auto& v : upb) {
    mpq_class norm(0);
    for (const auto& c : v) norm += c.norm_sq();
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        Rc p = v[i] * v[j].conj();
        out.rho[i][j] -= Rc(p.re / norm, p.im / norm);
      }
  }
  const mpq_class scale(1, static_cast<unsigned long>(remaining));
  for (auto& row : out.rho)
    for (auto& e : row) e = Rc(e.re * scale, e.im * scale);
  return out;
}

std::mt19937_64 seeded(std::uint64_t seed) { return std::mt19937_64(seed ^ 0x9e3779b97f4a7c15ULL); }

Eigen::MatrixXcd gaussian_matrix(std::int64_t rows, std::int64_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::MatrixXcd g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = Complexd(dist(rng), dist(rng));
  return g;
}

Eigen::MatrixXcd haar_columns(std::int64_t dim, std::int64_t count, std::mt19937_64& rng) {
  Eigen::MatrixXcd g = gaussian_matrix(dim, count, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  return Eigen::MatrixXcd(qr.householderQ()) * Eigen::MatrixXcd::Identity(dim, count);
}

std::vector<Complexd> column_to_vector(const Eigen::MatrixXcd& m, Eigen::Index c) {
  std::vector<Complexd> v(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) v[static_cast<std::size_t>(i)] = m(i, c);
  return v;
}

}  // namespace

Subspace<Rc> example1_subspace() {
  return Subspace<Rc>(TensorSpace({4, 4}), example1_vectors());
}

Subspace<Rc> example2_subspace() {
  auto xs = example1_vectors();
  return Subspace<Rc>(TensorSpace({4, 4}), {xs[0], xs[2], xs[3]});
}

Subspace<Rc> example3_subspace() {
  auto xs = example1_vectors();
  std::vector<Rc> x9(16);
  const mpq_class half(1, 2);
  x9[0] = Rc(half, 0);
  x9[5] = Rc(half, 0);
  x9[10] = Rc(-half, 0);
  x9[15] = Rc(-half, 0);
  xs.push_back(std::move(x9));
  return Subspace<Rc>(TensorSpace({4, 4}), std::move(xs));
}

std::vector<std::vector<Rc>> tiles_upb_vectors() {
  std::vector<std::vector<Rc>> v;
  v.push_back(rc_vector(9, {{0, 1}, {1, -1}}));          // |0>(|0>-|1>)
  v.push_back(rc_vector(9, {{7, 1}, {8, -1}}));          // |2>(|1>-|2>)
  v.push_back(rc_vector(9, {{2, 1}, {5, -1}}));          // (|0>-|1>)|2>
  v.push_back(rc_vector(9, {{3, 1}, {6, -1}}));          // (|1>-|2>)|0>
  v.push_back(rc_vector(9, {{0, 1}, {1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}, {6, 1}, {7, 1}, {8, 1}}));
  return v;
}

MixedState<Rc> tiles_upb_state() {
  return upb_complement_state(TensorSpace({3, 3}), tiles_upb_vectors());
}

MixedState<Rc> example5_state() {
  const TensorSpace space({4, 4});
  std::vector<std::vector<Rc>> xs;
  xs.push_back(rc_vector(16, {{0, 1}, {5, 1}, {10, 1}, {15, 1}}));   // 00+11+22+33
  xs.push_back(rc_vector(16, {{1, 1}, {6, 1}, {11, 1}, {12, 1}}));   // 01+12+23+30
  xs.push_back(rc_vector(16, {{2, 1}, {7, 1}, {8, 1}, {13, -1}}));   // 02+13+20-31
  MixedState<Rc> out{space, std::vector<std::vector<Rc>>(16, std::vector<Rc>(16))};
  const mpq_class third(1, 3);
  for (const auto& x : xs) {
    mpq_class norm(0);
    for (const auto& c : x) norm += c.norm_sq();
    for (std::size_t i = 0; i < 16; ++i)
      for (std::size_t j = 0; j < 16; ++j) {
        Rc p = x[i] * x[j].conj();
        out.rho[i][j] += Rc(p.re * third / norm, p.im * third / norm);
      }
  }
  return out;
}

std::vector<std::vector<Complexd>> pyramid_upb_vectors() {
  const double h = 0.5 * std::sqrt(1.0 + std::sqrt(5.0));
  const double n = 2.0 / std::sqrt(5.0 + std::sqrt(5.0));
  std::vector<std::vector<double>> legs(5, std::vector<double>(3));
  for (int j = 0; j < 5; ++j) {
    const double angle = 2.0 * std::numbers::pi * j / 5.0;
    legs[static_cast<std::size_t>(j)] = {n * std::cos(angle), n * std::sin(angle), n * h};
  }
  std::vector<std::vector<Complexd>> out;
  for (int j = 0; j < 5; ++j) {
    const auto& a = legs[static_cast<std::size_t>(j)];
    const auto& b = legs[static_cast<std::size_t>((2 * j) % 5)];
    std::vector<Complexd> v(9);
    for (int p = 0; p < 3; ++p)
      for (int q = 0; q < 3; ++q)
        v[static_cast<std::size_t>(3 * p + q)] = Complexd(a[static_cast<std::size_t>(p)] *
                                                          b[static_cast<std::size_t>(q)]);
    out.push_back(std::move(v));
  }
  return out;
}

MixedState<Complexd> pyramid_upb_state() {
  const auto upb = pyramid_upb_vectors();
  MixedState<Complexd> out{TensorSpace({3, 3}),
                           std::vector<std::vector<Complexd>>(9, std::vector<Complexd>(9))};
  for (std::size_t i = 0; i < 9; ++i) out.rho[i][i] = 1.0;
  for (const auto& v : upb) {
    double norm = 0.0;
    for (const auto& c : v) norm += std::norm(c);
    for (std::size_t i = 0; i < 9; ++i)
      for (std::size_t j = 0; j < 9; ++j) out.rho[i][j] -= v[i] * std::conj(v[j]) / norm;
  }
  for (auto& row : out.rho)
    for (auto& e : row) e /= 4.0;
  return out;
}

int bhat_ces_dimension(const TensorSpace& space) {
  if (space.parties() != 3) throw std::invalid_argument("bhat_ces: need exactly 3 parties");
  int sum_dims = 0;
  for (std::size_t p = 0; p < 3; ++p) sum_dims += space.dim(p);
  return static_cast<int>(space.total_dimension()) - sum_dims + 2;
}

Subspace<Rc> bhat_ces(const TensorSpace& space) {
  if (space.parties() != 3) throw std::invalid_argument("bhat_ces: need exactly 3 parties");
  for (std::size_t p = 0; p < 3; ++p)
    if (space.dim(p) < 2) throw std::invalid_argument("bhat_ces: every dimension must be >= 2");
  const std::int64_t total = space.total_dimension();
  const int max_sum = space.dim(0) + space.dim(1) + space.dim(2) - 3;
  // Within each index-sum level set, differences against the lexicographically
  // first member already span all pairwise differences.
  std::vector<std::vector<std::int64_t>> levels(static_cast<std::size_t>(max_sum + 1));
  for (std::int64_t flat = 0; flat < total; ++flat) {
    const auto multi = space.unflatten(flat);
    levels[static_cast<std::size_t>(multi[0] + multi[1] + multi[2])].push_back(flat);
  }
  std::vector<std::vector<Rc>> basis;
  for (const auto& level : levels)
    for (std::size_t i = 1; i < level.size(); ++i) {
      std::vector<Rc> v(static_cast<std::size_t>(total));
      v[static_cast<std::size_t>(level[0])] = Rc(1);
      v[static_cast<std::size_t>(level[i])] = Rc(-1);
      basis.push_back(std::move(v));
    }
  return Subspace<Rc>(space, std::move(basis));
}

Subspace<Rc> banded_subspace(int d_A, int d_B, int r, int target_dim) {
  if (r < 1 || r >= std::min(d_A, d_B))
    throw std::invalid_argument("banded_subspace: need 1 <= r < min(d_A, d_B)");
  const int capacity = (d_A - r) * (d_B - r);
  if (target_dim < 1 || target_dim > capacity)
    throw std::invalid_argument("banded_subspace: target dimension exceeds capacity");

  // Offsets visited center-out: 0, +1, -1, +2, -2, ...
  std::vector<int> offsets{0};
  for (int o = 1; o < std::max(d_A, d_B); ++o) {
    if (o <= d_B - 1) offsets.push_back(o);
    if (o <= d_A - 1) offsets.push_back(-o);
  }
  const auto diagonal_cells = [&](int o) {
    std::vector<std::pair<int, int>> cells;
    for (int a = 0; a < d_A; ++a) {
      const int b = a + o;
      if (b >= 0 && b < d_B) cells.emplace_back(a, b);
    }
    return cells;
  };

  // Coefficients are small nonzero integers from a fixed seed: structured
  // patterns (all-ones, Vandermonde rows) leave the span short of generic
  // rank at larger dimensions, while generic integer rows certify; every use
  // is validated post hoc by the certification itself.
  std::mt19937_64 rng(0x9E3779B97F4A7C15ULL ^ (static_cast<std::uint64_t>(d_A) << 32) ^
                      (static_cast<std::uint64_t>(d_B) << 16) ^ static_cast<std::uint64_t>(r));
  std::uniform_int_distribution<long> coeff(1, 198);
  const auto draw = [&]() {
    const long c = coeff(rng);
    return c > 99 ? 99 - c : c;  // {1..99, -1..-99}
  };

  std::vector<std::vector<Rc>> basis;
  for (int round = 0; static_cast<int>(basis.size()) < target_dim; ++round) {
    bool any = false;
    for (int o : offsets) {
      const auto cells = diagonal_cells(o);
      if (static_cast<int>(cells.size()) - r <= round) continue;
      any = true;
      std::vector<Rc> v(static_cast<std::size_t>(d_A) * static_cast<std::size_t>(d_B));
      for (const auto& [a, b] : cells)
        v[static_cast<std::size_t>(a) * d_B + static_cast<std::size_t>(b)] = Rc(draw());
      basis.push_back(std::move(v));
      if (static_cast<int>(basis.size()) == target_dim) break;
    }
    if (!any) throw std::logic_error("banded_subspace: allocation ran out of diagonals");
  }
  return Subspace<Rc>(TensorSpace({d_A, d_B}), std::move(basis));
}

Subspace<Complexd> random_subspace(const TensorSpace& space, int d_S, std::uint64_t seed) {
  const std::int64_t total = space.total_dimension();
  if (d_S < 1 || d_S > total) throw std::invalid_argument("random_subspace: bad dimension");
  auto rng = seeded(seed);
  const auto q = haar_columns(total, d_S, rng);
  std::vector<std::vector<Complexd>> basis;
  basis.reserve(static_cast<std::size_t>(d_S));
  for (int c = 0; c < d_S; ++c) basis.push_back(column_to_vector(q, c));
  return Subspace<Complexd>(space, std::move(basis), false);
}

std::vector<Complexd> random_product_vector(const TensorSpace& space, std::uint64_t seed) {
  auto rng = seeded(seed * 0x2545f4914f6cdd1dULL + 1);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<Complexd> v{Complexd(1.0, 0.0)};
  for (std::size_t p = 0; p < space.parties(); ++p) {
    std::vector<Complexd> local(static_cast<std::size_t>(space.dim(p)));
    double norm = 0.0;
    for (auto& c : local) {
      c = Complexd(dist(rng), dist(rng));
      norm += std::norm(c);
    }
    norm = std::sqrt(norm);
    for (auto& c : local) c /= norm;
    std::vector<Complexd> next(v.size() * local.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < local.size(); ++j) next[i * local.size() + j] = v[i] * local[j];
    v = std::move(next);
  }
  return v;
}

namespace {

Subspace<Complexd> planted_subspace(const TensorSpace& space, std::vector<Complexd> planted,
                                    int d_S, std::uint64_t seed) {
  const std::int64_t total = space.total_dimension();
  if (d_S < 1 || d_S > total) throw std::invalid_argument("planted subspace: bad dimension");
  auto rng = seeded(seed * 0x100000001b3ULL + 7);
  std::vector<std::vector<Complexd>> basis;
  basis.push_back(std::move(planted));
  if (d_S > 1) {
    const auto g = gaussian_matrix(total, d_S - 1, rng);
    for (int c = 0; c < d_S - 1; ++c) {
      auto v = column_to_vector(g, c);
      double norm = 0.0;
      for (const auto& x : v) norm += std::norm(x);
      norm = std::sqrt(norm);
      for (auto& x : v) x /= norm;
      basis.push_back(std::move(v));
    }
  }
  return Subspace<Complexd>(space, std::move(basis));
}

}  // namespace

Subspace<Complexd> planted_product_subspace(const TensorSpace& space, int d_S,
                                            std::uint64_t seed) {
  return planted_subspace(space, random_product_vector(space, seed), d_S, seed);
}

Subspace<Complexd> planted_biseparable_subspace(const TensorSpace& space,
                                                const std::vector<std::size_t>& left_parties,
                                                int d_S, std::uint64_t seed) {
  const auto regroup = regroup_bipartition(space, left_parties);
  const auto product = random_product_vector(regroup.bipartite, seed);
  // Map the bipartite product amplitudes back to the original factor order.
  std::vector<Complexd> planted(product.size());
  for (std::size_t i = 0; i < planted.size(); ++i)
    planted[i] = product[static_cast<std::size_t>(regroup.to_regrouped[i])];
  return planted_subspace(space, std::move(planted), d_S, seed);
}

std::vector<Complexd> random_fixed_schmidt_rank_vector(const TensorSpace& space, int s,
                                                       std::uint64_t seed) {
  if (space.parties() != 2) throw std::invalid_argument("fixed_schmidt_rank: need 2 parties");
  const int da = space.dim(0), db = space.dim(1);
  if (s < 1 || s > std::min(da, db))
    throw std::invalid_argument("fixed_schmidt_rank: rank out of range");
  auto rng = seeded(seed * 0xd6e8feb86659fd93ULL + 3);
  const auto u = haar_columns(da, s, rng);
  const auto w = haar_columns(db, s, rng);
  std::uniform_real_distribution<double> weight(0.5, 1.5);
  std::vector<Complexd> x(static_cast<std::size_t>(da) * static_cast<std::size_t>(db));
  double norm = 0.0;
  for (int t = 0; t < s; ++t) {
    const double lambda = weight(rng);
    norm += lambda * lambda;
    for (int a = 0; a < da; ++a)
      for (int b = 0; b < db; ++b)
        x[static_cast<std::size_t>(a) * db + static_cast<std::size_t>(b)] +=
            lambda * u(a, t) * w(b, t);
  }
  norm = std::sqrt(norm);
  for (auto& c : x) c /= norm;
  return x;
}

std::vector<Rc> rational_fixed_schmidt_rank_vector(const TensorSpace& space, int s,
                                                   std::uint64_t seed) {
  if (space.parties() != 2) throw std::invalid_argument("fixed_schmidt_rank: need 2 parties");
  const int da = space.dim(0), db = space.dim(1);
  if (s < 1 || s > std::min(da, db))
    throw std::invalid_argument("fixed_schmidt_rank: rank out of range");
  auto rng = seeded(seed * 0xff51afd7ed558ccdULL + 5);
  std::uniform_int_distribution<long> entry(-3, 3);
  while (true) {
    std::vector<Rc> x(static_cast<std::size_t>(da) * static_cast<std::size_t>(db));
    for (int t = 0; t < s; ++t) {
      std::vector<long> u(static_cast<std::size_t>(da)), w(static_cast<std::size_t>(db));
      for (auto& c : u) c = entry(rng);
      for (auto& c : w) c = entry(rng);
      for (int a = 0; a < da; ++a)
        for (int b = 0; b < db; ++b)
          x[static_cast<std::size_t>(a) * db + static_cast<std::size_t>(b)] +=
              Rc(u[static_cast<std::size_t>(a)] * w[static_cast<std::size_t>(b)]);
    }
    bool zero = true;
    for (const auto& c : x) zero = zero && c.is_zero();
    if (!zero && schmidt_rank_exact(x, space) == s) return x;
  }
}

const std::vector<Level1TableRow>& level1_max_dimension_table() {
  static const std::vector<Level1TableRow> rows = {
      {3, 1, 3},  {4, 1, 8},  {5, 1, 13}, {6, 1, 20}, {7, 1, 29}, {8, 1, 39},
      {9, 1, 50}, {10, 1, 63},
      {3, 2, 1},  {4, 2, 3},  {5, 2, 7},  {6, 2, 12}, {7, 2, 18}, {8, 2, 25},
      {9, 2, 33}, {10, 2, 43}};
  return rows;
}

const std::vector<Level2TableRow>& level2_max_dimension_table() {
  static const std::vector<Level2TableRow> rows = {
      {3, 1, 4},  {4, 1, 9},  {5, 1, 16}, {6, 1, 25}, {7, 1, 36},
      {3, 2, 1},  {4, 2, 4},  {5, 2, 9},  {6, 2, 16}, {7, 2, 25}};
  return rows;
}

const std::vector<CesTableRow>& ces_level_table() {
  static const std::vector<CesTableRow> rows = {
      {2, 2, 2, 4, 2},  {2, 2, 3, 7, 2},  {2, 2, 4, 10, 2}, {2, 2, 5, 13, 2},
      {2, 2, 6, 16, 2}, {2, 2, 7, 19, 2}, {2, 2, 8, 22, 2}, {2, 2, 9, 25, 2},
      {2, 3, 3, 12, 3}, {2, 3, 4, 17, 3}, {2, 3, 5, 22, 3}, {3, 3, 3, 20, 4}};
  return rows;
}

}  // namespace entcert::constructions
