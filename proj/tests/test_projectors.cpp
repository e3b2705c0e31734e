#include <doctest.h>

#include <map>
#include <random>

#include "entcert/constructions.hpp"
#include "entcert/projectors.hpp"
#include "oracle.hpp"

using namespace entcert;

namespace {

double max_norm(const std::vector<Complexd>& v) {
  double m = 0.0;
  for (const auto& c : v) m = std::max(m, std::abs(c));
  return m;
}

bool exactly_zero(const std::vector<RationalComplex>& v) {
  for (const auto& c : v)
    if (!c.is_zero()) return false;
  return true;
}

std::vector<RationalComplex> random_rational_vector(std::int64_t len, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> entry(-3, 3);
  std::vector<RationalComplex> v(static_cast<std::size_t>(len));
  for (auto& c : v) c = RationalComplex(entry(rng), entry(rng));
  return v;
}

}  // namespace

TEST_CASE("antisymmetric pair annihilates a product state") {
  std::vector<Complexd> x(4);
  x[0] = 1.0;  // |0> (x) |0>
  const auto coords = apply_antisym_pair<Complexd>(2, 2, {x, x});
  REQUIRE(coords.size() == 1);
  CHECK(max_norm(coords) == 0.0);

  std::vector<RationalComplex> xq(4);
  xq[0] = RationalComplex(1);
  CHECK(exactly_zero(apply_antisym_pair<RationalComplex>(2, 2, {xq, xq})));
}

TEST_CASE("Bell state has the single wedge coordinate 1/4") {
  std::vector<Complexd> bell(4);
  bell[0] = bell[3] = 1.0 / std::sqrt(2.0);
  const auto coords = apply_antisym_pair<Complexd>(2, 2, {bell, bell});
  REQUIRE(coords.size() == 1);
  CHECK(std::abs(coords[0] - Complexd(0.25, 0.0)) < 1e-15);

  // Unnormalized rational Bell: the coordinate scales with the squared norm.
  std::vector<RationalComplex> bq(4);
  bq[0] = bq[3] = RationalComplex(1);
  const auto qcoords = apply_antisym_pair<RationalComplex>(2, 2, {bq, bq});
  REQUIRE(qcoords.size() == 1);
  CHECK(qcoords[0] == RationalComplex(mpq_class(1, 2), mpq_class(0)));
}

TEST_CASE("Schmidt rank 2 vector dies under the r = 2 wedge pair") {
  std::vector<RationalComplex> x(9);
  x[0] = RationalComplex(1);  // |00> + |11> in 3x3
  x[4] = RationalComplex(1);
  CHECK(exactly_zero(apply_antisym_pair<RationalComplex>(3, 3, {x, x, x})));
}

TEST_CASE("trivial antisymmetric space yields an empty coordinate vector") {
  std::vector<Complexd> x(6, Complexd(1.0, 0.0));
  CHECK(apply_antisym_pair<Complexd>(2, 3, {x, x, x}).empty());
}

TEST_CASE("wedge-pair coordinates vanish exactly when the Schmidt rank is below r+1") {
  for (const auto& dims : {std::vector<int>{2, 2}, {3, 3}, {4, 4}, {2, 4}}) {
    const TensorSpace space(dims);
    const int smax = std::min(dims[0], dims[1]);
    for (int trial = 0; trial < 60; ++trial) {
      const int s = 1 + trial % smax;
      const auto x = constructions::random_fixed_schmidt_rank_vector(
          space, s, static_cast<std::uint64_t>(trial) * 977 + dims[0] * 31 + dims[1]);
      for (int r = 1; r < smax; ++r) {
        std::vector<std::vector<Complexd>> copies(static_cast<std::size_t>(r + 1), x);
        const bool vanished =
            max_norm(apply_antisym_pair<Complexd>(dims[0], dims[1], copies)) < 1e-10;
        CHECK(vanished == (s <= r));
      }
    }
  }
}

TEST_CASE("exact mode: vanishing is exact for rational inputs") {
  for (const auto& dims : {std::vector<int>{2, 2}, {3, 3}, {2, 4}}) {
    const TensorSpace space(dims);
    const int smax = std::min(dims[0], dims[1]);
    for (int trial = 0; trial < 15; ++trial) {
      const int s = 1 + trial % smax;
      const auto x = constructions::rational_fixed_schmidt_rank_vector(
          space, s, static_cast<std::uint64_t>(trial) * 13 + dims[1]);
      for (int r = 1; r < smax; ++r) {
        std::vector<std::vector<RationalComplex>> copies(static_cast<std::size_t>(r + 1), x);
        CHECK(exactly_zero(apply_antisym_pair<RationalComplex>(dims[0], dims[1], copies)) ==
              (s <= r));
      }
    }
  }
}

TEST_CASE("implicit columns match the dense projector construction") {
  std::mt19937_64 rng(4242);
  for (const auto& dims : {std::vector<int>{2, 2}, {2, 3}, {3, 3}}) {
    for (int k = 1; k <= 2; ++k) {
      const BipartiteLevelShape shape{dims[0], dims[1], 1, k};
      const BipartiteLevelSystem<Complexd> sys(shape);
      const oracle::EMat dense = oracle::dense_level_map(dims[0], dims[1], 1, k);

      // Three vectors with one planted product vector, so the zero pattern is
      // exercised along with the generic one.
      std::vector<std::vector<Complexd>> basis;
      basis.push_back(constructions::random_product_vector(TensorSpace(dims), rng()));
      for (int i = 0; i < 2; ++i) {
        std::normal_distribution<double> g;
        std::vector<Complexd> v(static_cast<std::size_t>(dims[0] * dims[1]));
        for (auto& c : v) c = Complexd(g(rng), g(rng));
        basis.push_back(std::move(v));
      }

      for (const auto& m : enumerate_multisets(3, 1 + k)) {
        const auto column = sys.column(basis, m);
        const oracle::EVec expanded = oracle::expand_column(column, dims[0], dims[1], 1, k);
        const oracle::EVec direct = dense * oracle::product_vector(basis, m);
        REQUIRE(expanded.size() == direct.size());
        CHECK((expanded - direct).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
}

TEST_CASE("grouped symmetrization equals the full ordering average") {
  std::mt19937_64 rng(555);
  const BipartiteLevelShape shape{3, 3, 1, 2};
  const BipartiteLevelSystem<RationalComplex> sys(shape);
  std::vector<std::vector<RationalComplex>> basis;
  for (int i = 0; i < 3; ++i) basis.push_back(random_rational_vector(9, rng));

  for (const auto& m : {MultisetIndex{0, 1, 2}, {0, 0, 1}, {2, 2, 2}, {0, 1, 1}}) {
    // Average over every ordering of the tuple, duplicates included.
    std::vector<std::vector<int>> all;
    {
      std::vector<int> idx{0, 1, 2};
      do {
        std::vector<int> o;
        for (int i : idx) o.push_back(m[static_cast<std::size_t>(i)]);
        all.push_back(std::move(o));
      } while (std::next_permutation(idx.begin(), idx.end()));
    }
    std::map<std::int64_t, RationalComplex> expected;
    for (const auto& o : all) {
      const auto coords = apply_antisym_pair<RationalComplex>(
          3, 3, {basis[static_cast<std::size_t>(o[0])], basis[static_cast<std::size_t>(o[1])]});
      const auto& trail = basis[static_cast<std::size_t>(o[2])];
      for (std::size_t p = 0; p < coords.size(); ++p)
        for (std::size_t f = 0; f < trail.size(); ++f) {
          auto v = coords[p] * trail[f];
          if (!v.is_zero())
            expected[static_cast<std::int64_t>(p * trail.size() + f)] +=
                ScalarOps<RationalComplex>::div_int(v, all.size());
        }
    }
    std::map<std::int64_t, RationalComplex> got;
    for (const auto& [row, val] : sys.column(basis, m)) got[row] += val;
    for (const auto& [row, val] : expected) {
      if (val.is_zero()) {
        CHECK((got.count(row) == 0 || got.at(row).is_zero()));
        continue;
      }
      REQUIRE(got.count(row) == 1);
      CHECK(got.at(row) == val);
    }
    for (const auto& [row, val] : got) CHECK(expected[row] == val);
  }
}

TEST_CASE("summed wedge-pair subspace dimensions") {
  // Spanning counts follow from the cut chain; the summed dimensions were
  // frozen from a dense orthonormalization of the spanning vectors.
  struct Row {
    std::vector<int> dims;
    std::size_t spanning;
    std::size_t dimension;
  };
  for (const auto& row : {Row{{2, 2, 2}, 12, 9}, Row{{2, 2, 3}, 33, 24}, Row{{2, 3, 3}, 81, 63},
                          Row{{2, 2, 2, 2}, 84, 55}}) {
    const TensorSpace space(row.dims);
    const auto exact = build_ces_projector<RationalComplex>(space);
    CHECK(exact.columns.size() == row.spanning);
    const auto ortho = build_ces_projector<Complexd>(space);
    CHECK(ortho.columns.size() == row.dimension);
    CHECK(static_cast<std::size_t>(oracle::dense_ces_span(space).cols()) == row.dimension);
  }
  CHECK_THROWS_AS(build_ces_projector<Complexd>(TensorSpace({1, 2, 2})), std::invalid_argument);
}

TEST_CASE("summed wedge-pair coordinates annihilate product vectors") {
  for (const auto& dims : {std::vector<int>{2, 2, 2}, {2, 2, 3}, {2, 3, 3}, {2, 2, 2, 2}}) {
    const TensorSpace space(dims);
    const auto basis = build_ces_projector<Complexd>(space);
    const auto total = static_cast<std::size_t>(space.total_dimension());
    for (int trial = 0; trial < 200; ++trial) {
      const auto x =
          constructions::random_product_vector(space, static_cast<std::uint64_t>(trial));
      std::vector<Complexd> y(total * total);
      for (std::size_t u = 0; u < total; ++u)
        for (std::size_t v = 0; v < total; ++v) y[u * total + v] = x[u] * x[v];
      CHECK(max_norm(ces_coordinates(basis, y)) < 1e-10);
    }
  }
}

TEST_CASE("summed wedge-pair coordinates annihilate rational products exactly") {
  const TensorSpace space({2, 2, 3});
  const auto basis = build_ces_projector<RationalComplex>(space);
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 10; ++trial) {
    const auto u = random_rational_vector(2, rng);
    const auto v = random_rational_vector(2, rng);
    const auto w = random_rational_vector(3, rng);
    std::vector<RationalComplex> x;
    for (const auto& a : u)
      for (const auto& b : v)
        for (const auto& c : w) x.push_back(a * b * c);
    std::vector<RationalComplex> y(x.size() * x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j) y[i * x.size() + j] = x[i] * x[j];
    CHECK(exactly_zero(ces_coordinates(basis, y)));
  }
}

TEST_CASE("ces columns match the dense projector on the doubled space") {
  const TensorSpace space({2, 2, 2});
  const auto basis = build_ces_projector<Complexd>(space);
  const oracle::EMat q = oracle::dense_ces_span(space);
  const oracle::EMat proj = q * q.adjoint();
  const std::int64_t total = space.total_dimension();
  std::mt19937_64 rng(777);
  std::normal_distribution<double> g;

  std::vector<std::vector<Complexd>> subspace;
  for (int i = 0; i < 3; ++i) {
    std::vector<Complexd> v(static_cast<std::size_t>(total));
    for (auto& c : v) c = Complexd(g(rng), g(rng));
    subspace.push_back(std::move(v));
  }

  for (int k = 1; k <= 2; ++k) {
    const CesLevelSystem<Complexd> sys(&basis, k);
    const std::int64_t trailing = k == 1 ? 1 : total;
    const oracle::EMat lifted = oracle::kron(proj, oracle::EMat::Identity(trailing, trailing));
    const oracle::EMat sym = oracle::sym_projector(total, k + 1);
    for (const auto& m : enumerate_multisets(3, k + 1)) {
      const oracle::EVec direct = lifted * (sym * oracle::product_vector(subspace, m));
      oracle::EVec reconstructed = oracle::EVec::Zero(total * total * trailing);
      for (const auto& [row, value] : sys.column(subspace, m)) {
        const std::int64_t j = row / trailing;
        const std::int64_t f = row % trailing;
        const auto& col = basis.columns[static_cast<std::size_t>(j)];
        for (std::int64_t g2 = 0; g2 < total * total; ++g2)
          reconstructed(g2 * trailing + f) += value * col[static_cast<std::size_t>(g2)];
      }
      CHECK((reconstructed - direct).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}
