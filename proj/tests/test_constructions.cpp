#include <doctest.h>

#include "entcert/constructions.hpp"
#include "entcert/hierarchy.hpp"

using namespace entcert;
using namespace entcert::constructions;

TEST_CASE("example1 basis matches its defining amplitudes") {
  const auto s = example1_subspace();
  CHECK(s.dimension() == 8);
  CHECK(s.space().dims() == std::vector<int>{4, 4});
  // x_8 = |2>|0> + |3>|1>
  const auto& x8 = s.basis()[7];
  CHECK(x8[8] == RationalComplex(1));
  CHECK(x8[13] == RationalComplex(1));
  int nonzero = 0;
  for (const auto& c : x8)
    if (!c.is_zero()) ++nonzero;
  CHECK(nonzero == 2);

  for (const auto& x : s.basis()) CHECK(schmidt_rank_exact(x, s.space()) >= 2);
}

TEST_CASE("example3 adds the signed half diagonal") {
  const auto s = example3_subspace();
  CHECK(s.dimension() == 9);
  const auto& x9 = s.basis()[8];
  const mpq_class half(1, 2);
  CHECK(x9[0].re == half);
  CHECK(x9[5].re == half);
  CHECK(x9[10].re == -half);
  CHECK(x9[15].re == -half);
}

TEST_CASE("tiles vectors are an orthogonal product family") {
  const auto vs = tiles_upb_vectors();
  REQUIRE(vs.size() == 5);
  const TensorSpace space({3, 3});
  for (std::size_t i = 0; i < vs.size(); ++i) {
    CHECK(schmidt_rank_exact(vs[i], space) == 1);
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      RationalComplex dot;
      for (std::size_t t = 0; t < vs[i].size(); ++t) dot += vs[i][t].conj() * vs[j][t];
      CHECK(dot.is_zero());
    }
  }
}

TEST_CASE("tiles state is PPT with exact rank 4") {
  const auto rho = tiles_upb_state();
  validate_mixed_state(rho);
  CHECK(range_basis(rho).basis.size() == 4);
  const auto pt_eigs = hermitian_eigenvalues(partial_transpose(to_float(rho)));
  for (double e : pt_eigs) CHECK(e >= -1e-10);
}

TEST_CASE("example5 state has rank 3 and a negative partial transpose") {
  const auto rho = example5_state();
  validate_mixed_state(rho);
  CHECK(range_basis(rho).basis.size() == 3);
  const auto pt_eigs = hermitian_eigenvalues(partial_transpose(to_float(rho)));
  double min_eig = 0.0;
  for (double e : pt_eigs) min_eig = std::min(min_eig, e);
  CHECK(min_eig < -1e-6);
}

TEST_CASE("pyramid vectors are an orthogonal product family too") {
  const auto vs = pyramid_upb_vectors();
  REQUIRE(vs.size() == 5);
  const TensorSpace space({3, 3});
  for (std::size_t i = 0; i < vs.size(); ++i) {
    double norm = 0.0;
    for (const auto& c : vs[i]) norm += std::norm(c);
    CHECK(norm == doctest::Approx(1.0));
    CHECK(schmidt_rank(vs[i], space) == 1);
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      Complexd dot = 0.0;
      for (std::size_t t = 0; t < 9; ++t) dot += std::conj(vs[i][t]) * vs[j][t];
      CHECK(std::abs(dot) < 1e-12);
    }
  }
  const auto rho = pyramid_upb_state();
  validate_mixed_state(rho);
  CHECK(range_basis(rho).basis.size() == 4);
  const auto pt_eigs = hermitian_eigenvalues(partial_transpose(rho));
  for (double e : pt_eigs) CHECK(e >= -1e-10);
}

TEST_CASE("bhat subspace dimensions follow the closed formula") {
  CHECK(bhat_ces(TensorSpace({2, 2, 2})).dimension() == 4);
  CHECK(bhat_ces(TensorSpace({3, 3, 3})).dimension() == 20);
  CHECK(bhat_ces(TensorSpace({2, 3, 5})).dimension() == 22);
  for (int da = 2; da <= 4; ++da)
    for (int db = 2; db <= 4; ++db)
      for (int dc = 2; dc <= 4; ++dc) {
        const TensorSpace space({da, db, dc});
        CHECK(bhat_ces(space).dimension() == bhat_ces_dimension(space));
      }
}

TEST_CASE("bhat basis spans the full generating set") {
  for (const auto& dims : {std::vector<int>{2, 2, 2}, {2, 3, 4}, {3, 3, 3}}) {
    const TensorSpace space(dims);
    const std::int64_t total = space.total_dimension();
    // Every difference of equal-sum computational vectors, not just the
    // anchor-based subfamily the construction returns.
    std::vector<Triplet<RationalComplex>> ts;
    std::int64_t col = 0;
    for (std::int64_t i = 0; i < total; ++i)
      for (std::int64_t j = i + 1; j < total; ++j) {
        const auto mi = space.unflatten(i);
        const auto mj = space.unflatten(j);
        if (mi[0] + mi[1] + mi[2] != mj[0] + mj[1] + mj[2]) continue;
        ts.push_back({i, col, RationalComplex(1)});
        ts.push_back({j, col, RationalComplex(-1)});
        ++col;
      }
    const auto generating = assemble<RationalComplex>(total, col, std::move(ts));
    CHECK(exact_rank(generating).rank == bhat_ces_dimension(space));
  }
}

TEST_CASE("banded subspaces populate diagonals center-out") {
  const auto s = banded_subspace(4, 4, 1, 8);
  CHECK(s.dimension() == 8);
  // First vector is supported on exactly the main diagonal.
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      CHECK(s.basis()[0][static_cast<std::size_t>(4 * a + b)].is_zero() == (a != b));
  CHECK(s.basis() == banded_subspace(4, 4, 1, 8).basis());  // deterministic
  CHECK_THROWS_AS(banded_subspace(4, 4, 1, 10), std::invalid_argument);
  CHECK_THROWS_AS(banded_subspace(4, 4, 4, 1), std::invalid_argument);
  CHECK(banded_subspace(4, 4, 3, 1).dimension() == 1);
  CHECK(banded_subspace(4, 4, 2, 4).dimension() == 4);
  CHECK(banded_subspace(5, 3, 1, 8).dimension() == 8);
}

TEST_CASE("banded subspaces certify at the sizes they are used for") {
  CHECK(certify_bipartite(to_float(banded_subspace(4, 4, 1, 8)), 1, 1).certified());
  CHECK(certify_bipartite(to_float(banded_subspace(5, 5, 1, 13)), 1, 1).certified());
  CHECK(certify_bipartite(to_float(banded_subspace(4, 4, 2, 3)), 2, 1).certified());
  CHECK(certify_bipartite(to_float(banded_subspace(3, 3, 1, 4)), 1, 2).certified());
}

TEST_CASE("random subspaces are deterministic per seed and orthonormal") {
  const TensorSpace space({4, 4});
  const auto a = random_subspace(space, 8, 7);
  const auto b = random_subspace(space, 8, 7);
  const auto c = random_subspace(space, 8, 8);
  CHECK(a.basis() == b.basis());
  CHECK(a.basis() != c.basis());
  for (std::size_t i = 0; i < a.basis().size(); ++i)
    for (std::size_t j = 0; j < a.basis().size(); ++j) {
      Complexd dot = 0.0;
      for (std::size_t t = 0; t < a.basis()[i].size(); ++t)
        dot += std::conj(a.basis()[i][t]) * a.basis()[j][t];
      CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) < 1e-12);
    }
  // The full space is constructible (and of course contains product states).
  CHECK(random_subspace(space, 16, 1).dimension() == 16);
}

TEST_CASE("planted product subspaces start from a genuine product vector") {
  const TensorSpace space({4, 4});
  const auto line = planted_product_subspace(space, 1, 5);
  CHECK(line.dimension() == 1);
  CHECK(schmidt_rank(line.basis()[0], space) == 1);
  const auto s = planted_product_subspace(space, 4, 5);
  CHECK(schmidt_rank(s.basis()[0], space) == 1);
}

TEST_CASE("fixed-Schmidt-rank vectors have the rank they claim") {
  const TensorSpace space({4, 4});
  for (int s = 1; s <= 4; ++s) {
    CHECK(schmidt_rank(random_fixed_schmidt_rank_vector(space, s, 42), space) == s);
    CHECK(schmidt_rank_exact(rational_fixed_schmidt_rank_vector(space, s, 42), space) == s);
  }
}

TEST_CASE("reference tables are internally consistent") {
  for (const auto& row : level2_max_dimension_table())
    CHECK(row.max_d_s == (row.d - row.r) * (row.d - row.r));
  for (const auto& row : ces_level_table())
    CHECK(row.d_s == bhat_ces_dimension(TensorSpace({row.d_a, row.d_b, row.d_c})));
}
