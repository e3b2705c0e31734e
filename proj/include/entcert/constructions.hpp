#pragma once

#include <cstdint>
#include <vector>

#include "entcert/hierarchy.hpp"
#include "entcert/scalar.hpp"
#include "entcert/subspace.hpp"
#include "entcert/tensor_space.hpp"

namespace entcert::constructions {

/// The eight-dimensional subspace of C^4 (x) C^4 spanned by banded
/// shift-diagonal vectors; the first level certifies it entangled via a
/// 36 x 36 system. Amplitudes are exact and unnormalized.
Subspace<RationalComplex> example1_subspace();

/// span{x_1, x_3, x_4} of the same family; 2-entangled via a 16 x 10 system.
Subspace<RationalComplex> example2_subspace();

/// The nine-dimensional extension of example1 (adds the half-signed
/// diagonal); too large for level 1, certified at level 2 via 576 x 165.
Subspace<RationalComplex> example3_subspace();

/// The five Tiles product vectors on C^3 (x) C^3, unnormalized.
std::vector<std::vector<RationalComplex>> tiles_upb_vectors();

/// Normalized projector mixture on the orthogonal complement of the Tiles
/// basis: rank 4, PPT, entangled.
MixedState<RationalComplex> tiles_upb_state();

/// Rank-3 state on C^4 (x) C^4 whose range is 3-entangled (Schmidt number
/// at least 3 via a 16 x 4 system).
MixedState<RationalComplex> example5_state();

/// The five Pyramid product vectors (irrational amplitudes, float only).
std::vector<std::vector<Complexd>> pyramid_upb_vectors();

/// Complement state of the Pyramid basis; same PPT-entangled structure as
/// the Tiles state.
MixedState<Complexd> pyramid_upb_state();

/// Maximal completely entangled subspace of a three-party space: differences
/// of computational basis vectors with equal index sums. Its dimension is
/// d_A d_B d_C - d_A - d_B - d_C + 2.
Subspace<RationalComplex> bhat_ces(const TensorSpace& space);
int bhat_ces_dimension(const TensorSpace& space);

/// Deterministic banded subspace patterned on example1: vectors supported on
/// single shift-diagonals with Vandermonde coefficient rows, allocated
/// center-out. Capacity is (d_A - r)(d_B - r); any prefix of that order
/// gives a target dimension. Generic, so certification validates each use.
Subspace<RationalComplex> banded_subspace(int d_A, int d_B, int r, int target_dim);

/// Haar-random subspace: thin-QR orthonormalization of a seeded complex
/// Gaussian matrix.
Subspace<Complexd> random_subspace(const TensorSpace& space, int d_S, std::uint64_t seed);

/// Subspace guaranteed NOT to be (completely) entangled: one random fully
/// product vector plus d_S - 1 Haar-random vectors.
Subspace<Complexd> planted_product_subspace(const TensorSpace& space, int d_S,
                                            std::uint64_t seed);

/// Subspace containing a vector that is product across the given cut only.
Subspace<Complexd> planted_biseparable_subspace(const TensorSpace& space,
                                                const std::vector<std::size_t>& left_parties,
                                                int d_S, std::uint64_t seed);

/// Unit vector with exact Schmidt rank s: a combination of s orthogonal
/// product terms with random positive weights.
std::vector<Complexd> random_fixed_schmidt_rank_vector(const TensorSpace& space, int s,
                                                       std::uint64_t seed);

/// Exact-arithmetic analogue: sum of s products of independent random
/// integer local vectors (Schmidt rank verified exactly before returning).
std::vector<RationalComplex> rational_fixed_schmidt_rank_vector(const TensorSpace& space, int s,
                                                                std::uint64_t seed);

/// Fully product random vector over any number of parties.
std::vector<Complexd> random_product_vector(const TensorSpace& space, std::uint64_t seed);

/// Reference rows for the benchmark tables.
struct Level1TableRow {
  int d;
  int r;
  int max_d_s;
};
struct Level2TableRow {
  int d;
  int r;
  int max_d_s;  // (d - r)^2, certified at level 2
};
struct CesTableRow {
  int d_a, d_b, d_c;
  int d_s;
  int level;
};
const std::vector<Level1TableRow>& level1_max_dimension_table();
const std::vector<Level2TableRow>& level2_max_dimension_table();
const std::vector<CesTableRow>& ces_level_table();

}  // namespace entcert::constructions
