#pragma once
// Orbits of channel indices under the block digit-permutation group P_s,
// sampling of block-lower-triangular affine automorphisms and the
// SC-equivalence relation used to deduplicate decoding ensembles.

#include <cstdint>
#include <vector>

#include "polarsym/bitindex.hpp"
#include "polarsym/rng.hpp"

namespace polarsym {

// Affine map on digit vectors: v -> A v + b over F2. rows[r] holds row r of A
// as a bitmask of columns; digits are LSB-first in both domains.
struct AffineAutomorphism {
  int n = 0;
  std::vector<std::uint32_t> rows;
  std::uint32_t offset = 0;

  std::uint32_t apply(std::uint32_t v) const;
  static AffineAutomorphism identity(int n);

  friend bool operator==(const AffineAutomorphism&, const AffineAutomorphism&) = default;
};

// first applied first, then second: (second * first)(v) = second(first(v)).
AffineAutomorphism compose(const AffineAutomorphism& second, const AffineAutomorphism& first);

// Permutation of the N codeword symbol positions.
struct SymbolPermutation {
  std::vector<std::uint32_t> map;  // position i moves to map[i]

  std::size_t size() const { return map.size(); }
  static SymbolPermutation identity(std::uint32_t N);
  SymbolPermutation inverse() const;
  bool is_identity() const;
};

// (p o q)(i) = p(q(i)).
SymbolPermutation compose(const SymbolPermutation& p, const SymbolPermutation& q);

// Orbit D_i of i under P_s, sorted ascending.
std::vector<std::uint32_t> orbit(BitIndex i, const BlockProfile& s);

// |D_i| from the per-block binomial product, without enumerating.
std::uint64_t orbit_size(BitIndex i, const BlockProfile& s);

// Partition of Z_{2^n} into orbits, ordered by smallest member.
struct OrbitSystem {
  int n = 0;
  std::vector<std::vector<std::uint32_t>> orbits;
  std::vector<std::int32_t> orbit_of;  // index -> orbit id
};
OrbitSystem all_orbits(int n, const BlockProfile& s);

// True iff the set is a union of whole orbits. Indices need not be sorted
// but must be distinct.
bool is_stabilized(const std::vector<std::uint32_t>& set, const BlockProfile& s);

// Uniform sample from BLTA(s): diagonal blocks uniform over invertible
// matrices, entries below the block diagonal and the offset uniform.
AffineAutomorphism sample_blta(const BlockProfile& s, Rng& rng);

// map[i] = compress(A expand(i) + b).
SymbolPermutation to_symbol_permutation(const AffineAutomorphism& aut);

// True iff p o q^-1 is affine with a lower-triangular linear part, i.e. the
// two permutations differ by a factor absorbed by SC decoding. Returns false
// when p o q^-1 is not affine at all.
bool is_sc_equivalent(const SymbolPermutation& p, const SymbolPermutation& q);

}  // namespace polarsym
