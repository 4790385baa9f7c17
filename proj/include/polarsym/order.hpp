#pragma once
// The universal partial order on synthetic channels (left swap + binary
// domination), the induced order on P_s orbits, and compliance checks for
// information sets.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "polarsym/bitindex.hpp"
#include "polarsym/symmetry.hpp"

namespace polarsym {

// Direct successors of i: one adjacent (1,0) digit pair swapped to (0,1), or
// one 0 digit flipped to 1. Multi-bit dominations follow by transitivity.
std::vector<std::uint32_t> direct_successors(BitIndex i);

// i precedes j in the reflexive-transitive closure of the successor edges.
bool leq(BitIndex i, BitIndex j);

// Every member's direct successors are again members (upward closure).
bool complies(const std::vector<std::uint32_t>& info_set, int n);

// Orbit order: exists a in orbit_a, b in orbit_b with a preceding b.
bool orbit_leq(const std::vector<std::uint32_t>& orbit_a,
               const std::vector<std::uint32_t>& orbit_b, int n);

// Union of whole orbits whose selected-orbit set is upward closed; holds
// exactly when the code's affine automorphism group contains BLTA(s).
bool complies_symmetric(const std::vector<std::uint32_t>& info_set, const BlockProfile& s);

// The order on orbits as an explicit DAG, for Hasse inspection and DOT
// output. Intended for desk-scale n; construction is quadratic in the
// number of orbits.
class SymmetricOrder {
 public:
  SymmetricOrder(int n, const BlockProfile& s);

  const OrbitSystem& system() const { return system_; }
  int orbit_count() const { return static_cast<int>(system_.orbits.size()); }

  // Cover edges a -> b of the Hasse diagram (transitive reduction).
  const std::vector<std::pair<int, int>>& covers() const { return covers_; }

  // Reachability in the full order (reflexive).
  bool leq(int orbit_a, int orbit_b) const;

  void write_dot(std::ostream& out) const;

 private:
  bool reachable(int a, int b) const;

  OrbitSystem system_;
  std::vector<std::vector<int>> successors_;       // deduplicated raw edges
  std::vector<std::pair<int, int>> covers_;
  std::vector<std::vector<std::uint64_t>> reach_;  // closure bitsets
};

}  // namespace polarsym
