#include "polarsym/symmetry.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_map>

#include "polarsym/f2.hpp"

namespace polarsym {

namespace {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t result = 1;
  for (int j = 1; j <= k; ++j) {
    result = result * static_cast<std::uint64_t>(n - k + j) / static_cast<std::uint64_t>(j);
  }
  return result;
}

// Canonical orbit representative: within each block, the ones are packed
// into the least significant digits.
std::uint32_t canonical_representative(std::uint32_t value, const BlockProfile& s) {
  std::uint32_t canon = 0;
  for (int j = 0; j < s.block_count(); ++j) {
    const int weight = popcount_range(value, s.start(j), s.size(j));
    canon |= ((1u << weight) - 1u) << s.start(j);
  }
  return canon;
}

}  // namespace

std::uint32_t AffineAutomorphism::apply(std::uint32_t v) const {
  std::uint32_t result = offset;
  for (int r = 0; r < n; ++r) {
    result ^= static_cast<std::uint32_t>(std::popcount(rows[static_cast<std::size_t>(r)] & v) & 1)
              << r;
  }
  return result;
}

AffineAutomorphism AffineAutomorphism::identity(int n) {
  AffineAutomorphism aut;
  aut.n = n;
  aut.rows.resize(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) aut.rows[static_cast<std::size_t>(r)] = 1u << r;
  return aut;
}

AffineAutomorphism compose(const AffineAutomorphism& second, const AffineAutomorphism& first) {
  if (second.n != first.n) throw std::invalid_argument("compose: dimension mismatch");
  AffineAutomorphism out;
  out.n = second.n;
  out.rows.resize(static_cast<std::size_t>(out.n));
  // Row r of A2*A1 is the combination of rows of A1 selected by row r of A2.
  for (int r = 0; r < out.n; ++r) {
    std::uint32_t row = 0;
    std::uint32_t selector = second.rows[static_cast<std::size_t>(r)];
    while (selector) {
      const int c = std::countr_zero(selector);
      selector &= selector - 1;
      row ^= first.rows[static_cast<std::size_t>(c)];
    }
    out.rows[static_cast<std::size_t>(r)] = row;
  }
  // b = A2 b1 + b2
  std::uint32_t mapped = 0;
  for (int r = 0; r < out.n; ++r) {
    mapped |= static_cast<std::uint32_t>(
                  std::popcount(second.rows[static_cast<std::size_t>(r)] & first.offset) & 1)
              << r;
  }
  out.offset = mapped ^ second.offset;
  return out;
}

SymbolPermutation SymbolPermutation::identity(std::uint32_t N) {
  SymbolPermutation p;
  p.map.resize(N);
  for (std::uint32_t i = 0; i < N; ++i) p.map[i] = i;
  return p;
}

SymbolPermutation SymbolPermutation::inverse() const {
  SymbolPermutation inv;
  inv.map.resize(map.size());
  for (std::uint32_t i = 0; i < map.size(); ++i) inv.map[map[i]] = i;
  return inv;
}

bool SymbolPermutation::is_identity() const {
  for (std::uint32_t i = 0; i < map.size(); ++i) {
    if (map[i] != i) return false;
  }
  return true;
}

SymbolPermutation compose(const SymbolPermutation& p, const SymbolPermutation& q) {
  if (p.size() != q.size()) throw std::invalid_argument("compose: permutation size mismatch");
  SymbolPermutation out;
  out.map.resize(p.size());
  for (std::uint32_t i = 0; i < p.size(); ++i) out.map[i] = p.map[q.map[i]];
  return out;
}

std::vector<std::uint32_t> orbit(BitIndex i, const BlockProfile& s) {
  if (s.total_digits() != i.n) throw std::invalid_argument("orbit: profile does not match n");
  std::vector<std::uint32_t> members{0};
  for (int j = 0; j < s.block_count(); ++j) {
    const int weight = popcount_range(i.value, s.start(j), s.size(j));
    std::vector<std::uint32_t> block_masks;
    for (std::uint32_t mask = 0; mask < (1u << s.size(j)); ++mask) {
      if (std::popcount(mask) == weight) block_masks.push_back(mask << s.start(j));
    }
    std::vector<std::uint32_t> extended;
    extended.reserve(members.size() * block_masks.size());
    for (std::uint32_t prefix : members) {
      for (std::uint32_t mask : block_masks) extended.push_back(prefix | mask);
    }
    members = std::move(extended);
  }
  std::sort(members.begin(), members.end());
  return members;
}

std::uint64_t orbit_size(BitIndex i, const BlockProfile& s) {
  if (s.total_digits() != i.n) throw std::invalid_argument("orbit_size: profile does not match n");
  std::uint64_t size = 1;
  for (int j = 0; j < s.block_count(); ++j) {
    size *= binomial(s.size(j), popcount_range(i.value, s.start(j), s.size(j)));
  }
  return size;
}

OrbitSystem all_orbits(int n, const BlockProfile& s) {
  if (s.total_digits() != n) throw std::invalid_argument("all_orbits: profile does not match n");
  const std::uint32_t N = 1u << n;
  OrbitSystem system;
  system.n = n;
  system.orbit_of.assign(N, -1);
  for (std::uint32_t i = 0; i < N; ++i) {
    if (system.orbit_of[i] >= 0) continue;
    const auto members = orbit(BitIndex{i, n}, s);
    const auto id = static_cast<std::int32_t>(system.orbits.size());
    for (std::uint32_t member : members) system.orbit_of[member] = id;
    system.orbits.push_back(members);
  }
  return system;
}

bool is_stabilized(const std::vector<std::uint32_t>& set, const BlockProfile& s) {
  std::unordered_map<std::uint32_t, std::uint64_t> counts;
  counts.reserve(set.size());
  for (std::uint32_t i : set) {
    ++counts[canonical_representative(i, s)];
  }
  const int n = s.total_digits();
  for (const auto& [canon, count] : counts) {
    if (count != orbit_size(BitIndex{canon, n}, s)) return false;
  }
  return true;
}

AffineAutomorphism sample_blta(const BlockProfile& s, Rng& rng) {
  const int n = s.total_digits();
  AffineAutomorphism aut;
  aut.n = n;
  aut.rows.assign(static_cast<std::size_t>(n), 0);
  for (int j = 0; j < s.block_count(); ++j) {
    const int block_size = s.size(j);
    const int block_start = s.start(j);
    // Diagonal block: rejection-sample an invertible block_size x block_size
    // matrix (success probability > 0.288 for any size).
    std::vector<std::uint32_t> block_cols(static_cast<std::size_t>(block_size));
    std::vector<std::uint32_t> block_rows(static_cast<std::size_t>(block_size));
    do {
      for (int r = 0; r < block_size; ++r) {
        block_rows[static_cast<std::size_t>(r)] = rng.bits(block_size);
      }
      for (int c = 0; c < block_size; ++c) {
        std::uint32_t col = 0;
        for (int r = 0; r < block_size; ++r) {
          col |= ((block_rows[static_cast<std::size_t>(r)] >> c) & 1u) << r;
        }
        block_cols[static_cast<std::size_t>(c)] = col;
      }
    } while (!f2::invertible(block_cols, block_size));
    for (int r = 0; r < block_size; ++r) {
      const std::uint32_t below = rng.bits(block_start);
      aut.rows[static_cast<std::size_t>(block_start + r)] =
          below | (block_rows[static_cast<std::size_t>(r)] << block_start);
    }
  }
  aut.offset = rng.bits(n);
  return aut;
}

SymbolPermutation to_symbol_permutation(const AffineAutomorphism& aut) {
  const std::uint32_t N = 1u << aut.n;
  SymbolPermutation perm;
  perm.map.resize(N);
  std::vector<bool> seen(N, false);
  for (std::uint32_t i = 0; i < N; ++i) {
    const std::uint32_t image = aut.apply(i);
    if (image >= N || seen[image]) {
      throw std::invalid_argument("to_symbol_permutation: map is not a bijection (A singular?)");
    }
    seen[image] = true;
    perm.map[i] = image;
  }
  return perm;
}

bool is_sc_equivalent(const SymbolPermutation& p, const SymbolPermutation& q) {
  if (p.size() != q.size()) throw std::invalid_argument("is_sc_equivalent: size mismatch");
  const SymbolPermutation r = compose(p, q.inverse());
  const auto N = static_cast<std::uint32_t>(r.size());
  const int n = std::countr_zero(N);
  const std::uint32_t b = r.map[0];
  std::vector<std::uint32_t> cols(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) {
    cols[static_cast<std::size_t>(c)] = r.map[1u << c] ^ b;
  }
  // Affinity check over the whole domain.
  for (std::uint32_t i = 0; i < N; ++i) {
    std::uint32_t image = b;
    std::uint32_t rest = i;
    while (rest) {
      const int c = std::countr_zero(rest);
      rest &= rest - 1;
      image ^= cols[static_cast<std::size_t>(c)];
    }
    if (image != r.map[i]) return false;
  }
  // Lower-triangular check: column c must be zero in rows r < c.
  for (int c = 0; c < n; ++c) {
    if (cols[static_cast<std::size_t>(c)] & ((1u << c) - 1u)) return false;
  }
  return true;
}

}  // namespace polarsym
