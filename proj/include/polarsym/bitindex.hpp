#pragma once
// Bit-level algebra on synthetic-channel indices: LSB-first binary
// expansions, digit permutations and per-block Hamming weights.

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace polarsym {

// Exhaustive index enumeration stays cheap up to this digit count.
inline constexpr int kMaxDigits = 20;

// Index in Z_{2^n} together with its digit count n (N = 2^n).
struct BitIndex {
  std::uint32_t value = 0;
  int n = 0;

  friend bool operator==(const BitIndex&, const BitIndex&) = default;
};

// Validating constructor; throws std::invalid_argument on a bad pair.
BitIndex make_bit_index(std::uint32_t value, int n);

// Partition of the n digit positions into contiguous blocks, block 0
// covering the least significant digits.
class BlockProfile {
 public:
  explicit BlockProfile(std::vector<int> sizes);

  // Parses the comma-separated form used on the command line, e.g. "1,1,3".
  static BlockProfile from_string(const std::string& csv);

  int total_digits() const { return n_; }
  int block_count() const { return static_cast<int>(sizes_.size()); }
  const std::vector<int>& sizes() const { return sizes_; }
  int size(int j) const { return sizes_[static_cast<std::size_t>(j)]; }
  int start(int j) const { return starts_[static_cast<std::size_t>(j)]; }
  int block_of(int digit) const { return block_of_[static_cast<std::size_t>(digit)]; }

  std::string to_string() const;

  friend bool operator==(const BlockProfile&, const BlockProfile&) = default;

 private:
  std::vector<int> sizes_;
  std::vector<int> starts_;
  std::vector<int> block_of_;
  int n_ = 0;
};

// Permutation sigma of the digit positions {0, ..., n-1}.
class DigitPermutation {
 public:
  explicit DigitPermutation(std::vector<int> mapping);
  static DigitPermutation identity(int n);

  int n() const { return static_cast<int>(map_.size()); }
  int operator()(int l) const { return map_[static_cast<std::size_t>(l)]; }
  const std::vector<int>& mapping() const { return map_; }

  // Composition (this after first): digit l moves to this(first(l)).
  DigitPermutation after(const DigitPermutation& first) const;

 private:
  std::vector<int> map_;
};

// LSB-first expansion: bits[l] is the coefficient of 2^l.
std::vector<std::uint8_t> expand(BitIndex i);

// Inverse of expand.
BitIndex compress(const std::vector<std::uint8_t>& bits);

// Moves the bit at digit position l to position sigma(l).
BitIndex apply_digit_perm(const DigitPermutation& sigma, BitIndex i);

// Hamming weight of the expansion within each block of s.
std::vector<int> block_weights(BitIndex i, const BlockProfile& s);

// Raw-value helpers for inner loops.
inline std::uint32_t apply_digit_perm_raw(const std::vector<int>& mapping, std::uint32_t v) {
  std::uint32_t result = 0;
  for (std::size_t l = 0; l < mapping.size(); ++l) {
    result |= ((v >> l) & 1u) << mapping[l];
  }
  return result;
}

inline int popcount_range(std::uint32_t v, int start, int len) {
  return std::popcount((v >> start) & ((1u << len) - 1u));
}

}  // namespace polarsym
