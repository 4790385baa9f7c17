#include "polarsym/bitindex.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace polarsym {

BitIndex make_bit_index(std::uint32_t value, int n) {
  if (n < 1 || n > kMaxDigits) {
    throw std::invalid_argument("BitIndex: digit count must be in [1, " +
                                std::to_string(kMaxDigits) + "], got " + std::to_string(n));
  }
  if (value >= (1u << n)) {
    throw std::invalid_argument("BitIndex: value " + std::to_string(value) +
                                " out of range for n=" + std::to_string(n));
  }
  return BitIndex{value, n};
}

BlockProfile::BlockProfile(std::vector<int> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.empty()) throw std::invalid_argument("BlockProfile: needs at least one block");
  starts_.reserve(sizes_.size());
  for (int size : sizes_) {
    if (size < 1) throw std::invalid_argument("BlockProfile: block sizes must be positive");
    starts_.push_back(n_);
    n_ += size;
  }
  if (n_ > kMaxDigits) {
    throw std::invalid_argument("BlockProfile: total digit count " + std::to_string(n_) +
                                " exceeds the supported maximum " + std::to_string(kMaxDigits));
  }
  block_of_.resize(static_cast<std::size_t>(n_));
  for (int j = 0; j < block_count(); ++j) {
    for (int l = start(j); l < start(j) + size(j); ++l) {
      block_of_[static_cast<std::size_t>(l)] = j;
    }
  }
}

BlockProfile BlockProfile::from_string(const std::string& csv) {
  std::vector<int> sizes;
  std::stringstream stream(csv);
  std::string token;
  while (std::getline(stream, token, ',')) {
    try {
      sizes.push_back(std::stoi(token));
    } catch (const std::exception&) {
      throw std::invalid_argument("BlockProfile: cannot parse block size '" + token + "'");
    }
  }
  return BlockProfile(std::move(sizes));
}

std::string BlockProfile::to_string() const {
  std::string out;
  for (std::size_t j = 0; j < sizes_.size(); ++j) {
    if (j > 0) out += ',';
    out += std::to_string(sizes_[j]);
  }
  return out;
}

DigitPermutation::DigitPermutation(std::vector<int> mapping) : map_(std::move(mapping)) {
  std::vector<bool> seen(map_.size(), false);
  for (int target : map_) {
    if (target < 0 || target >= n() || seen[static_cast<std::size_t>(target)]) {
      throw std::invalid_argument("DigitPermutation: mapping is not a bijection");
    }
    seen[static_cast<std::size_t>(target)] = true;
  }
}

DigitPermutation DigitPermutation::identity(int n) {
  std::vector<int> mapping(static_cast<std::size_t>(n));
  std::iota(mapping.begin(), mapping.end(), 0);
  return DigitPermutation(std::move(mapping));
}

DigitPermutation DigitPermutation::after(const DigitPermutation& first) const {
  if (n() != first.n()) throw std::invalid_argument("DigitPermutation: dimension mismatch");
  std::vector<int> composed(map_.size());
  for (int l = 0; l < n(); ++l) {
    composed[static_cast<std::size_t>(l)] = (*this)(first(l));
  }
  return DigitPermutation(std::move(composed));
}

std::vector<std::uint8_t> expand(BitIndex i) {
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(i.n));
  for (int l = 0; l < i.n; ++l) bits[static_cast<std::size_t>(l)] = (i.value >> l) & 1u;
  return bits;
}

BitIndex compress(const std::vector<std::uint8_t>& bits) {
  if (bits.empty()) throw std::invalid_argument("compress: empty bit vector");
  std::uint32_t value = 0;
  for (std::size_t l = 0; l < bits.size(); ++l) {
    if (bits[l]) value |= 1u << l;
  }
  return make_bit_index(value, static_cast<int>(bits.size()));
}

BitIndex apply_digit_perm(const DigitPermutation& sigma, BitIndex i) {
  if (sigma.n() != i.n) throw std::invalid_argument("apply_digit_perm: dimension mismatch");
  return BitIndex{apply_digit_perm_raw(sigma.mapping(), i.value), i.n};
}

std::vector<int> block_weights(BitIndex i, const BlockProfile& s) {
  if (s.total_digits() != i.n) throw std::invalid_argument("block_weights: profile does not partition n digits");
  std::vector<int> weights(static_cast<std::size_t>(s.block_count()));
  for (int j = 0; j < s.block_count(); ++j) {
    weights[static_cast<std::size_t>(j)] = popcount_range(i.value, s.start(j), s.size(j));
  }
  return weights;
}

}  // namespace polarsym
