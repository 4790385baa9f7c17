#include "polarsym/codec.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "polarsym/kernels.hpp"

namespace polarsym {

void polar_transform(std::span<std::uint8_t> bits) {
  const std::size_t N = bits.size();
  if (N == 0 || (N & (N - 1)) != 0) {
    throw std::invalid_argument("polar_transform: length must be a power of two");
  }
  for (std::size_t h = 1; h < N; h <<= 1) {
    for (std::size_t block = 0; block < N; block += 2 * h) {
      kernels::xor_bits(bits.data() + block, bits.data() + block, bits.data() + block + h, h);
    }
  }
}

std::vector<std::uint8_t> encode(const CodeSpec& spec, const std::vector<std::uint8_t>& msg) {
  if (msg.size() != static_cast<std::size_t>(spec.k)) {
    throw std::invalid_argument("encode: message length does not match code dimension");
  }
  std::vector<std::uint8_t> word(spec.block_length(), 0);
  for (std::size_t j = 0; j < msg.size(); ++j) {
    word[spec.info_set[j]] = msg[j];
  }
  polar_transform(word);
  return word;
}

namespace {

std::vector<std::uint8_t> frozen_mask(const CodeSpec& spec) {
  std::vector<std::uint8_t> frozen(spec.block_length(), 1);
  for (std::uint32_t i : spec.info_set) frozen[i] = 0;
  return frozen;
}

}  // namespace

ScDecoder::ScDecoder(const CodeSpec& spec)
    : n_(spec.n), block_length_(spec.block_length()), frozen_(frozen_mask(spec)) {
  // Scratch LLR buffer per depth d >= 1, of size N >> d.
  llr_offset_.assign(static_cast<std::size_t>(n_) + 1, 0);
  std::size_t total = 0;
  for (int d = 1; d <= n_; ++d) {
    llr_offset_[static_cast<std::size_t>(d)] = total;
    total += block_length_ >> d;
  }
  llr_arena_.resize(total);
  result_.codeword.resize(block_length_);
  result_.info_bits.reserve(spec.info_set.size());
}

const ScResult& ScDecoder::decode(std::span<const float> llr) {
  if (llr.size() != block_length_) throw std::invalid_argument("sc_decode: LLR length mismatch");
  result_.info_bits.clear();
  decode_node(0, 0, llr.data(), result_.codeword.data());
  return result_;
}

void ScDecoder::decode_node(int depth, std::uint32_t u_start, const float* llr,
                            std::uint8_t* bits) {
  const std::uint32_t h = block_length_ >> depth;
  if (h == 1) {
    std::uint8_t decision = 0;
    if (!frozen_[u_start]) {
      decision = llr[0] < 0.0f ? 1 : 0;
      result_.info_bits.push_back(decision);
    }
    bits[0] = decision;
    return;
  }
  const std::uint32_t half = h >> 1;
  float* child = level_llr(depth + 1);
  kernels::f_llr(child, llr, llr + half, half);
  decode_node(depth + 1, u_start, child, bits);
  kernels::g_llr(child, llr, llr + half, bits, half);
  decode_node(depth + 1, u_start + half, child, bits + half);
  kernels::xor_bits(bits, bits, bits + half, half);
}

SclDecoder::SclDecoder(const CodeSpec& spec, int list_size, std::optional<CrcConfig> crc)
    : spec_(spec),
      list_size_(list_size),
      crc_(std::move(crc)),
      n_(spec.n),
      block_length_(spec.block_length()),
      frozen_(frozen_mask(spec)) {
  if (list_size_ < 1) throw std::invalid_argument("scl_decode: list size must be >= 1");
  if (crc_) {
    crc_->validate();
    if (crc_->degree() >= spec_.k) {
      throw std::invalid_argument("scl_decode: CRC degree must be smaller than the code dimension");
    }
  }
  const auto L = static_cast<std::size_t>(list_size_);
  llr_slots_.resize(static_cast<std::size_t>(n_) + 1);
  bit_slots_.resize(static_cast<std::size_t>(n_));
  llr_slot_of_path_.assign(static_cast<std::size_t>(n_) + 1, std::vector<int>(L, -1));
  bit_slot_of_path_.assign(static_cast<std::size_t>(n_), std::vector<int>(L, -1));
  llr_refcount_.assign(static_cast<std::size_t>(n_) + 1, std::vector<int>(L, 0));
  bit_refcount_.assign(static_cast<std::size_t>(n_), std::vector<int>(L, 0));
  llr_free_.resize(static_cast<std::size_t>(n_) + 1);
  bit_free_.resize(static_cast<std::size_t>(n_));
  for (int d = 1; d <= n_; ++d) {
    llr_slots_[static_cast<std::size_t>(d)].assign(L, std::vector<float>(block_length_ >> d));
  }
  for (int d = 0; d < n_; ++d) {
    bit_slots_[static_cast<std::size_t>(d)].assign(L, std::vector<std::uint8_t>(block_length_ >> d));
  }
  active_.assign(L, false);
  metric_.assign(L, 0.0);
  decoded_.resize(block_length_);
}

void SclDecoder::reset() {
  for (int d = 1; d <= n_; ++d) {
    auto& free_slots = llr_free_[static_cast<std::size_t>(d)];
    free_slots.clear();
    for (int slot = list_size_ - 1; slot >= 0; --slot) free_slots.push_back(slot);
    std::fill(llr_refcount_[static_cast<std::size_t>(d)].begin(),
              llr_refcount_[static_cast<std::size_t>(d)].end(), 0);
    std::fill(llr_slot_of_path_[static_cast<std::size_t>(d)].begin(),
              llr_slot_of_path_[static_cast<std::size_t>(d)].end(), -1);
  }
  for (int d = 0; d < n_; ++d) {
    auto& free_slots = bit_free_[static_cast<std::size_t>(d)];
    free_slots.clear();
    for (int slot = list_size_ - 1; slot >= 0; --slot) free_slots.push_back(slot);
    std::fill(bit_refcount_[static_cast<std::size_t>(d)].begin(),
              bit_refcount_[static_cast<std::size_t>(d)].end(), 0);
    std::fill(bit_slot_of_path_[static_cast<std::size_t>(d)].begin(),
              bit_slot_of_path_[static_cast<std::size_t>(d)].end(), -1);
  }
  std::fill(active_.begin(), active_.end(), false);
  std::fill(metric_.begin(), metric_.end(), 0.0);
  // Path 0 starts with a private slot at every level.
  for (int d = 1; d <= n_; ++d) {
    const int slot = acquire_slot(llr_free_[static_cast<std::size_t>(d)]);
    llr_slot_of_path_[static_cast<std::size_t>(d)][0] = slot;
    llr_refcount_[static_cast<std::size_t>(d)][static_cast<std::size_t>(slot)] = 1;
  }
  for (int d = 0; d < n_; ++d) {
    const int slot = acquire_slot(bit_free_[static_cast<std::size_t>(d)]);
    bit_slot_of_path_[static_cast<std::size_t>(d)][0] = slot;
    bit_refcount_[static_cast<std::size_t>(d)][static_cast<std::size_t>(slot)] = 1;
  }
  active_[0] = true;
}

int SclDecoder::acquire_slot(std::vector<int>& free_slots) {
  assert(!free_slots.empty());
  const int slot = free_slots.back();
  free_slots.pop_back();
  return slot;
}

float* SclDecoder::writable_llr(int level, int path) {
  auto& slot_of_path = llr_slot_of_path_[static_cast<std::size_t>(level)];
  auto& refcount = llr_refcount_[static_cast<std::size_t>(level)];
  auto& slots = llr_slots_[static_cast<std::size_t>(level)];
  int slot = slot_of_path[static_cast<std::size_t>(path)];
  if (refcount[static_cast<std::size_t>(slot)] > 1) {
    --refcount[static_cast<std::size_t>(slot)];
    const int fresh = acquire_slot(llr_free_[static_cast<std::size_t>(level)]);
    slots[static_cast<std::size_t>(fresh)] = slots[static_cast<std::size_t>(slot)];
    refcount[static_cast<std::size_t>(fresh)] = 1;
    slot_of_path[static_cast<std::size_t>(path)] = fresh;
    slot = fresh;
  }
  return slots[static_cast<std::size_t>(slot)].data();
}

std::uint8_t* SclDecoder::writable_bits(int level, int path) {
  auto& slot_of_path = bit_slot_of_path_[static_cast<std::size_t>(level)];
  auto& refcount = bit_refcount_[static_cast<std::size_t>(level)];
  auto& slots = bit_slots_[static_cast<std::size_t>(level)];
  int slot = slot_of_path[static_cast<std::size_t>(path)];
  if (refcount[static_cast<std::size_t>(slot)] > 1) {
    --refcount[static_cast<std::size_t>(slot)];
    const int fresh = acquire_slot(bit_free_[static_cast<std::size_t>(level)]);
    slots[static_cast<std::size_t>(fresh)] = slots[static_cast<std::size_t>(slot)];
    refcount[static_cast<std::size_t>(fresh)] = 1;
    slot_of_path[static_cast<std::size_t>(path)] = fresh;
    slot = fresh;
  }
  return slots[static_cast<std::size_t>(slot)].data();
}

const float* SclDecoder::read_llr(int level, int path) const {
  return llr_slots_[static_cast<std::size_t>(level)]
                   [static_cast<std::size_t>(
                        llr_slot_of_path_[static_cast<std::size_t>(level)][static_cast<std::size_t>(path)])]
                       .data();
}

const std::uint8_t* SclDecoder::read_bits(int level, int path) const {
  return bit_slots_[static_cast<std::size_t>(level)]
                   [static_cast<std::size_t>(
                        bit_slot_of_path_[static_cast<std::size_t>(level)][static_cast<std::size_t>(path)])]
                       .data();
}

int SclDecoder::clone_path(int source) {
  int fresh = -1;
  for (int p = 0; p < list_size_; ++p) {
    if (!active_[static_cast<std::size_t>(p)]) {
      fresh = p;
      break;
    }
  }
  assert(fresh >= 0);
  active_[static_cast<std::size_t>(fresh)] = true;
  metric_[static_cast<std::size_t>(fresh)] = metric_[static_cast<std::size_t>(source)];
  for (int d = 1; d <= n_; ++d) {
    const int slot = llr_slot_of_path_[static_cast<std::size_t>(d)][static_cast<std::size_t>(source)];
    llr_slot_of_path_[static_cast<std::size_t>(d)][static_cast<std::size_t>(fresh)] = slot;
    ++llr_refcount_[static_cast<std::size_t>(d)][static_cast<std::size_t>(slot)];
  }
  for (int d = 0; d < n_; ++d) {
    const int slot = bit_slot_of_path_[static_cast<std::size_t>(d)][static_cast<std::size_t>(source)];
    bit_slot_of_path_[static_cast<std::size_t>(d)][static_cast<std::size_t>(fresh)] = slot;
    ++bit_refcount_[static_cast<std::size_t>(d)][static_cast<std::size_t>(slot)];
  }
  return fresh;
}

void SclDecoder::kill_path(int path) {
  active_[static_cast<std::size_t>(path)] = false;
  for (int d = 1; d <= n_; ++d) {
    const int slot = llr_slot_of_path_[static_cast<std::size_t>(d)][static_cast<std::size_t>(path)];
    if (--llr_refcount_[static_cast<std::size_t>(d)][static_cast<std::size_t>(slot)] == 0) {
      llr_free_[static_cast<std::size_t>(d)].push_back(slot);
    }
    llr_slot_of_path_[static_cast<std::size_t>(d)][static_cast<std::size_t>(path)] = -1;
  }
  for (int d = 0; d < n_; ++d) {
    const int slot = bit_slot_of_path_[static_cast<std::size_t>(d)][static_cast<std::size_t>(path)];
    if (--bit_refcount_[static_cast<std::size_t>(d)][static_cast<std::size_t>(slot)] == 0) {
      bit_free_[static_cast<std::size_t>(d)].push_back(slot);
    }
    bit_slot_of_path_[static_cast<std::size_t>(d)][static_cast<std::size_t>(path)] = -1;
  }
}

void SclDecoder::compute_llr(int path, std::uint32_t phase, std::span<const float> channel) {
  int start_level;
  if (phase == 0) {
    start_level = 1;
  } else {
    const int trailing = std::countr_zero(phase);
    start_level = n_ - trailing;
  }
  for (int d = start_level; d <= n_; ++d) {
    const std::uint32_t h = block_length_ >> d;
    const float* parent =
        (d == 1) ? channel.data() : read_llr(d - 1, path);
    float* dst = writable_llr(d, path);
    const bool is_g = (d == start_level && phase != 0);
    if (is_g) {
      kernels::g_llr(dst, parent, parent + h, read_bits(d - 1, path), h);
    } else {
      kernels::f_llr(dst, parent, parent + h, h);
    }
  }
}

void SclDecoder::store_decision(int path, std::uint32_t phase, std::uint8_t bit) {
  {
    std::uint8_t* leaf = writable_bits(n_ - 1, path);
    leaf[phase & 1u] = bit;
  }
  if ((phase & 1u) == 0) return;
  int d = n_ - 1;
  std::uint32_t node = phase >> 1;
  for (;;) {
    const std::uint32_t size = block_length_ >> d;
    std::uint8_t* buffer = writable_bits(d, path);
    kernels::xor_bits(buffer, buffer, buffer + size / 2, size / 2);
    if (d == 0) break;
    std::uint8_t* parent = writable_bits(d - 1, path);
    std::memcpy(parent + (node & 1u) * size, buffer, size);
    if ((node & 1u) == 0) break;
    node >>= 1;
    --d;
  }
}

const std::vector<std::uint8_t>& SclDecoder::decode(std::span<const float> llr) {
  if (llr.size() != block_length_) throw std::invalid_argument("scl_decode: LLR length mismatch");
  reset();
  for (std::uint32_t phase = 0; phase < block_length_; ++phase) {
    for (int path = 0; path < list_size_; ++path) {
      if (active_[static_cast<std::size_t>(path)]) compute_llr(path, phase, llr);
    }
    if (frozen_[phase]) {
      for (int path = 0; path < list_size_; ++path) {
        if (!active_[static_cast<std::size_t>(path)]) continue;
        const float leaf = read_llr(n_, path)[0];
        if (leaf < 0.0f) metric_[static_cast<std::size_t>(path)] += -leaf;
        store_decision(path, phase, 0);
      }
      continue;
    }
    candidates_.clear();
    for (int path = 0; path < list_size_; ++path) {
      if (!active_[static_cast<std::size_t>(path)]) continue;
      const float leaf = read_llr(n_, path)[0];
      const double base = metric_[static_cast<std::size_t>(path)];
      const double penalty = std::abs(static_cast<double>(leaf));
      // Bit agreeing with the LLR sign keeps the metric; the other pays.
      const std::uint8_t hard = leaf < 0.0f ? 1 : 0;
      candidates_.push_back({base, path, hard});
      candidates_.push_back({base + penalty, path, static_cast<std::uint8_t>(1 - hard)});
    }
    const std::size_t keep = std::min<std::size_t>(candidates_.size(),
                                                   static_cast<std::size_t>(list_size_));
    std::sort(candidates_.begin(), candidates_.end(), [](const Candidate& a, const Candidate& b) {
      if (a.metric != b.metric) return a.metric < b.metric;
      if (a.path != b.path) return a.path < b.path;
      return a.bit < b.bit;
    });
    // Decide each source path's fate: killed, extended once, or forked.
    std::vector<std::int8_t> kept_bits[2];  // [bit][path] flags
    kept_bits[0].assign(static_cast<std::size_t>(list_size_), 0);
    kept_bits[1].assign(static_cast<std::size_t>(list_size_), 0);
    for (std::size_t c = 0; c < keep; ++c) {
      kept_bits[candidates_[c].bit][static_cast<std::size_t>(candidates_[c].path)] = 1;
    }
    std::vector<int> forked;
    for (int path = 0; path < list_size_; ++path) {
      if (!active_[static_cast<std::size_t>(path)]) continue;
      const bool keep0 = kept_bits[0][static_cast<std::size_t>(path)] != 0;
      const bool keep1 = kept_bits[1][static_cast<std::size_t>(path)] != 0;
      if (!keep0 && !keep1) {
        kill_path(path);
      } else if (keep0 && keep1) {
        forked.push_back(path);
      } else {
        const std::uint8_t bit = keep1 ? 1 : 0;
        const float leaf = read_llr(n_, path)[0];
        const std::uint8_t hard = leaf < 0.0f ? 1 : 0;
        if (bit != hard) metric_[static_cast<std::size_t>(path)] += std::abs(static_cast<double>(leaf));
        store_decision(path, phase, bit);
      }
    }
    for (int path : forked) {
      const float leaf = read_llr(n_, path)[0];
      const std::uint8_t hard = leaf < 0.0f ? 1 : 0;
      const int twin = clone_path(path);
      metric_[static_cast<std::size_t>(twin)] += std::abs(static_cast<double>(leaf));
      store_decision(path, phase, hard);
      store_decision(twin, phase, static_cast<std::uint8_t>(1 - hard));
    }
  }
  // Rank surviving paths by metric; deterministic tie-break on path index.
  std::vector<int> ranking;
  for (int path = 0; path < list_size_; ++path) {
    if (active_[static_cast<std::size_t>(path)]) ranking.push_back(path);
  }
  std::sort(ranking.begin(), ranking.end(), [this](int a, int b) {
    if (metric_[static_cast<std::size_t>(a)] != metric_[static_cast<std::size_t>(b)]) {
      return metric_[static_cast<std::size_t>(a)] < metric_[static_cast<std::size_t>(b)];
    }
    return a < b;
  });
  assert(!ranking.empty());
  int chosen = ranking.front();
  if (crc_) {
    std::vector<std::uint8_t> scratch(block_length_);
    std::vector<std::uint8_t> info(static_cast<std::size_t>(spec_.k));
    for (int path : ranking) {
      std::memcpy(scratch.data(), read_bits(0, path), block_length_);
      // The transform is an involution, so re-transforming the codeword
      // recovers the u-domain decisions.
      polar_transform(scratch);
      for (std::size_t j = 0; j < info.size(); ++j) info[j] = scratch[spec_.info_set[j]];
      if (crc_check(info, *crc_)) {
        chosen = path;
        break;
      }
    }
  }
  last_metric_ = metric_[static_cast<std::size_t>(chosen)];
  std::memcpy(decoded_.data(), read_bits(0, chosen), block_length_);
  return decoded_;
}

}  // namespace polarsym
