#pragma once
// Polar transform encoder, successive-cancellation decoder and LLR-based
// list decoder with optional CRC selection.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "polarsym/construct.hpp"
#include "polarsym/crc.hpp"

namespace polarsym {

// In-place butterfly x -> x G_N in natural (non-bit-reversed) order.
// Applying it twice is the identity.
void polar_transform(std::span<std::uint8_t> bits);

// Places msg on the information set (ascending), zeros elsewhere, then
// applies the transform.
std::vector<std::uint8_t> encode(const CodeSpec& spec, const std::vector<std::uint8_t>& msg);

struct ScResult {
  std::vector<std::uint8_t> info_bits;  // decisions at info positions, ascending
  std::vector<std::uint8_t> codeword;   // re-encoded estimate; always in the code
};

// One in-flight decode per instance; instances are cheap to construct.
class ScDecoder {
 public:
  explicit ScDecoder(const CodeSpec& spec);

  // Returned reference stays valid until the next decode() call.
  const ScResult& decode(std::span<const float> llr);

 private:
  void decode_node(int depth, std::uint32_t u_start, const float* llr, std::uint8_t* bits);
  float* level_llr(int depth) { return llr_arena_.data() + llr_offset_[static_cast<std::size_t>(depth)]; }

  int n_;
  std::uint32_t block_length_;
  std::vector<std::uint8_t> frozen_;
  std::vector<float> llr_arena_;
  std::vector<std::size_t> llr_offset_;
  ScResult result_;
};

// LLR-domain list decoder. Path state is shared copy-on-write per level, so
// cloning a path at a branch point costs O(1) until the copies diverge.
class SclDecoder {
 public:
  SclDecoder(const CodeSpec& spec, int list_size, std::optional<CrcConfig> crc = std::nullopt);

  // Returns the selected codeword estimate; with a CRC configured, the best
  // path passing the check, otherwise (and when no path passes) the best
  // path by metric. Reference valid until the next decode() call.
  const std::vector<std::uint8_t>& decode(std::span<const float> llr);

  double last_metric() const { return last_metric_; }

 private:
  struct Candidate {
    double metric;
    int path;
    std::uint8_t bit;
  };

  // Copy-on-write slot management, one pool per level and kind.
  int acquire_slot(std::vector<int>& free_slots);
  float* writable_llr(int level, int path);
  std::uint8_t* writable_bits(int level, int path);
  const float* read_llr(int level, int path) const;
  const std::uint8_t* read_bits(int level, int path) const;

  void reset();
  int clone_path(int path);
  void kill_path(int path);
  void compute_llr(int path, std::uint32_t phase, std::span<const float> channel);
  void store_decision(int path, std::uint32_t phase, std::uint8_t bit);

  CodeSpec spec_;
  int list_size_;
  std::optional<CrcConfig> crc_;
  int n_;
  std::uint32_t block_length_;
  std::vector<std::uint8_t> frozen_;

  // Indexed [level][slot]; LLR levels 1..n, bit levels 0..n-1.
  std::vector<std::vector<std::vector<float>>> llr_slots_;
  std::vector<std::vector<std::vector<std::uint8_t>>> bit_slots_;
  std::vector<std::vector<int>> llr_slot_of_path_, bit_slot_of_path_;
  std::vector<std::vector<int>> llr_refcount_, bit_refcount_;
  std::vector<std::vector<int>> llr_free_, bit_free_;

  std::vector<bool> active_;
  std::vector<double> metric_;
  std::vector<Candidate> candidates_;
  std::vector<std::uint8_t> decoded_;
  double last_metric_ = 0.0;
};

}  // namespace polarsym
