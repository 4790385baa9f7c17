#pragma once
// Automorphism ensemble decoding: M parallel SC decodes on permuted received
// words, most likely candidate wins.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "polarsym/codec.hpp"
#include "polarsym/symmetry.hpp"

namespace polarsym {

struct Ensemble {
  std::vector<SymbolPermutation> perms;      // perms[0] is the identity
  std::vector<SymbolPermutation> inverses;
  std::vector<AffineAutomorphism> provenance;
  std::uint64_t seed = 0;

  int size() const { return static_cast<int>(perms.size()); }
  std::string to_json() const;
};

// Samples M pairwise non-SC-equivalent automorphisms from BLTA(spec.s),
// identity first. Draws are deterministic in the seed, and the first M
// entries of a larger ensemble with the same seed are identical. Throws
// std::runtime_error when the equivalence-class pool is exhausted before
// M members are found (budget: 100*M draws).
Ensemble build_ensemble(const CodeSpec& spec, int ensemble_size, std::uint64_t seed);

class AeScDecoder {
 public:
  AeScDecoder(const CodeSpec& spec, const Ensemble& ensemble);

  // Reference valid until the next decode() call.
  const std::vector<std::uint8_t>& decode(std::span<const float> llr);

 private:
  const Ensemble* ensemble_;
  std::uint32_t block_length_;
  ScDecoder sc_;
  std::vector<float> permuted_llr_;
  std::vector<std::uint8_t> candidate_;
  std::vector<std::uint8_t> best_;
};

}  // namespace polarsym
