#include "polarsym/aed.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

#include "polarsym/kernels.hpp"
#include "polarsym/rng.hpp"

namespace polarsym {

std::string Ensemble::to_json() const {
  nlohmann::json j;
  j["seed"] = seed;
  nlohmann::json members = nlohmann::json::array();
  for (const auto& aut : provenance) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < aut.n; ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (int c = 0; c < aut.n; ++c) {
        row.push_back((aut.rows[static_cast<std::size_t>(r)] >> c) & 1u);
      }
      rows.push_back(std::move(row));
    }
    nlohmann::json b = nlohmann::json::array();
    for (int r = 0; r < aut.n; ++r) b.push_back((aut.offset >> r) & 1u);
    members.push_back({{"A", std::move(rows)}, {"b", std::move(b)}});
  }
  j["automorphisms"] = std::move(members);
  return j.dump(2);
}

Ensemble build_ensemble(const CodeSpec& spec, int ensemble_size, std::uint64_t seed) {
  if (ensemble_size < 1) throw std::invalid_argument("build_ensemble: M must be >= 1");
  Ensemble ensemble;
  ensemble.seed = seed;
  ensemble.provenance.push_back(AffineAutomorphism::identity(spec.n));
  ensemble.perms.push_back(SymbolPermutation::identity(spec.block_length()));
  ensemble.inverses.push_back(ensemble.perms.back().inverse());

  Rng rng(seed);
  const int budget = 100 * ensemble_size;
  int draws = 0;
  while (ensemble.size() < ensemble_size) {
    if (draws >= budget) {
      throw std::runtime_error(
          "build_ensemble: only " + std::to_string(ensemble.size()) +
          " pairwise non-equivalent automorphisms reachable for profile [" +
          spec.s.to_string() + "] after " + std::to_string(draws) +
          " draws; requested M=" + std::to_string(ensemble_size));
    }
    ++draws;
    const AffineAutomorphism candidate = sample_blta(spec.s, rng);
    SymbolPermutation perm = to_symbol_permutation(candidate);
    bool duplicate = false;
    for (const auto& accepted : ensemble.perms) {
      if (is_sc_equivalent(perm, accepted)) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;
    ensemble.provenance.push_back(candidate);
    ensemble.inverses.push_back(perm.inverse());
    ensemble.perms.push_back(std::move(perm));
  }
  return ensemble;
}

AeScDecoder::AeScDecoder(const CodeSpec& spec, const Ensemble& ensemble)
    : ensemble_(&ensemble),
      block_length_(spec.block_length()),
      sc_(spec),
      permuted_llr_(spec.block_length()),
      candidate_(spec.block_length()),
      best_(spec.block_length()) {
  for (const auto& perm : ensemble.perms) {
    if (perm.size() != block_length_) {
      throw std::invalid_argument("AeScDecoder: ensemble permutation length mismatch");
    }
  }
}

const std::vector<std::uint8_t>& AeScDecoder::decode(std::span<const float> llr) {
  if (llr.size() != block_length_) throw std::invalid_argument("ae_sc_decode: LLR length mismatch");
  float best_metric = 0.0f;
  for (int j = 0; j < ensemble_->size(); ++j) {
    const auto& map = ensemble_->perms[static_cast<std::size_t>(j)].map;
    for (std::uint32_t i = 0; i < block_length_; ++i) {
      permuted_llr_[map[i]] = llr[i];
    }
    const ScResult& sub = sc_.decode(permuted_llr_);
    for (std::uint32_t i = 0; i < block_length_; ++i) {
      candidate_[i] = sub.codeword[map[i]];
    }
    const float metric = kernels::correlation(llr.data(), candidate_.data(), block_length_);
    // Strict comparison keeps the lowest ensemble index on ties.
    if (j == 0 || metric > best_metric) {
      best_metric = metric;
      best_ = candidate_;
    }
  }
  return best_;
}

}  // namespace polarsym
