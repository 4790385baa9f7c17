#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "polarsym/aed.hpp"
#include "polarsym/f2.hpp"
#include "polarsym/kernels.hpp"
#include "polarsym/rng.hpp"
#include "polarsym/sim.hpp"

using namespace polarsym;

namespace {

std::vector<std::uint8_t> random_message(Rng& rng, int k) {
  std::vector<std::uint8_t> msg(static_cast<std::size_t>(k));
  for (auto& bit : msg) bit = rng.coin() ? 1 : 0;
  return msg;
}

f2::RowSpace row_space_of(const CodeSpec& spec) {
  f2::Matrix generator(spec.info_set.size(), spec.block_length());
  for (std::size_t r = 0; r < spec.info_set.size(); ++r) {
    for (std::uint32_t j = 0; j < spec.block_length(); ++j) {
      if ((spec.info_set[r] & j) == j) generator.set(r, j, true);
    }
  }
  return f2::RowSpace(std::move(generator));
}

}  // namespace

TEST_CASE("build_ensemble") {
  const CodeSpec spec = design(6, BlockProfile({1, 1, 1, 3}), 1.1, 32);

  SUBCASE("M=1 is the identity") {
    const Ensemble ensemble = build_ensemble(spec, 1, 42);
    REQUIRE(ensemble.size() == 1);
    CHECK(ensemble.perms[0].is_identity());
  }
  SUBCASE("M=8 members are pairwise non-equivalent BLTA(s) automorphisms") {
    const Ensemble ensemble = build_ensemble(spec, 8, 42);
    REQUIRE(ensemble.size() == 8);
    for (int a = 0; a < 8; ++a) {
      for (int b = a + 1; b < 8; ++b) {
        CHECK_FALSE(is_sc_equivalent(ensemble.perms[static_cast<std::size_t>(a)],
                                     ensemble.perms[static_cast<std::size_t>(b)]));
      }
      // provenance matches the stored permutation
      CHECK(to_symbol_permutation(ensemble.provenance[static_cast<std::size_t>(a)]).map ==
            ensemble.perms[static_cast<std::size_t>(a)].map);
      // zero pattern of the declared symmetry
      for (int r = 0; r < spec.n; ++r) {
        const int block = spec.s.block_of(r);
        const int allowed = spec.s.start(block) + spec.s.size(block);
        CHECK((ensemble.provenance[static_cast<std::size_t>(a)].rows[static_cast<std::size_t>(r)] >>
               allowed) == 0);
      }
    }
  }
  SUBCASE("ensembles nest for growing M under the same seed") {
    const Ensemble small = build_ensemble(spec, 4, 42);
    const Ensemble large = build_ensemble(spec, 8, 42);
    for (int j = 0; j < 4; ++j) {
      CHECK(small.perms[static_cast<std::size_t>(j)].map ==
            large.perms[static_cast<std::size_t>(j)].map);
    }
  }
  SUBCASE("all-singleton profile exhausts after the identity") {
    const CodeSpec lta_spec = design(4, BlockProfile({1, 1, 1, 1}), 1.1, 8);
    CHECK_THROWS_AS(build_ensemble(lta_spec, 2, 7), std::runtime_error);
    CHECK(build_ensemble(lta_spec, 1, 7).size() == 1);
  }
  SUBCASE("provenance serializes") {
    const Ensemble ensemble = build_ensemble(spec, 2, 1);
    const std::string json = ensemble.to_json();
    CHECK(json.find("\"A\"") != std::string::npos);
    CHECK(json.find("\"b\"") != std::string::npos);
    CHECK(json.find("\"seed\"") != std::string::npos);
  }
}

TEST_CASE("ae_sc_decode") {
  const CodeSpec spec = design(6, BlockProfile({1, 1, 1, 3}), 1.1, 32);
  const ChannelPoint point{2.0, spec.rate()};

  SUBCASE("identity ensemble reproduces SC exactly") {
    const Ensemble ensemble = build_ensemble(spec, 1, 3);
    AeScDecoder aed(spec, ensemble);
    ScDecoder sc(spec);
    for (std::uint64_t frame = 0; frame < 2000; ++frame) {
      Rng rng = Rng::for_frame(1234, frame);
      const auto word = encode(spec, random_message(rng, spec.k));
      const auto llr = transmit(word, point, rng);
      CHECK(aed.decode(llr) == sc.decode(llr).codeword);
    }
  }
  SUBCASE("noiseless input: all candidates agree on the transmitted word") {
    const Ensemble ensemble = build_ensemble(spec, 8, 3);
    AeScDecoder aed(spec, ensemble);
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      const auto word = encode(spec, random_message(rng, spec.k));
      std::vector<float> llr(word.size());
      for (std::size_t i = 0; i < word.size(); ++i) llr[i] = word[i] ? -35.0f : 35.0f;
      CHECK(aed.decode(llr) == word);
    }
  }
  SUBCASE("every candidate the ensemble can return is a codeword") {
    const Ensemble ensemble = build_ensemble(spec, 8, 9);
    AeScDecoder aed(spec, ensemble);
    const f2::RowSpace code = row_space_of(spec);
    for (std::uint64_t frame = 0; frame < 300; ++frame) {
      Rng rng = Rng::for_frame(777, frame);
      const auto word = encode(spec, random_message(rng, spec.k));
      const auto llr = transmit(word, point, rng);
      CHECK(code.contains(aed.decode(llr)));
    }
  }
  SUBCASE("selection maximizes the correlation metric") {
    const Ensemble ensemble = build_ensemble(spec, 8, 11);
    AeScDecoder aed(spec, ensemble);
    ScDecoder sc(spec);
    for (std::uint64_t frame = 0; frame < 200; ++frame) {
      Rng rng = Rng::for_frame(555, frame);
      const auto word = encode(spec, random_message(rng, spec.k));
      const auto llr = transmit(word, point, rng);
      const auto chosen = aed.decode(llr);
      const float chosen_metric =
          kernels::correlation(llr.data(), chosen.data(), chosen.size());
      // recompute every branch by hand
      for (int j = 0; j < ensemble.size(); ++j) {
        const auto& map = ensemble.perms[static_cast<std::size_t>(j)].map;
        std::vector<float> permuted(llr.size());
        for (std::uint32_t i = 0; i < llr.size(); ++i) permuted[map[i]] = llr[i];
        const auto& sub = sc.decode(permuted);
        std::vector<std::uint8_t> candidate(llr.size());
        for (std::uint32_t i = 0; i < llr.size(); ++i) candidate[i] = sub.codeword[map[i]];
        CHECK(kernels::correlation(llr.data(), candidate.data(), candidate.size()) <=
              chosen_metric);
      }
    }
  }
  SUBCASE("a single non-identity LTA permutation decodes like plain SC") {
    // this is exactly why LTA-equivalent automorphisms add no diversity
    Rng rng(21);
    const BlockProfile lta(std::vector<int>(static_cast<std::size_t>(spec.n), 1));
    Ensemble ensemble;
    ensemble.seed = 0;
    AffineAutomorphism aut = sample_blta(lta, rng);
    aut.offset = rng.bits(spec.n);
    ensemble.provenance.push_back(aut);
    ensemble.perms.push_back(to_symbol_permutation(aut));
    ensemble.inverses.push_back(ensemble.perms.back().inverse());
    REQUIRE_FALSE(ensemble.perms[0].is_identity());
    AeScDecoder aed(spec, ensemble);
    ScDecoder sc(spec);
    for (std::uint64_t frame = 0; frame < 2000; ++frame) {
      Rng frame_rng = Rng::for_frame(31337, frame);
      const auto word = encode(spec, random_message(frame_rng, spec.k));
      const auto llr = transmit(word, point, frame_rng);
      CHECK(aed.decode(llr) == sc.decode(llr).codeword);
    }
  }
  SUBCASE("fixed seed and input give a fixed output") {
    const Ensemble ensemble = build_ensemble(spec, 4, 2);
    AeScDecoder a(spec, ensemble);
    AeScDecoder b(spec, ensemble);
    Rng rng(6);
    const auto word = encode(spec, random_message(rng, spec.k));
    const auto llr = transmit(word, point, rng);
    CHECK(a.decode(llr) == b.decode(llr));
    const Ensemble again = build_ensemble(spec, 4, 2);
    for (int j = 0; j < 4; ++j) {
      CHECK(again.perms[static_cast<std::size_t>(j)].map ==
            ensemble.perms[static_cast<std::size_t>(j)].map);
    }
  }
}
