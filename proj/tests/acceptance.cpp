// Acceptance suite: end-to-end checks of the combinatorial structures and the
// decoder chain, one PASS/FAIL line per criterion. Exits nonzero if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "polarsym/aed.hpp"
#include "polarsym/codec.hpp"
#include "polarsym/construct.hpp"
#include "polarsym/f2.hpp"
#include "polarsym/order.hpp"
#include "polarsym/rng.hpp"
#include "polarsym/sim.hpp"

using namespace polarsym;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
  std::printf("%s  criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", number, name.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

template <typename Fn>
void criterion(int number, const std::string& name, Fn&& body) {
  try {
    body();
  } catch (const std::exception& error) {
    report(number, name, false, std::string("exception: ") + error.what());
  }
}

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

BlockProfile random_profile(Rng& rng, int n) {
  std::vector<int> sizes;
  int remaining = n;
  while (remaining > 0) {
    const int block = 1 + static_cast<int>(rng.below(static_cast<std::uint32_t>(remaining)));
    sizes.push_back(block);
    remaining -= block;
  }
  return BlockProfile(std::move(sizes));
}

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

// --- criterion 1 -----------------------------------------------------------

void small_orbit_grouping() {
  const auto start = Clock::now();
  const OrbitSystem system = all_orbits(4, BlockProfile({2, 2}));
  const double elapsed = ms_since(start);
  const std::vector<std::vector<std::uint32_t>> expected = {
      {0}, {1, 2}, {3}, {4, 8}, {5, 6, 9, 10}, {7, 11}, {12}, {13, 14}, {15}};
  const bool pass = system.orbits == expected && elapsed < 1.0;
  std::ostringstream detail;
  detail << system.orbits.size() << " orbits in " << elapsed << " ms";
  report(1, "exact orbit grouping for n=4, s=[2,2]", pass, detail.str());
}

// --- criterion 2 -----------------------------------------------------------

void symmetric_order_n5() {
  const BlockProfile s({1, 1, 3});
  const SymmetricOrder order(5, s);
  const OrbitSystem& system = order.system();

  const std::vector<std::vector<std::uint32_t>> expected_orbits = {
      {0},          {1},          {2},          {3},      {4, 8, 16},   {5, 9, 17},
      {6, 10, 18},  {7, 11, 19},  {12, 20, 24}, {13, 21, 25}, {14, 22, 26}, {15, 23, 27},
      {28},         {29},         {30},         {31}};
  bool pass = system.orbits == expected_orbits;

  // expected Hasse cover edges, as (smallest member, smallest member) pairs
  const std::vector<std::pair<std::uint32_t, std::uint32_t>> expected_edges = {
      {0, 1},   {1, 2},   {2, 3},   {2, 4},   {3, 5},   {4, 5},
      {5, 6},   {6, 7},   {6, 12},  {7, 13},  {12, 13}, {13, 14},
      {14, 15}, {14, 28}, {15, 29}, {28, 29}, {29, 30}, {30, 31}};
  std::vector<std::pair<int, int>> expected_ids;
  for (const auto& [a, b] : expected_edges) {
    expected_ids.emplace_back(system.orbit_of[a], system.orbit_of[b]);
  }
  std::sort(expected_ids.begin(), expected_ids.end());
  pass = pass && order.covers() == expected_ids;

  std::ostringstream detail;
  detail << system.orbits.size() << " orbits, " << order.covers().size() << " cover edges";
  report(2, "symmetric order for n=5, s=[1,1,3] (orbits and Hasse covers)", pass, detail.str());
}

// --- criterion 3 -----------------------------------------------------------

void orbit_size_formula() {
  const auto start = Clock::now();
  Rng rng(0xACCE55);
  std::uint64_t checked = 0;
  bool pass = true;
  for (int profile_index = 0; profile_index < 50 && pass; ++profile_index) {
    const int n = 1 + profile_index % 10;  // spans all n <= 10
    const BlockProfile s = random_profile(rng, n);
    for (std::uint32_t i = 0; i < (1u << n); ++i) {
      if (orbit_size(BitIndex{i, n}, s) != orbit(BitIndex{i, n}, s).size()) {
        pass = false;
        break;
      }
      ++checked;
    }
  }
  const double elapsed = ms_since(start);
  pass = pass && elapsed < 10000.0;
  std::ostringstream detail;
  detail << checked << " indices across 50 profiles in " << elapsed / 1000.0 << " s";
  report(3, "orbit size product formula vs enumeration (n<=10)", pass, detail.str());
}

// --- criterion 4 -----------------------------------------------------------

void weight_monotonicity() {
  Rng rng(0x1E44A);
  std::uint64_t value_checks = 0, order_checks = 0;
  bool pass = true;

  for (int step = 1; step <= 20 && pass; ++step) {
    const double beta = (100 + 5 * step) / 100.0;
    for (int trial = 0; trial < 25 && pass; ++trial) {
      const BlockProfile s = random_profile(rng, 1 + static_cast<int>(rng.below(10)));
      const auto values = symmetric_beta_values(s, beta);
      for (std::size_t l = 0; l + 1 < values.size(); ++l) {
        if (values[l] > values[l + 1] + 1e-12) pass = false;
        ++value_checks;
      }
    }
  }

  for (int n = 1; n <= 8 && pass; ++n) {
    std::vector<BlockProfile> profiles{BlockProfile(std::vector<int>(static_cast<std::size_t>(n), 1)),
                                       BlockProfile({n})};
    for (int extra = 0; extra < 4; ++extra) profiles.push_back(random_profile(rng, n));
    for (const auto& s : profiles) {
      for (double beta : {1.05, 1.1, 1.5, 2.0}) {
        const auto values = symmetric_beta_values(s, beta);
        std::vector<double> weights(1u << n, 0.0);
        for (std::uint32_t i = 0; i < (1u << n); ++i) {
          for (int l = 0; l < n; ++l) {
            if ((i >> l) & 1u) weights[i] += values[static_cast<std::size_t>(l)];
          }
        }
        // monotone on cover edges extends to the full order by transitivity
        for (std::uint32_t i = 0; i < (1u << n) && pass; ++i) {
          for (std::uint32_t j : direct_successors(BitIndex{i, n})) {
            if (weights[i] > weights[j] + 1e-12) pass = false;
            ++order_checks;
          }
        }
      }
    }
  }

  std::ostringstream detail;
  detail << value_checks << " digit-value pairs, " << order_checks << " order edges, 0 violations";
  report(4, "digit values monotone in l; symmetric weight monotone along the order", pass,
         detail.str());
}

// --- criterion 5 -----------------------------------------------------------

void design_symmetry_suite() {
  const auto start = Clock::now();
  Rng rng(0x7E0333);
  bool pass = true;
  int closure_checks = 0;
  for (int trial = 0; trial < 1000 && pass; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(8));
    const BlockProfile s = random_profile(rng, n);
    const double beta = 1.0 + std::max(1e-6, rng.uniform01());
    const int K = 1 + static_cast<int>(rng.below(1u << n));
    const CodeSpec spec = design(n, s, std::min(beta, 2.0), K);
    if (!complies_symmetric(spec.info_set, s) || spec.k < K) {
      pass = false;
      break;
    }
    if (trial % 20 != 0) continue;  // 50 of the 1000 get the closure test
    const f2::RowSpace code = row_space_of(spec);
    for (int p = 0; p < 100 && pass; ++p) {
      const SymbolPermutation perm = to_symbol_permutation(sample_blta(s, rng));
      for (int w = 0; w < 20; ++w) {
        const auto codeword = encode(spec, random_message(rng, spec.k));
        std::vector<std::uint8_t> permuted(codeword.size());
        for (std::uint32_t i = 0; i < codeword.size(); ++i) permuted[perm.map[i]] = codeword[i];
        if (!code.contains(permuted)) {
          pass = false;
          break;
        }
        ++closure_checks;
      }
    }
  }
  const double elapsed = ms_since(start);
  pass = pass && elapsed < 60000.0;
  std::ostringstream detail;
  detail << "1000 designs, " << closure_checks << " permuted codewords in " << elapsed / 1000.0
         << " s";
  report(5, "designed codes are BLTA(s)-symmetric (compliance + codeword closure)", pass,
         detail.str());
}

// --- criterion 6 -----------------------------------------------------------

void granularity() {
  struct Row {
    int n;
    std::vector<int> sizes;
    double beta;
  };
  const std::vector<Row> rows = {{6, {1, 1, 4}, 1.1},
                                 {7, {1, 1, 1, 4}, 1.1},
                                 {8, {1, 1, 1, 1, 4}, 1.122},
                                 {9, {1, 1, 1, 1, 1, 4}, 1.134},
                                 {10, {1, 1, 1, 1, 1, 1, 4}, 1.14}};
  bool pass = true;
  int max_gap = 0;
  for (const auto& row : rows) {
    const auto dims = achievable_dimensions(row.n, BlockProfile(row.sizes), row.beta);
    int previous = 0;
    for (int d : dims) {
      max_gap = std::max(max_gap, d - previous);
      if (d - previous > 6) pass = false;
      previous = d;
    }
    if (dims.back() != (1 << row.n)) pass = false;
  }
  std::ostringstream detail;
  detail << "largest dimension step " << max_gap << " (bound 6) over n=6..10";
  report(6, "size-4 tail block keeps dimension granularity at most C(4,2)=6", pass, detail.str());
}

// --- criterion 7 -----------------------------------------------------------

void decoder_consistency() {
  bool pass = true;
  std::ostringstream detail;

  // SCL(L=1) == SC, exact, 10^4 noisy frames
  {
    const CodeSpec spec = design(6, BlockProfile({1, 1, 1, 3}), 1.1, 32);
    ScDecoder sc(spec);
    SclDecoder scl(spec, 1);
    const ChannelPoint point{2.0, spec.rate()};
    std::uint64_t mismatches = 0;
    for (std::uint64_t frame = 0; frame < 10000; ++frame) {
      Rng rng = Rng::for_frame(0xA1, frame);
      const auto word = encode(spec, random_message(rng, spec.k));
      const auto llr = transmit(word, point, rng);
      if (scl.decode(llr) != sc.decode(llr).codeword) ++mismatches;
    }
    pass = pass && mismatches == 0;
    detail << "SCL(1) vs SC mismatches " << mismatches << "/10000";
  }

  // SCL(L >= 2^K) == brute-force maximum likelihood on n=3 codes
  {
    std::uint64_t mismatches = 0, frames = 0;
    for (int K : {2, 4}) {
      const CodeSpec spec = design(3, BlockProfile({1, 1, 1}), 1.1, K);
      SclDecoder scl(spec, 16);
      const ChannelPoint point{1.0, spec.rate()};
      for (std::uint64_t frame = 0; frame < 1000; ++frame, ++frames) {
        Rng rng = Rng::for_frame(0xB2 + static_cast<std::uint64_t>(K), frame);
        const auto word = encode(spec, random_message(rng, spec.k));
        const auto llr = transmit(word, point, rng);
        const auto& decoded = scl.decode(llr);
        // oracle: maximize correlation over all 2^K codewords
        std::vector<std::uint8_t> best;
        double best_metric = -1e300;
        for (std::uint32_t m = 0; m < (1u << spec.k); ++m) {
          std::vector<std::uint8_t> msg(static_cast<std::size_t>(spec.k));
          for (int b = 0; b < spec.k; ++b) msg[static_cast<std::size_t>(b)] = (m >> b) & 1u;
          const auto candidate = encode(spec, msg);
          double metric = 0.0;
          for (std::size_t i = 0; i < candidate.size(); ++i) {
            metric += candidate[i] ? -static_cast<double>(llr[i]) : static_cast<double>(llr[i]);
          }
          if (metric > best_metric) {
            best_metric = metric;
            best = candidate;
          }
        }
        if (decoded != best) ++mismatches;
      }
    }
    pass = pass && mismatches == 0;
    detail << "; full-list SCL vs ML mismatches " << mismatches << "/" << frames;
  }

  // AE-SC with the identity ensemble == SC
  {
    const CodeSpec spec = design(6, BlockProfile({1, 1, 1, 3}), 1.1, 32);
    const Ensemble ensemble = build_ensemble(spec, 1, 1);
    AeScDecoder aed(spec, ensemble);
    ScDecoder sc(spec);
    const ChannelPoint point{2.0, spec.rate()};
    std::uint64_t mismatches = 0;
    for (std::uint64_t frame = 0; frame < 10000; ++frame) {
      Rng rng = Rng::for_frame(0xC3, frame);
      const auto word = encode(spec, random_message(rng, spec.k));
      const auto llr = transmit(word, point, rng);
      if (aed.decode(llr) != sc.decode(llr).codeword) ++mismatches;
    }
    pass = pass && mismatches == 0;
    detail << "; AE-SC(1) vs SC mismatches " << mismatches << "/10000";
  }

  report(7, "decoder consistency (SCL(1)=SC, full list=ML, AE-SC(1)=SC)", pass, detail.str());
}

// --- criterion 8 -----------------------------------------------------------

void aed_gain() {
  const CodeSpec spec = design(6, BlockProfile({1, 1, 1, 3}), 1.1, 32);
  const DecoderConfig sc_config{DecoderKind::Sc, 1, 1, std::nullopt};
  const std::uint64_t seed = 0xF16;
  const int workers = 2;

  // operating point: SNR where plain SC reaches ~1e-2
  SnrSearch search;
  search.low_db = 0.5;
  search.high_db = 5.5;
  search.tolerance_db = 0.06;
  search.per_point = StopRule{120, 60000};
  const SnrResult sc_point = required_snr(spec, sc_config, 1e-2, search, seed, workers);

  // paired A/B at that SNR with at least 1e5 frames
  const std::uint64_t frames = 100000;
  const ChannelPoint point{sc_point.ebn0_db, spec.rate()};
  const Ensemble ensemble = build_ensemble(spec, 8, 0xE5D);
  ScDecoder sc(spec);
  AeScDecoder aed(spec, ensemble);
  std::uint64_t sc_errors = 0, aed_errors = 0;
  std::uint64_t sc_only = 0, aed_only = 0;  // McNemar discordant counts
  for (std::uint64_t frame = 0; frame < frames; ++frame) {
    Rng rng = Rng::for_frame(seed, frame);
    const auto word = encode(spec, random_message(rng, spec.k));
    const auto llr = transmit(word, point, rng);
    const bool sc_err = sc.decode(llr).codeword != word;
    const bool aed_err = aed.decode(llr) != word;
    sc_errors += sc_err;
    aed_errors += aed_err;
    sc_only += sc_err && !aed_err;
    aed_only += aed_err && !sc_err;
  }
  const double z = (static_cast<double>(sc_only) - static_cast<double>(aed_only)) /
                   std::sqrt(static_cast<double>(sc_only + aed_only));
  const bool gain = aed_errors < sc_errors && z > 1.6449;  // one-sided 95%

  // required SNR non-increasing in the ensemble size
  std::vector<double> snr_by_m;
  bool monotone = true;
  for (int m : {1, 2, 4, 8}) {
    const DecoderConfig config{DecoderKind::AeSc, 1, m, std::nullopt};
    const SnrResult r = required_snr(spec, config, 1e-2, search, seed, workers);
    if (!snr_by_m.empty() && r.ebn0_db > snr_by_m.back() + 1e-9) monotone = false;
    snr_by_m.push_back(r.ebn0_db);
  }

  std::ostringstream detail;
  detail << "at " << sc_point.ebn0_db << " dB: SC " << sc_errors << "/" << frames << ", AE-SC(8) "
         << aed_errors << "/" << frames << ", McNemar z=" << z << "; required SNR over M={1,2,4,8}: ";
  for (std::size_t m = 0; m < snr_by_m.size(); ++m) {
    if (m) detail << ", ";
    detail << snr_by_m[m];
  }
  report(8, "AE-SC(8) beats SC at the 1e-2 operating point; gain grows with M", gain && monotone,
         detail.str());
}

// --- criterion 9 -----------------------------------------------------------

void determinism() {
  const fs::path dir = fs::temp_directory_path();
  const fs::path campaign = dir / "polarsym_acceptance_campaign.json";
  const fs::path csv1 = dir / "polarsym_acceptance_w1.csv";
  const fs::path csv8 = dir / "polarsym_acceptance_w8.csv";
  std::ofstream(campaign) << R"({
    "code": {"n": 6, "s": [1, 1, 1, 3], "beta": 1.1, "k": [32]},
    "decoders": [{"type": "SC"}, {"type": "AE-SC", "M": 4}, {"type": "CA-SCL", "L": 4, "crc": "1100001"}],
    "snr": {"from": 1.5, "to": 2.5, "step": 0.5},
    "stop": {"min_errors": 40, "max_frames": 8000},
    "seed": 2718
  })";
  const std::string base = std::string(POLARSYM_CLI_PATH) + " simulate --campaign " +
                           campaign.string();
  const int rc1 = std::system((base + " --out " + csv1.string() + " --workers 1 2>/dev/null").c_str());
  const int rc8 = std::system((base + " --out " + csv8.string() + " --workers 8 2>/dev/null").c_str());

  const auto slurp = [](const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  };
  const std::string body1 = slurp(csv1);
  const std::string body8 = slurp(csv8);
  const bool pass = rc1 == 0 && rc8 == 0 && !body1.empty() && body1 == body8;
  std::ostringstream detail;
  detail << body1.size() << " CSV bytes, workers 1 vs 8 " << (body1 == body8 ? "identical" : "differ");
  report(9, "campaign output is byte-identical for any worker count", pass, detail.str());

  fs::remove(campaign);
  fs::remove(csv1);
  fs::remove(csv8);
  fs::remove(fs::path(csv1.string() + ".manifest.json"));
  fs::remove(fs::path(csv8.string() + ".manifest.json"));
}

}  // namespace

int main() {
  criterion(1, "orbit grouping", small_orbit_grouping);
  criterion(2, "symmetric order", symmetric_order_n5);
  criterion(3, "orbit size formula", orbit_size_formula);
  criterion(4, "weight monotonicity", weight_monotonicity);
  criterion(5, "design symmetry", design_symmetry_suite);
  criterion(6, "granularity", granularity);
  criterion(7, "decoder consistency", decoder_consistency);
  criterion(8, "AED gain", aed_gain);
  criterion(9, "determinism", determinism);
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 9 criteria passed\n");
  return 0;
}
