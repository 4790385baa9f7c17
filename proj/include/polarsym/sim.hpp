#pragma once
// BPSK/AWGN Monte-Carlo harness: BLER estimation with a deterministic
// frame schedule and bisection search for the SNR reaching a target BLER.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polarsym/aed.hpp"
#include "polarsym/codec.hpp"
#include "polarsym/rng.hpp"

namespace polarsym {

struct ChannelPoint {
  double ebn0_db = 0.0;
  double rate = 0.5;  // K/N with the actual dimension

  double sigma2() const;  // noise variance 1 / (2 R 10^(EbN0/10))
};

enum class DecoderKind { Sc, Scl, CaScl, AeSc };

struct DecoderConfig {
  DecoderKind kind = DecoderKind::Sc;
  int list_size = 1;      // SCL / CA-SCL
  int ensemble_size = 1;  // AE-SC
  std::optional<CrcConfig> crc;

  std::string name() const;      // "SC", "SCL", "CA-SCL", "AE-SC"
  int list_or_ensemble() const;  // the L_or_M column
};

struct StopRule {
  std::uint64_t min_errors = 100;
  std::uint64_t max_frames = 1000000;
};

struct SimResult {
  std::uint64_t frames = 0;
  std::uint64_t frame_errors = 0;
  double bler = 0.0;
  double ci_low = 0.0;   // 95% Wilson interval
  double ci_high = 0.0;
  double ebn0_db = 0.0;
  std::uint64_t seed = 0;
  std::string decoder;
};

// 95% Wilson score interval for errors/frames.
std::pair<double, double> wilson_interval(std::uint64_t errors, std::uint64_t frames);

// BPSK modulation 0 -> +1, 1 -> -1, Gaussian noise, llr = 2y/sigma^2.
std::vector<float> transmit(const std::vector<std::uint8_t>& codeword, ChannelPoint point,
                            Rng& rng);

// Frames are processed in fixed batches of kFrameBatch; the stop rule is
// evaluated at batch boundaries only, so the processed frame set and all
// counts depend on (seed, stop rule) but never on the worker count.
inline constexpr std::uint64_t kFrameBatch = 1024;

SimResult estimate_bler(const CodeSpec& spec, const DecoderConfig& decoder, ChannelPoint point,
                        StopRule stop, std::uint64_t seed, int workers = 1);

struct SnrSearch {
  double low_db = 0.0;
  double high_db = 8.0;
  double tolerance_db = 0.05;  // stop when the bracket is this tight
  int max_iterations = 16;
  StopRule per_point;
};

struct SnrResult {
  double ebn0_db = 0.0;
  double half_width_db = 0.0;  // achieved bracket half-width
  int evaluations = 0;
  std::vector<SimResult> trace;
};

// Bisects Eb/N0 for the given target BLER. Direction is taken from the
// Wilson interval when it excludes the target and from the point estimate
// otherwise. Throws std::runtime_error when the initial bounds do not
// bracket the target.
SnrResult required_snr(const CodeSpec& spec, const DecoderConfig& decoder, double target_bler,
                       SnrSearch search, std::uint64_t seed, int workers = 1);

}  // namespace polarsym
