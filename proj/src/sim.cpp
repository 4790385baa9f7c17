#include "polarsym/sim.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <thread>

namespace polarsym {

double ChannelPoint::sigma2() const {
  return 1.0 / (2.0 * rate * std::pow(10.0, ebn0_db / 10.0));
}

std::string DecoderConfig::name() const {
  switch (kind) {
    case DecoderKind::Sc: return "SC";
    case DecoderKind::Scl: return "SCL";
    case DecoderKind::CaScl: return "CA-SCL";
    case DecoderKind::AeSc: return "AE-SC";
  }
  return "?";
}

int DecoderConfig::list_or_ensemble() const {
  switch (kind) {
    case DecoderKind::Sc: return 1;
    case DecoderKind::Scl:
    case DecoderKind::CaScl: return list_size;
    case DecoderKind::AeSc: return ensemble_size;
  }
  return 1;
}

std::pair<double, double> wilson_interval(std::uint64_t errors, std::uint64_t frames) {
  if (frames == 0) return {0.0, 1.0};
  const double z = 1.959963984540054;  // 97.5% normal quantile
  const double n = static_cast<double>(frames);
  const double p = static_cast<double>(errors) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  const double low = errors == 0 ? 0.0 : std::max(0.0, center - half);
  const double high = errors == frames ? 1.0 : std::min(1.0, center + half);
  return {low, high};
}

std::vector<float> transmit(const std::vector<std::uint8_t>& codeword, ChannelPoint point,
                            Rng& rng) {
  const double sigma2 = point.sigma2();
  if (!(sigma2 > 0.0)) throw std::invalid_argument("transmit: noise variance must be positive");
  const double sigma = std::sqrt(sigma2);
  const double scale = 2.0 / sigma2;
  std::vector<float> llr(codeword.size());
  for (std::size_t i = 0; i < codeword.size(); ++i) {
    const double symbol = codeword[i] ? -1.0 : 1.0;
    const double received = symbol + sigma * rng.gaussian();
    llr[i] = static_cast<float>(scale * received);
  }
  return llr;
}

namespace {

// One worker's decode state; rebuilt per estimate_bler call.
struct FrameWorker {
  const CodeSpec* spec;
  const DecoderConfig* config;
  const Ensemble* ensemble;  // AE-SC only
  ChannelPoint point;
  std::uint64_t seed;

  std::unique_ptr<ScDecoder> sc;
  std::unique_ptr<SclDecoder> scl;
  std::unique_ptr<AeScDecoder> aesc;

  void prepare() {
    switch (config->kind) {
      case DecoderKind::Sc:
        sc = std::make_unique<ScDecoder>(*spec);
        break;
      case DecoderKind::Scl:
        scl = std::make_unique<SclDecoder>(*spec, config->list_size);
        break;
      case DecoderKind::CaScl:
        scl = std::make_unique<SclDecoder>(*spec, config->list_size, config->crc);
        break;
      case DecoderKind::AeSc:
        aesc = std::make_unique<AeScDecoder>(*spec, *ensemble);
        break;
    }
  }

  // True on frame error (decoded codeword differs from the transmitted one).
  bool run_frame(std::uint64_t frame) {
    Rng rng = Rng::for_frame(seed, frame);
    const int payload = config->kind == DecoderKind::CaScl
                            ? spec->k - config->crc->degree()
                            : spec->k;
    std::vector<std::uint8_t> msg(static_cast<std::size_t>(payload));
    for (auto& bit : msg) bit = rng.coin() ? 1 : 0;
    if (config->kind == DecoderKind::CaScl) msg = crc_attach(msg, *config->crc);
    const std::vector<std::uint8_t> tx = encode(*spec, msg);
    const std::vector<float> llr = transmit(tx, point, rng);
    const std::vector<std::uint8_t>* decoded = nullptr;
    switch (config->kind) {
      case DecoderKind::Sc:
        decoded = &sc->decode(llr).codeword;
        break;
      case DecoderKind::Scl:
      case DecoderKind::CaScl:
        decoded = &scl->decode(llr);
        break;
      case DecoderKind::AeSc:
        decoded = &aesc->decode(llr);
        break;
    }
    return *decoded != tx;
  }
};

}  // namespace

SimResult estimate_bler(const CodeSpec& spec, const DecoderConfig& decoder, ChannelPoint point,
                        StopRule stop, std::uint64_t seed, int workers) {
  if (stop.max_frames == 0) throw std::invalid_argument("estimate_bler: empty stop rule");
  if (workers < 1) throw std::invalid_argument("estimate_bler: workers must be >= 1");
  if ((decoder.kind == DecoderKind::CaScl) && !decoder.crc) {
    throw std::invalid_argument("estimate_bler: CA-SCL requires a CRC configuration");
  }
  Ensemble ensemble;
  if (decoder.kind == DecoderKind::AeSc) {
    std::uint64_t sm = seed;
    ensemble = build_ensemble(spec, decoder.ensemble_size, detail::splitmix64(sm));
  }

  std::vector<FrameWorker> pool(static_cast<std::size_t>(workers));
  for (auto& worker : pool) {
    worker.spec = &spec;
    worker.config = &decoder;
    worker.ensemble = &ensemble;
    worker.point = point;
    worker.seed = seed;
    worker.prepare();
  }

  std::uint64_t frames = 0;
  std::uint64_t errors = 0;
  while (frames < stop.max_frames && errors < stop.min_errors) {
    const std::uint64_t batch = std::min(kFrameBatch, stop.max_frames - frames);
    std::vector<std::uint64_t> batch_errors(static_cast<std::size_t>(workers), 0);
    auto run_range = [&](int w, std::uint64_t from, std::uint64_t to) {
      std::uint64_t local = 0;
      for (std::uint64_t frame = from; frame < to; ++frame) {
        if (pool[static_cast<std::size_t>(w)].run_frame(frame)) ++local;
      }
      batch_errors[static_cast<std::size_t>(w)] = local;
    };
    if (workers == 1) {
      run_range(0, frames, frames + batch);
    } else {
      std::vector<std::thread> threads;
      const std::uint64_t chunk = (batch + static_cast<std::uint64_t>(workers) - 1) /
                                  static_cast<std::uint64_t>(workers);
      for (int w = 0; w < workers; ++w) {
        const std::uint64_t from = frames + std::min(batch, static_cast<std::uint64_t>(w) * chunk);
        const std::uint64_t to = frames + std::min(batch, static_cast<std::uint64_t>(w + 1) * chunk);
        if (from < to) threads.emplace_back(run_range, w, from, to);
      }
      for (auto& thread : threads) thread.join();
    }
    for (std::uint64_t e : batch_errors) errors += e;
    frames += batch;
  }

  SimResult result;
  result.frames = frames;
  result.frame_errors = errors;
  result.bler = frames ? static_cast<double>(errors) / static_cast<double>(frames) : 0.0;
  const auto [lo, hi] = wilson_interval(errors, frames);
  result.ci_low = lo;
  result.ci_high = hi;
  result.ebn0_db = point.ebn0_db;
  result.seed = seed;
  result.decoder = decoder.name();
  return result;
}

SnrResult required_snr(const CodeSpec& spec, const DecoderConfig& decoder, double target_bler,
                       SnrSearch search, std::uint64_t seed, int workers) {
  if (!(target_bler > 0.0) || !(target_bler < 1.0)) {
    throw std::invalid_argument("required_snr: target BLER must lie in (0, 1)");
  }
  if (!(search.low_db < search.high_db)) {
    throw std::invalid_argument("required_snr: invalid search bounds");
  }
  SnrResult result;
  const auto evaluate = [&](double ebn0_db) {
    const SimResult point = estimate_bler(spec, decoder, ChannelPoint{ebn0_db, spec.rate()},
                                          search.per_point, seed, workers);
    result.trace.push_back(point);
    ++result.evaluations;
    return point;
  };
  const SimResult at_low = evaluate(search.low_db);
  if (at_low.ci_high < target_bler) {
    throw std::runtime_error("required_snr: bracket failure, BLER at the lower bound (" +
                             std::to_string(at_low.bler) + ") is already below the target");
  }
  const SimResult at_high = evaluate(search.high_db);
  if (at_high.ci_low > target_bler) {
    throw std::runtime_error("required_snr: bracket failure, BLER at the upper bound (" +
                             std::to_string(at_high.bler) + ") is still above the target");
  }
  double low = search.low_db;
  double high = search.high_db;
  for (int iter = 0; iter < search.max_iterations && (high - low) > 2.0 * search.tolerance_db;
       ++iter) {
    const double mid = 0.5 * (low + high);
    const SimResult at_mid = evaluate(mid);
    // BLER decreases with SNR: estimate above target pushes the bracket up.
    const bool above = at_mid.ci_low > target_bler ||
                       (at_mid.ci_high >= target_bler && at_mid.bler > target_bler);
    if (above) {
      low = mid;
    } else {
      high = mid;
    }
  }
  result.ebn0_db = 0.5 * (low + high);
  result.half_width_db = 0.5 * (high - low);
  return result;
}

}  // namespace polarsym
