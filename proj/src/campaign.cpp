#include "polarsym/campaign.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "polarsym/kernels.hpp"

namespace polarsym {

namespace {

std::string fmt(double value) {
  char buffer[48];
  std::snprintf(buffer, sizeof buffer, "%.10g", value);
  return buffer;
}

DecoderConfig decoder_from_json(const nlohmann::json& j) {
  DecoderConfig config;
  const std::string type = j.at("type").get<std::string>();
  if (type == "SC") {
    config.kind = DecoderKind::Sc;
  } else if (type == "SCL") {
    config.kind = DecoderKind::Scl;
    config.list_size = j.at("L").get<int>();
  } else if (type == "CA-SCL") {
    config.kind = DecoderKind::CaScl;
    config.list_size = j.at("L").get<int>();
    config.crc = CrcConfig::from_string(j.at("crc").get<std::string>());
  } else if (type == "AE-SC") {
    config.kind = DecoderKind::AeSc;
    config.ensemble_size = j.at("M").get<int>();
  } else {
    throw std::invalid_argument("campaign: unknown decoder type '" + type + "'");
  }
  return config;
}

nlohmann::json decoder_to_json(const DecoderConfig& config) {
  nlohmann::json j;
  j["type"] = config.name();
  switch (config.kind) {
    case DecoderKind::Sc:
      break;
    case DecoderKind::Scl:
      j["L"] = config.list_size;
      break;
    case DecoderKind::CaScl:
      j["L"] = config.list_size;
      j["crc"] = config.crc->to_string();
      break;
    case DecoderKind::AeSc:
      j["M"] = config.ensemble_size;
      break;
  }
  return j;
}

std::uint64_t ensemble_seed(std::uint64_t campaign_seed) {
  std::uint64_t sm = campaign_seed;
  return detail::splitmix64(sm);
}

}  // namespace

CampaignConfig CampaignConfig::from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  CampaignConfig campaign;
  const auto& code = j.at("code");
  campaign.n = code.at("n").get<int>();
  campaign.s = BlockProfile(code.at("s").get<std::vector<int>>());
  campaign.beta = code.at("beta").get<double>();
  if (code.at("k").is_array()) {
    campaign.k_list = code.at("k").get<std::vector<int>>();
  } else {
    campaign.k_list = {code.at("k").get<int>()};
  }
  for (const auto& d : j.at("decoders")) {
    campaign.decoders.push_back(decoder_from_json(d));
  }
  if (j.contains("target_bler")) {
    campaign.target_mode = true;
    campaign.target_bler = j.at("target_bler").get<double>();
    if (j.contains("bracket")) {
      campaign.search.low_db = j.at("bracket").at(0).get<double>();
      campaign.search.high_db = j.at("bracket").at(1).get<double>();
    }
    if (j.contains("tolerance_db")) campaign.search.tolerance_db = j.at("tolerance_db").get<double>();
    if (j.contains("max_iterations")) campaign.search.max_iterations = j.at("max_iterations").get<int>();
  } else {
    const auto& snr = j.at("snr");
    campaign.grid.from_db = snr.at("from").get<double>();
    campaign.grid.to_db = snr.at("to").get<double>();
    campaign.grid.step_db = snr.at("step").get<double>();
  }
  if (j.contains("stop")) {
    const auto& stop = j.at("stop");
    if (stop.contains("min_errors")) campaign.stop.min_errors = stop.at("min_errors").get<std::uint64_t>();
    if (stop.contains("max_frames")) campaign.stop.max_frames = stop.at("max_frames").get<std::uint64_t>();
  }
  campaign.search.per_point = campaign.stop;
  if (j.contains("seed")) campaign.seed = j.at("seed").get<std::uint64_t>();
  campaign.validate();
  return campaign;
}

std::string CampaignConfig::to_json() const {
  nlohmann::json j;
  j["code"] = {{"n", n}, {"s", s.sizes()}, {"beta", beta}, {"k", k_list}};
  nlohmann::json decoder_list = nlohmann::json::array();
  for (const auto& d : decoders) decoder_list.push_back(decoder_to_json(d));
  j["decoders"] = std::move(decoder_list);
  if (target_mode) {
    j["target_bler"] = target_bler;
    j["bracket"] = {search.low_db, search.high_db};
    j["tolerance_db"] = search.tolerance_db;
    j["max_iterations"] = search.max_iterations;
  } else {
    j["snr"] = {{"from", grid.from_db}, {"to", grid.to_db}, {"step", grid.step_db}};
  }
  j["stop"] = {{"min_errors", stop.min_errors}, {"max_frames", stop.max_frames}};
  j["seed"] = seed;
  return j.dump(2);
}

void CampaignConfig::validate() const {
  if (s.total_digits() != n) {
    throw std::invalid_argument("campaign: block profile does not partition n digits");
  }
  if (k_list.empty()) throw std::invalid_argument("campaign: k list must not be empty");
  if (decoders.empty()) throw std::invalid_argument("campaign: decoder list must not be empty");
  for (const auto& d : decoders) {
    if ((d.kind == DecoderKind::Scl || d.kind == DecoderKind::CaScl) && d.list_size < 1) {
      throw std::invalid_argument("campaign: list size must be >= 1");
    }
    if (d.kind == DecoderKind::AeSc && d.ensemble_size < 1) {
      throw std::invalid_argument("campaign: ensemble size must be >= 1");
    }
  }
  if (!target_mode && !(grid.step_db > 0.0)) {
    throw std::invalid_argument("campaign: SNR step must be positive");
  }
}

void run_simulate(const CampaignConfig& campaign, std::ostream& csv, int workers) {
  campaign.validate();
  csv << "code_id,decoder,L_or_M,ebn0_db,frames,errors,bler,ci_low,ci_high,seed\n";
  for (int k : campaign.k_list) {
    const CodeSpec spec = design(campaign.n, campaign.s, campaign.beta, k);
    for (const auto& decoder : campaign.decoders) {
      for (int point = 0;; ++point) {
        const double ebn0 = campaign.grid.from_db + point * campaign.grid.step_db;
        if (ebn0 > campaign.grid.to_db + 1e-9) break;
        const SimResult r = estimate_bler(spec, decoder, ChannelPoint{ebn0, spec.rate()},
                                          campaign.stop, campaign.seed, workers);
        csv << spec.id() << ',' << decoder.name() << ',' << decoder.list_or_ensemble() << ','
            << fmt(ebn0) << ',' << r.frames << ',' << r.frame_errors << ',' << fmt(r.bler) << ','
            << fmt(r.ci_low) << ',' << fmt(r.ci_high) << ',' << campaign.seed << '\n';
        csv.flush();
      }
    }
  }
}

void run_required_snr(const CampaignConfig& campaign, std::ostream& csv, int workers) {
  campaign.validate();
  if (!campaign.target_mode) {
    throw std::invalid_argument("campaign: required-snr needs a target_bler entry");
  }
  csv << "code_id,decoder,L_or_M,target_bler,required_ebn0_db,half_width_db,evaluations,seed\n";
  for (int k : campaign.k_list) {
    const CodeSpec spec = design(campaign.n, campaign.s, campaign.beta, k);
    for (const auto& decoder : campaign.decoders) {
      const SnrResult r =
          required_snr(spec, decoder, campaign.target_bler, campaign.search, campaign.seed, workers);
      csv << spec.id() << ',' << decoder.name() << ',' << decoder.list_or_ensemble() << ','
          << fmt(campaign.target_bler) << ',' << fmt(r.ebn0_db) << ',' << fmt(r.half_width_db)
          << ',' << r.evaluations << ',' << campaign.seed << '\n';
      csv.flush();
    }
  }
}

std::string campaign_manifest(const CampaignConfig& campaign) {
  nlohmann::json manifest;
  manifest["campaign"] = nlohmann::json::parse(campaign.to_json());
  manifest["kernel_backend"] = kernels::active().name;
  nlohmann::json codes = nlohmann::json::array();
  for (int k : campaign.k_list) {
    const CodeSpec spec = design(campaign.n, campaign.s, campaign.beta, k);
    codes.push_back(nlohmann::json::parse(spec.to_json()));
  }
  manifest["codes"] = std::move(codes);
  nlohmann::json ensembles = nlohmann::json::array();
  for (const auto& decoder : campaign.decoders) {
    if (decoder.kind != DecoderKind::AeSc) continue;
    for (int k : campaign.k_list) {
      const CodeSpec spec = design(campaign.n, campaign.s, campaign.beta, k);
      const Ensemble ensemble =
          build_ensemble(spec, decoder.ensemble_size, ensemble_seed(campaign.seed));
      ensembles.push_back({{"code_id", spec.id()},
                           {"M", decoder.ensemble_size},
                           {"ensemble", nlohmann::json::parse(ensemble.to_json())}});
    }
  }
  manifest["ensembles"] = std::move(ensembles);
  return manifest.dump(2);
}

}  // namespace polarsym
