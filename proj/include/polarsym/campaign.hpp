#pragma once
// Simulation campaigns: JSON configuration, CSV result streams and the
// reproducibility manifest.

#include <iosfwd>
#include <string>
#include <vector>

#include "polarsym/sim.hpp"

namespace polarsym {

struct SnrGrid {
  double from_db = 1.0;
  double to_db = 5.0;
  double step_db = 0.5;
};

struct CampaignConfig {
  int n = 6;
  BlockProfile s{std::vector<int>{1}};
  double beta = 1.1;
  std::vector<int> k_list;
  std::vector<DecoderConfig> decoders;

  bool target_mode = false;  // false: SNR grid sweep; true: required-SNR search
  SnrGrid grid;
  double target_bler = 1e-2;
  SnrSearch search;

  StopRule stop;
  std::uint64_t seed = 12345;

  static CampaignConfig from_json(const std::string& text);
  std::string to_json() const;
  void validate() const;
};

// Header: code_id,decoder,L_or_M,ebn0_db,frames,errors,bler,ci_low,ci_high,seed
void run_simulate(const CampaignConfig& campaign, std::ostream& csv, int workers);

// Header: code_id,decoder,L_or_M,target_bler,required_ebn0_db,half_width_db,evaluations,seed
void run_required_snr(const CampaignConfig& campaign, std::ostream& csv, int workers);

// Everything needed to replay the run: the configuration, the resolved code
// specs and the ensemble provenance of every AE-SC decoder.
std::string campaign_manifest(const CampaignConfig& campaign);

}  // namespace polarsym
