// Command-line front end: code construction, verification, orbit and Hasse
// inspection, and Monte-Carlo simulation campaigns.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "polarsym/campaign.hpp"
#include "polarsym/construct.hpp"
#include "polarsym/f2.hpp"
#include "polarsym/kernels.hpp"
#include "polarsym/order.hpp"

namespace {

using namespace polarsym;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw CLI::ValidationError("cannot write '" + path + "'");
  out << content;
}

struct ConstructArgs {
  int n = 0;
  std::string s;
  double beta = 1.1;
  int k = 0;
  std::string out;
  std::string weights_csv;
};

int cmd_construct(const ConstructArgs& args) {
  const BlockProfile profile = BlockProfile::from_string(args.s);
  const CodeSpec spec = design(args.n, profile, args.beta, args.k);
  const std::string json = spec.to_json();
  if (args.out.empty()) {
    std::cout << json << '\n';
  } else {
    write_file(args.out, json + "\n");
    std::cerr << "wrote " << args.out << " (K=" << spec.k << " requested " << spec.requested_k
              << ")\n";
  }
  if (!args.weights_csv.empty()) {
    std::ofstream csv(args.weights_csv);
    if (!csv) throw CLI::ValidationError("cannot write '" + args.weights_csv + "'");
    write_weight_csv(csv, args.n, profile, args.beta);
  }
  return 0;
}

struct VerifyArgs {
  std::string spec_file;
  bool json = false;
  int brute_force = 0;
  std::uint64_t seed = 12345;
};

int cmd_verify(const VerifyArgs& args) {
  const CodeSpec spec = CodeSpec::from_json(read_file(args.spec_file));
  const VerifyReport report = verify(spec);
  bool brute_ok = true;
  int closed = 0;
  if (args.brute_force > 0) {
    // Random BLTA(s) symbol permutations must map codewords into the code;
    // membership is checked against the row space of the generator rows
    // (built from the subset rule, independent of the encoder).
    const std::uint32_t N = spec.block_length();
    f2::Matrix generator(spec.info_set.size(), N);
    for (std::size_t r = 0; r < spec.info_set.size(); ++r) {
      const std::uint32_t i = spec.info_set[r];
      for (std::uint32_t j = 0; j < N; ++j) {
        if ((i & j) == j) generator.set(r, j, true);
      }
    }
    const f2::RowSpace code(std::move(generator));
    Rng rng(args.seed);
    for (int trial = 0; trial < args.brute_force; ++trial) {
      const SymbolPermutation perm = to_symbol_permutation(sample_blta(spec.s, rng));
      bool closed_here = true;
      for (int word = 0; word < 20 && closed_here; ++word) {
        std::vector<std::uint8_t> msg(static_cast<std::size_t>(spec.k));
        for (auto& bit : msg) bit = rng.coin() ? 1 : 0;
        const std::vector<std::uint8_t> codeword = encode(spec, msg);
        std::vector<std::uint8_t> permuted(N);
        for (std::uint32_t i = 0; i < N; ++i) permuted[perm.map[i]] = codeword[i];
        closed_here = code.contains(permuted);
      }
      if (closed_here) ++closed;
    }
    brute_ok = closed == args.brute_force;
  }
  if (args.json) {
    std::cout << report.to_json() << '\n';
  } else {
    const auto line = [](const char* name, bool pass) {
      std::cout << (pass ? "PASS" : "FAIL") << "  " << name << '\n';
    };
    line("complies with the partial order", report.order_compliant);
    line("information set is stabilized by P_s", report.stabilized);
    line("complies with the symmetric order (BLTA(s) automorphisms)", report.symmetric_compliant);
    if (args.brute_force > 0) {
      std::cout << (brute_ok ? "PASS" : "FAIL") << "  codeword closure under " << closed << "/"
                << args.brute_force << " random BLTA(s) permutations\n";
    }
    for (const auto& [member, missing] : report.order_violations) {
      std::cout << "  violation: " << member << " in I but successor " << missing << " is not\n";
    }
  }
  return (report.all_pass() && brute_ok) ? 0 : 1;
}

int cmd_orbits(int n, const std::string& s) {
  const BlockProfile profile = BlockProfile::from_string(s);
  const OrbitSystem system = all_orbits(n, profile);
  std::cout << "orbit,size,indices\n";
  for (std::size_t id = 0; id < system.orbits.size(); ++id) {
    std::cout << id << ',' << system.orbits[id].size() << ",\"{";
    for (std::size_t k = 0; k < system.orbits[id].size(); ++k) {
      if (k) std::cout << ',';
      std::cout << system.orbits[id][k];
    }
    std::cout << "}\"\n";
  }
  std::cerr << system.orbits.size() << " orbits\n";
  return 0;
}

int cmd_hasse(int n, const std::string& s, const std::string& out) {
  const BlockProfile profile = BlockProfile::from_string(s);
  const SymmetricOrder order(n, profile);
  if (out.empty()) {
    order.write_dot(std::cout);
  } else {
    std::ofstream file(out);
    if (!file) throw CLI::ValidationError("cannot write '" + out + "'");
    order.write_dot(file);
  }
  return 0;
}

struct CampaignArgs {
  std::string campaign_file;
  std::string out;
  std::string manifest;
  int workers = 1;
  std::int64_t seed_override = -1;
};

int cmd_campaign(const CampaignArgs& args, bool target_mode) {
  CampaignConfig campaign = CampaignConfig::from_json(read_file(args.campaign_file));
  if (args.seed_override >= 0) campaign.seed = static_cast<std::uint64_t>(args.seed_override);
  if (target_mode && !campaign.target_mode) {
    throw CLI::ValidationError("campaign file has no target_bler entry");
  }
  const auto run = [&](std::ostream& csv) {
    if (target_mode) {
      run_required_snr(campaign, csv, args.workers);
    } else {
      run_simulate(campaign, csv, args.workers);
    }
  };
  if (args.out.empty()) {
    run(std::cout);
  } else {
    std::ofstream csv(args.out);
    if (!csv) throw CLI::ValidationError("cannot write '" + args.out + "'");
    run(csv);
    std::cerr << "wrote " << args.out << '\n';
  }
  const std::string manifest_path =
      !args.manifest.empty() ? args.manifest
                             : (!args.out.empty() ? args.out + ".manifest.json" : std::string{});
  if (!manifest_path.empty()) {
    write_file(manifest_path, campaign_manifest(campaign) + "\n");
    std::cerr << "wrote " << manifest_path << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rate-compatible polar codes with prescribed BLTA(s) automorphisms"};
  app.require_subcommand(1);

  std::string kernel_backend;
  app.add_option("--kernels", kernel_backend, "Force a kernel backend (scalar, avx2)");

  ConstructArgs construct_args;
  auto* construct = app.add_subcommand("construct", "Design a code and emit its JSON spec");
  construct->add_option("--n", construct_args.n, "Length exponent (N = 2^n)")->required();
  construct->add_option("--s", construct_args.s, "Block profile, LSB-first, e.g. 1,1,1,3")->required();
  construct->add_option("--beta", construct_args.beta, "Expansion base in (1, 2]")->required();
  construct->add_option("--k", construct_args.k, "Requested dimension")->required();
  construct->add_option("--out", construct_args.out, "Write the spec JSON here instead of stdout");
  construct->add_option("--weights-csv", construct_args.weights_csv, "Also dump the weight table");

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Check a spec's symmetry compliance");
  verify_cmd->add_option("spec", verify_args.spec_file, "CodeSpec JSON file")->required();
  verify_cmd->add_flag("--json", verify_args.json, "Emit the full report as JSON");
  verify_cmd
      ->add_option("--brute-force", verify_args.brute_force,
                   "Also run this many random-permutation closure trials")
      ->expected(0, 1)
      ->default_str("100");
  verify_cmd->add_option("--seed", verify_args.seed, "Seed for the closure trials");

  int orbits_n = 0;
  std::string orbits_s;
  auto* orbits_cmd = app.add_subcommand("orbits", "List the P_s orbits");
  orbits_cmd->add_option("--n", orbits_n)->required();
  orbits_cmd->add_option("--s", orbits_s)->required();

  int hasse_n = 0;
  std::string hasse_s, hasse_out;
  auto* hasse_cmd = app.add_subcommand("hasse", "Emit the symmetric order as a DOT graph");
  hasse_cmd->add_option("--n", hasse_n)->required();
  hasse_cmd->add_option("--s", hasse_s)->required();
  hasse_cmd->add_option("--out", hasse_out, "DOT output file (default stdout)");

  CampaignArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "Run an SNR-grid BLER campaign");
  simulate->add_option("--campaign", sim_args.campaign_file, "Campaign JSON file")->required();
  simulate->add_option("--out", sim_args.out, "CSV output file (default stdout)");
  simulate->add_option("--manifest", sim_args.manifest, "Manifest path (default <out>.manifest.json)");
  simulate->add_option("--workers", sim_args.workers, "Worker threads; output is identical for any count");
  simulate->add_option("--seed", sim_args.seed_override, "Override the campaign seed");

  CampaignArgs snr_args;
  auto* snr = app.add_subcommand("required-snr", "Search the SNR reaching the target BLER");
  snr->add_option("--campaign", snr_args.campaign_file, "Campaign JSON file")->required();
  snr->add_option("--out", snr_args.out, "CSV output file (default stdout)");
  snr->add_option("--manifest", snr_args.manifest, "Manifest path (default <out>.manifest.json)");
  snr->add_option("--workers", snr_args.workers, "Worker threads; output is identical for any count");
  snr->add_option("--seed", snr_args.seed_override, "Override the campaign seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!kernel_backend.empty() && !polarsym::kernels::select(kernel_backend)) {
      std::cerr << "error: kernel backend '" << kernel_backend << "' is not available\n";
      return 2;
    }
    if (construct->parsed()) return cmd_construct(construct_args);
    if (verify_cmd->parsed()) return cmd_verify(verify_args);
    if (orbits_cmd->parsed()) return cmd_orbits(orbits_n, orbits_s);
    if (hasse_cmd->parsed()) return cmd_hasse(hasse_n, hasse_s, hasse_out);
    if (simulate->parsed()) return cmd_campaign(sim_args, false);
    if (snr->parsed()) return cmd_campaign(snr_args, true);
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << '\n';
    return 1;
  }
  return 0;
}
