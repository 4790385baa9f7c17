#include "polarsym/construct.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "polarsym/order.hpp"

namespace polarsym {

namespace {

void check_beta(double beta) {
  if (!(beta > 1.0) || !(beta <= 2.0)) {
    throw std::invalid_argument("beta must lie in (1, 2], got " + std::to_string(beta));
  }
}

std::string format_beta(double beta) {
  std::ostringstream out;
  out << beta;
  return out.str();
}

}  // namespace

std::string CodeSpec::id() const {
  std::string profile = s.to_string();
  std::replace(profile.begin(), profile.end(), ',', '-');
  return "N" + std::to_string(block_length()) + "_K" + std::to_string(k) + "_s" + profile +
         "_b" + format_beta(beta);
}

std::string CodeSpec::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["requested_k"] = requested_k;
  j["k"] = k;
  j["s"] = s.sizes();
  j["beta"] = beta;
  j["info_set"] = info_set;
  return j.dump(2);
}

CodeSpec CodeSpec::from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  CodeSpec spec;
  spec.n = j.at("n").get<int>();
  spec.requested_k = j.at("requested_k").get<int>();
  spec.k = j.at("k").get<int>();
  spec.s = BlockProfile(j.at("s").get<std::vector<int>>());
  spec.beta = j.at("beta").get<double>();
  spec.info_set = j.at("info_set").get<std::vector<std::uint32_t>>();
  std::sort(spec.info_set.begin(), spec.info_set.end());
  if (spec.k != static_cast<int>(spec.info_set.size())) {
    throw std::invalid_argument("CodeSpec: k does not match |info_set|");
  }
  if (spec.s.total_digits() != spec.n) {
    throw std::invalid_argument("CodeSpec: block profile does not partition n digits");
  }
  for (std::uint32_t i : spec.info_set) {
    if (i >= spec.block_length()) throw std::invalid_argument("CodeSpec: info index out of range");
  }
  return spec;
}

double beta_weight(BitIndex i, double beta) {
  check_beta(beta);
  double weight = 0.0;
  for (int l = 0; l < i.n; ++l) {
    if ((i.value >> l) & 1u) weight += std::pow(beta, l);
  }
  return weight;
}

std::vector<double> symmetric_beta_values(const BlockProfile& s, double beta) {
  check_beta(beta);
  const int n = s.total_digits();
  std::vector<double> values(static_cast<std::size_t>(n));
  for (int j = 0; j < s.block_count(); ++j) {
    double sum = 0.0;
    for (int l = s.start(j); l < s.start(j) + s.size(j); ++l) sum += std::pow(beta, l);
    const double mean = sum / s.size(j);
    for (int l = s.start(j); l < s.start(j) + s.size(j); ++l) {
      values[static_cast<std::size_t>(l)] = mean;
    }
  }
  return values;
}

double symmetric_weight(BitIndex i, const BlockProfile& s, double beta) {
  if (s.total_digits() != i.n) {
    throw std::invalid_argument("symmetric_weight: profile does not match n");
  }
  const auto values = symmetric_beta_values(s, beta);
  double weight = 0.0;
  for (int l = 0; l < i.n; ++l) {
    if ((i.value >> l) & 1u) weight += values[static_cast<std::size_t>(l)];
  }
  return weight;
}

WeightTable weight_table(int n, const BlockProfile& s, double beta) {
  if (s.total_digits() != n) throw std::invalid_argument("weight_table: profile does not match n");
  WeightTable table;
  table.digit_values = symmetric_beta_values(s, beta);
  const std::uint32_t N = 1u << n;
  table.weights.resize(N);
  for (std::uint32_t i = 0; i < N; ++i) {
    double weight = 0.0;
    for (int l = 0; l < n; ++l) {
      if ((i >> l) & 1u) weight += table.digit_values[static_cast<std::size_t>(l)];
    }
    table.weights[i] = weight;
  }
  table.orbit_of = all_orbits(n, s).orbit_of;
  return table;
}

void write_weight_csv(std::ostream& out, int n, const BlockProfile& s, double beta) {
  const WeightTable table = weight_table(n, s, beta);
  out << "index,binary_lsb_first,orbit,weight\n";
  const std::uint32_t N = 1u << n;
  for (std::uint32_t i = 0; i < N; ++i) {
    std::string bits(static_cast<std::size_t>(n), '0');
    for (int l = 0; l < n; ++l) {
      if ((i >> l) & 1u) bits[static_cast<std::size_t>(l)] = '1';
    }
    out << i << ',' << bits << ',' << table.orbit_of[i] << ',' << table.weights[i] << '\n';
  }
}

CodeSpec design(int n, const BlockProfile& s, double beta, int K) {
  check_beta(beta);
  if (s.total_digits() != n) throw std::invalid_argument("design: profile does not partition n digits");
  const std::uint32_t N = 1u << n;
  if (K < 1 || static_cast<std::uint32_t>(K) > N) {
    throw std::invalid_argument("design: K must lie in [1, 2^n], got " + std::to_string(K));
  }
  const auto values = symmetric_beta_values(s, beta);
  std::vector<double> weights(N);
  for (std::uint32_t i = 0; i < N; ++i) {
    double weight = 0.0;
    for (int l = 0; l < n; ++l) {
      if ((i >> l) & 1u) weight += values[static_cast<std::size_t>(l)];
    }
    weights[i] = weight;
  }
  std::vector<std::uint32_t> by_weight(N);
  std::iota(by_weight.begin(), by_weight.end(), 0u);
  std::sort(by_weight.begin(), by_weight.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (weights[a] != weights[b]) return weights[a] > weights[b];
    return a < b;
  });
  const double threshold = weights[by_weight[static_cast<std::size_t>(K - 1)]];
  CodeSpec spec;
  spec.n = n;
  spec.requested_k = K;
  spec.s = s;
  spec.beta = beta;
  for (std::uint32_t i = 0; i < N; ++i) {
    if (weights[i] >= threshold - kWeightTieEps) spec.info_set.push_back(i);
  }
  spec.k = static_cast<int>(spec.info_set.size());
  return spec;
}

std::vector<int> achievable_dimensions(int n, const BlockProfile& s, double beta) {
  check_beta(beta);
  if (s.total_digits() != n) {
    throw std::invalid_argument("achievable_dimensions: profile does not partition n digits");
  }
  const OrbitSystem system = all_orbits(n, s);
  struct Group {
    double weight;
    std::size_t size;
  };
  std::vector<Group> groups;
  groups.reserve(system.orbits.size());
  for (const auto& members : system.orbits) {
    groups.push_back({symmetric_weight(BitIndex{members.front(), n}, s, beta), members.size()});
  }
  std::sort(groups.begin(), groups.end(),
            [](const Group& a, const Group& b) { return a.weight > b.weight; });
  std::vector<int> dimensions;
  std::size_t total = 0;
  std::size_t g = 0;
  while (g < groups.size()) {
    // Merge the run of orbits tied with this one.
    std::size_t end = g + 1;
    while (end < groups.size() && groups[end - 1].weight - groups[end].weight <= kWeightTieEps) {
      ++end;
    }
    for (; g < end; ++g) total += groups[g].size;
    dimensions.push_back(static_cast<int>(total));
  }
  return dimensions;
}

VerifyReport verify(const CodeSpec& spec) {
  VerifyReport report;
  report.order_compliant = complies(spec.info_set, spec.n);
  report.stabilized = is_stabilized(spec.info_set, spec.s);
  report.symmetric_compliant = report.order_compliant && report.stabilized;

  std::vector<bool> member(spec.block_length(), false);
  for (std::uint32_t i : spec.info_set) member[i] = true;
  const OrbitSystem system = all_orbits(spec.n, spec.s);
  report.orbit_table.reserve(system.orbits.size());
  for (const auto& indices : system.orbits) {
    OrbitMembership row;
    row.indices = indices;
    for (std::uint32_t i : indices) {
      if (member[i]) ++row.selected;
    }
    report.orbit_table.push_back(std::move(row));
  }
  constexpr std::size_t kMaxViolations = 32;
  for (std::uint32_t i : spec.info_set) {
    for (std::uint32_t successor : direct_successors(BitIndex{i, spec.n})) {
      if (!member[successor]) {
        report.order_violations.emplace_back(i, successor);
        if (report.order_violations.size() >= kMaxViolations) return report;
      }
    }
  }
  return report;
}

std::string VerifyReport::to_json() const {
  nlohmann::json j;
  j["complies_partial_order"] = order_compliant;
  j["is_stabilized"] = stabilized;
  j["complies_symmetric"] = symmetric_compliant;
  nlohmann::json table = nlohmann::json::array();
  for (const auto& row : orbit_table) {
    table.push_back({{"indices", row.indices},
                     {"size", row.indices.size()},
                     {"selected", row.selected}});
  }
  j["orbits"] = std::move(table);
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& [from, to] : order_violations) {
    violations.push_back({{"member", from}, {"missing_successor", to}});
  }
  j["order_violations"] = std::move(violations);
  return j.dump(2);
}

}  // namespace polarsym
