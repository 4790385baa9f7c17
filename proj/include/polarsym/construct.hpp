#pragma once
// Polar code construction: the plain beta-expansion, its block-symmetric
// variant, rate-compatible design and compliance verification.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "polarsym/bitindex.hpp"
#include "polarsym/symmetry.hpp"

namespace polarsym {

// Weights within this absolute tolerance count as tied; analytically equal
// orbit weights must never be split by floating-point evaluation.
inline constexpr double kWeightTieEps = 1e-9;

struct CodeSpec {
  int n = 0;
  int requested_k = 0;
  int k = 0;  // |info_set|; may exceed requested_k when a tie spans the cut
  BlockProfile s{std::vector<int>{1}};
  double beta = 2.0;
  std::vector<std::uint32_t> info_set;  // sorted ascending

  std::uint32_t block_length() const { return 1u << n; }
  double rate() const { return static_cast<double>(k) / static_cast<double>(block_length()); }
  std::string id() const;  // e.g. "N64_K32_s1-1-1-3_b1.1"

  std::string to_json() const;
  static CodeSpec from_json(const std::string& text);
};

// w_p(i) = sum of beta^l over set digits l; beta in (1, 2].
double beta_weight(BitIndex i, double beta);

// Per-digit values beta_{s,l}: the mean of beta^l' over the digits l' sharing
// l's block. Length equals the total digit count of s.
std::vector<double> symmetric_beta_values(const BlockProfile& s, double beta);

// w_{p,s}(i) = sum of beta_{s,l} over set digits l.
double symmetric_weight(BitIndex i, const BlockProfile& s, double beta);

// Weight table for export and inspection.
struct WeightTable {
  std::vector<double> digit_values;     // beta_{s,l}
  std::vector<double> weights;          // per index
  std::vector<std::int32_t> orbit_of;   // per index
};
WeightTable weight_table(int n, const BlockProfile& s, double beta);
void write_weight_csv(std::ostream& out, int n, const BlockProfile& s, double beta);

// Selects the K indices of largest symmetric weight; a tie at the threshold
// pulls in every index within kWeightTieEps of it, so the actual dimension
// may exceed K and the result is always a union of whole orbits.
CodeSpec design(int n, const BlockProfile& s, double beta, int K);

// All dimensions reachable by design() for this (n, s, beta): cumulative
// orbit sizes in decreasing weight order with ties merged.
std::vector<int> achievable_dimensions(int n, const BlockProfile& s, double beta);

struct OrbitMembership {
  std::vector<std::uint32_t> indices;
  std::uint64_t selected = 0;  // members inside the information set
};

struct VerifyReport {
  bool order_compliant = false;
  bool stabilized = false;
  bool symmetric_compliant = false;
  std::vector<OrbitMembership> orbit_table;
  // Sample violations (capped): cover edges leaving the information set.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> order_violations;

  bool all_pass() const { return order_compliant && stabilized && symmetric_compliant; }
  std::string to_json() const;
};

VerifyReport verify(const CodeSpec& spec);

}  // namespace polarsym
