#include "polarsym/order.hpp"

#include <algorithm>
#include <bit>
#include <ostream>
#include <stdexcept>
#include <unordered_set>

namespace polarsym {

std::vector<std::uint32_t> direct_successors(BitIndex i) {
  std::vector<std::uint32_t> successors;
  const std::uint32_t v = i.value;
  for (int l = 0; l + 1 < i.n; ++l) {
    const bool one_then_zero = ((v >> l) & 1u) && !((v >> (l + 1)) & 1u);
    if (one_then_zero) successors.push_back(v ^ (1u << l) ^ (1u << (l + 1)));
  }
  for (int l = 0; l < i.n; ++l) {
    if (!((v >> l) & 1u)) successors.push_back(v | (1u << l));
  }
  std::sort(successors.begin(), successors.end());
  return successors;
}

bool leq(BitIndex i, BitIndex j) {
  if (i.n != j.n) throw std::invalid_argument("leq: dimension mismatch");
  if (i.value == j.value) return true;
  // Both rules strictly increase the integer value and never decrease the
  // Hamming weight.
  if (i.value > j.value) return false;
  if (std::popcount(i.value) > std::popcount(j.value)) return false;
  std::vector<std::uint32_t> frontier{i.value};
  std::unordered_set<std::uint32_t> visited{i.value};
  while (!frontier.empty()) {
    const std::uint32_t current = frontier.back();
    frontier.pop_back();
    for (std::uint32_t next : direct_successors(BitIndex{current, i.n})) {
      if (next == j.value) return true;
      if (next > j.value || !visited.insert(next).second) continue;
      frontier.push_back(next);
    }
  }
  return false;
}

bool complies(const std::vector<std::uint32_t>& info_set, int n) {
  std::vector<bool> member(std::size_t{1} << n, false);
  for (std::uint32_t i : info_set) member[i] = true;
  for (std::uint32_t i : info_set) {
    for (std::uint32_t successor : direct_successors(BitIndex{i, n})) {
      if (!member[successor]) return false;
    }
  }
  return true;
}

bool orbit_leq(const std::vector<std::uint32_t>& orbit_a,
               const std::vector<std::uint32_t>& orbit_b, int n) {
  for (std::uint32_t a : orbit_a) {
    for (std::uint32_t b : orbit_b) {
      if (leq(BitIndex{a, n}, BitIndex{b, n})) return true;
    }
  }
  return false;
}

bool complies_symmetric(const std::vector<std::uint32_t>& info_set, const BlockProfile& s) {
  // Union of whole orbits + upward closure under the plain order is
  // equivalent to upward closure of the selected orbits under the orbit
  // order.
  return is_stabilized(info_set, s) && complies(info_set, s.total_digits());
}

SymmetricOrder::SymmetricOrder(int n, const BlockProfile& s) : system_(all_orbits(n, s)) {
  const auto orbit_total = static_cast<std::size_t>(orbit_count());
  if (orbit_total > 20000) {
    throw std::invalid_argument("SymmetricOrder: too many orbits for explicit construction");
  }
  // Raw inter-orbit edges from the per-index cover edges.
  std::vector<std::unordered_set<int>> edge_sets(orbit_total);
  const std::uint32_t N = 1u << n;
  for (std::uint32_t i = 0; i < N; ++i) {
    const int from = system_.orbit_of[i];
    for (std::uint32_t successor : direct_successors(BitIndex{i, n})) {
      const int to = system_.orbit_of[successor];
      if (to != from) edge_sets[static_cast<std::size_t>(from)].insert(to);
    }
  }
  successors_.resize(orbit_total);
  for (std::size_t a = 0; a < orbit_total; ++a) {
    successors_[a].assign(edge_sets[a].begin(), edge_sets[a].end());
    std::sort(successors_[a].begin(), successors_[a].end());
  }
  // Transitive closure, then reduction to cover edges.
  const std::size_t words = (orbit_total + 63) / 64;
  reach_.assign(orbit_total, std::vector<std::uint64_t>(words, 0));
  // Process in an order where all successors are handled first; successors
  // always have larger smallest members, so descending order works.
  std::vector<int> order(orbit_total);
  for (std::size_t a = 0; a < orbit_total; ++a) order[a] = static_cast<int>(a);
  std::sort(order.begin(), order.end(), [this](int a, int b) {
    return system_.orbits[static_cast<std::size_t>(a)].front() >
           system_.orbits[static_cast<std::size_t>(b)].front();
  });
  for (int a : order) {
    auto& row = reach_[static_cast<std::size_t>(a)];
    for (int b : successors_[static_cast<std::size_t>(a)]) {
      row[static_cast<std::size_t>(b) / 64] |= std::uint64_t{1} << (b % 64);
      const auto& successor_row = reach_[static_cast<std::size_t>(b)];
      for (std::size_t w = 0; w < words; ++w) row[w] |= successor_row[w];
    }
  }
  for (std::size_t a = 0; a < orbit_total; ++a) {
    for (int b : successors_[a]) {
      bool is_cover = true;
      for (int mid : successors_[a]) {
        if (mid != b && reachable(mid, b)) {
          is_cover = false;
          break;
        }
      }
      if (is_cover) covers_.emplace_back(static_cast<int>(a), b);
    }
  }
  std::sort(covers_.begin(), covers_.end());
}

bool SymmetricOrder::reachable(int a, int b) const {
  return (reach_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b) / 64] >> (b % 64)) & 1u;
}

bool SymmetricOrder::leq(int orbit_a, int orbit_b) const {
  return orbit_a == orbit_b || reachable(orbit_a, orbit_b);
}

void SymmetricOrder::write_dot(std::ostream& out) const {
  out << "digraph hasse {\n  rankdir=LR;\n  node [shape=box];\n";
  for (std::size_t a = 0; a < system_.orbits.size(); ++a) {
    out << "  n" << a << " [label=\"{";
    const auto& members = system_.orbits[a];
    for (std::size_t k = 0; k < members.size(); ++k) {
      if (k > 0) out << ",";
      out << members[k];
    }
    out << "}\"];\n";
  }
  for (const auto& [from, to] : covers_) {
    out << "  n" << from << " -> n" << to << ";\n";
  }
  out << "}\n";
}

}  // namespace polarsym
