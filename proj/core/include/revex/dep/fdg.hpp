#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "revex/dep/targets.hpp"

namespace revex::dep {

// Function dependency graph: nodes are target functions, an edge's weight is
// the number of state variables the two functions share, a node's weight is
// the sum of its incident edge weights.
struct Fdg {
  std::set<std::uint32_t> nodes;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> edges;  // first < second
  std::map<std::uint32_t, std::uint64_t> node_weight;

  std::uint64_t edge_weight(std::uint32_t a, std::uint32_t b) const;
};

Fdg build_fdg(const TargetSets& targets, const SummaryMap& summaries);

// Nodes in ascending node-weight order, ties broken by selector value.
std::vector<std::uint32_t> function_sequence(const Fdg& fdg);

std::string fdg_to_dot(const Fdg& fdg);

}  // namespace revex::dep
