#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "revex/evm/cfg.hpp"

namespace revex::prune {

// CFG with every jump edge weighted by the successor block's count of
// state-touching instructions (SSTORE, SLOAD, call family). Edges into
// REVERT/INVALID blocks are pruned, and a zero-weight edge is pruned whenever
// a sibling edge has non-zero weight.
struct SmcCfg {
  const evm::Cfg* base = nullptr;
  // (block id, successor first_pc) -> key-instruction count of the successor.
  std::map<std::pair<int, std::uint64_t>, std::uint64_t> edge_weight;
  std::set<std::pair<int, int>> pruned_edges;  // (block id, successor id)
  bool pruning_enabled = true;

  bool is_pruned(int from, int to) const { return pruned_edges.count({from, to}) != 0; }
};

// Key-instruction count and first pc of a block.
std::pair<std::uint64_t, std::uint64_t> count_weight(const evm::BasicBlock& block);

SmcCfg build_smc_cfg(const evm::Cfg& cfg, bool pruning_enabled = true);

// Surviving successors of a block, heaviest edge first (ties by first_pc).
// When every successor has zero weight and none rolls back, all are kept in
// first_pc order. With pruning disabled, returns the base successors as-is.
std::vector<int> next_successors(const SmcCfg& smc, int block_id);

std::string smc_to_dot(const SmcCfg& smc);

}  // namespace revex::prune
