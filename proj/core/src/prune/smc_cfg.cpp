#include "revex/prune/smc_cfg.hpp"

#include <algorithm>
#include <sstream>

namespace revex::prune {

using evm::BasicBlock;
using evm::Opcode;

std::pair<std::uint64_t, std::uint64_t> count_weight(const BasicBlock& block) {
  std::uint64_t weight = 0;
  for (const auto& instr : block.instructions) {
    if (evm::is_key_instruction(instr.opcode)) ++weight;
  }
  return {weight, block.first_pc};
}

namespace {

bool rolls_back(const BasicBlock& block) {
  return block.contains_opcode(Opcode::kRevert) || block.contains_opcode(Opcode::kInvalid);
}

}  // namespace

SmcCfg build_smc_cfg(const evm::Cfg& cfg, bool pruning_enabled) {
  SmcCfg smc;
  smc.base = &cfg;
  smc.pruning_enabled = pruning_enabled;

  for (const auto& [id, block] : cfg.blocks) {
    // First pass: weigh every edge, prune edges into rollback blocks.
    bool any_surviving_nonzero = false;
    for (int succ_id : block.successors) {
      const BasicBlock& succ = cfg.block(succ_id);
      auto [weight, first_pc] = count_weight(succ);
      smc.edge_weight[{id, first_pc}] = weight;
      if (rolls_back(succ)) {
        smc.pruned_edges.insert({id, succ_id});
      } else if (weight > 0) {
        any_surviving_nonzero = true;
      }
    }
    // Second pass: drop zero-weight edges only when a surviving sibling has
    // weight; if every surviving successor is weightless, keep them all.
    if (!any_surviving_nonzero) continue;
    for (int succ_id : block.successors) {
      const BasicBlock& succ = cfg.block(succ_id);
      if (rolls_back(succ)) continue;
      if (count_weight(succ).first == 0) smc.pruned_edges.insert({id, succ_id});
    }
  }
  return smc;
}

std::vector<int> next_successors(const SmcCfg& smc, int block_id) {
  const BasicBlock& block = smc.base->block(block_id);
  if (!smc.pruning_enabled) return block.successors;

  std::vector<int> out;
  for (int succ_id : block.successors) {
    if (!smc.is_pruned(block_id, succ_id)) out.push_back(succ_id);
  }
  std::stable_sort(out.begin(), out.end(), [&](int a, int b) {
    auto wa = smc.edge_weight.at({block_id, smc.base->block(a).first_pc});
    auto wb = smc.edge_weight.at({block_id, smc.base->block(b).first_pc});
    if (wa != wb) return wa > wb;
    return smc.base->block(a).first_pc < smc.base->block(b).first_pc;
  });
  return out;
}

std::string smc_to_dot(const SmcCfg& smc) {
  std::ostringstream os;
  os << "digraph smc_cfg {\n  node [shape=box];\n";
  for (const auto& [id, block] : smc.base->blocks) {
    os << "  b" << id << " [label=\"#" << id << " @" << block.first_pc;
    if (!block.instructions.empty()) {
      os << "\\n" << evm::opcode_name(block.instructions.front().opcode) << "..."
         << evm::opcode_name(block.instructions.back().opcode);
    }
    os << "\"];\n";
  }
  for (const auto& [id, block] : smc.base->blocks) {
    for (int succ : block.successors) {
      auto weight = smc.edge_weight.at({id, smc.base->block(succ).first_pc});
      bool pruned = smc.is_pruned(id, succ);
      os << "  b" << id << " -> b" << succ << " [label=\"" << weight << "\""
         << (pruned ? ", style=dashed" : "") << "];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace revex::prune
