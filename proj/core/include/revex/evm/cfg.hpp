#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "revex/evm/instruction.hpp"

namespace revex::evm {

enum class TerminatorKind {
  kJump,
  kJumpI,
  kFallthrough,
  kHalt,        // STOP or running off the end of code
  kRevert,
  kInvalid,
  kCallReturn,  // RETURN back to the caller
};

struct BasicBlock {
  int id = 0;
  std::uint64_t first_pc = 0;
  std::vector<Instruction> instructions;
  std::vector<int> successors;
  TerminatorKind terminator = TerminatorKind::kHalt;
  // Set when a JUMP/JUMPI target could not be resolved to a block-local
  // constant; such blocks get no successors and poison verdicts to unknown.
  bool unresolved_jump = false;

  bool contains_opcode(Opcode op) const;
  std::uint64_t end_pc() const {
    return instructions.empty() ? first_pc
                                : instructions.back().pc + instructions.back().encoded_size();
  }
};

struct Cfg {
  std::map<int, BasicBlock> blocks;  // id -> block, ids in pc order
  int entry = 0;
  std::map<std::uint32_t, int> function_entries;  // 4-byte selector -> block id

  const BasicBlock& block(int id) const;
  // Block whose pc range contains `pc`; -1 if none.
  int block_of_pc(std::uint64_t pc) const;
  // Block starting exactly at `first_pc`; -1 if none.
  int block_at(std::uint64_t first_pc) const;
  // Blocks reachable from `from` following successor edges (includes `from`).
  std::vector<int> reachable_from(int from) const;
  bool any_unresolved(const std::vector<int>& block_ids) const;
};

// Cuts maximal straight-line runs at control transfers and JUMPDESTs,
// resolves constant jump targets, and recognizes the dispatcher idiom
// (PUSH4 selector / EQ / JUMPI) to populate function_entries.
//
// Throws CfgError for a constant jump target that is not a JUMPDEST.
Cfg build_cfg(const std::vector<Instruction>& instrs);

}  // namespace revex::evm
