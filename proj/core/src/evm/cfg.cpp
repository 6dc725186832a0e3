#include "revex/evm/cfg.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <set>

#include "revex/errors.hpp"

namespace revex::evm {

bool BasicBlock::contains_opcode(Opcode op) const {
  return std::any_of(instructions.begin(), instructions.end(),
                     [op](const Instruction& i) { return i.opcode == op; });
}

const BasicBlock& Cfg::block(int id) const {
  auto it = blocks.find(id);
  if (it == blocks.end()) throw CfgError("unknown block id " + std::to_string(id));
  return it->second;
}

int Cfg::block_of_pc(std::uint64_t pc) const {
  for (const auto& [id, blk] : blocks) {
    if (!blk.instructions.empty() && pc >= blk.first_pc && pc < blk.end_pc()) return id;
  }
  return -1;
}

int Cfg::block_at(std::uint64_t first_pc) const {
  for (const auto& [id, blk] : blocks) {
    if (blk.first_pc == first_pc) return id;
  }
  return -1;
}

std::vector<int> Cfg::reachable_from(int from) const {
  std::set<int> seen;
  std::deque<int> work{from};
  while (!work.empty()) {
    int id = work.front();
    work.pop_front();
    if (!seen.insert(id).second) continue;
    for (int s : block(id).successors) work.push_back(s);
  }
  return {seen.begin(), seen.end()};
}

bool Cfg::any_unresolved(const std::vector<int>& block_ids) const {
  return std::any_of(block_ids.begin(), block_ids.end(),
                     [this](int id) { return block(id).unresolved_jump; });
}

namespace {

// Block-local constant tracking, enough to resolve pushed jump targets.
class ConstStack {
 public:
  void apply(const Instruction& instr) {
    Opcode op = instr.opcode;
    if (is_push(op)) {
      stack_.push_back(instr.immediate_word());
      return;
    }
    if (is_dup(op)) {
      int n = dup_index(op);
      stack_.push_back(peek(n - 1));
      return;
    }
    if (is_swap(op)) {
      int n = swap_index(op);
      auto a = peek(0);
      auto b = peek(n);
      set(0, b);
      set(n, a);
      return;
    }
    std::size_t pops = stack_pops(op);
    std::size_t pushes = stack_pushes(op);
    for (std::size_t i = 0; i < pops; ++i) pop();
    for (std::size_t i = 0; i < pushes; ++i) stack_.push_back(std::nullopt);
  }

  // Value at depth n from the top (0 = top); nullopt when unknown or deeper
  // than the values pushed in this block.
  std::optional<u256> peek(int n) const {
    if (n < 0 || static_cast<std::size_t>(n) >= stack_.size()) return std::nullopt;
    return stack_[stack_.size() - 1 - static_cast<std::size_t>(n)];
  }

 private:
  void pop() {
    if (!stack_.empty()) stack_.pop_back();
  }
  void set(int n, std::optional<u256> v) {
    if (n >= 0 && static_cast<std::size_t>(n) < stack_.size()) {
      stack_[stack_.size() - 1 - static_cast<std::size_t>(n)] = v;
    }
  }
  std::vector<std::optional<u256>> stack_;
};

// Constant on top of the abstract stack just before the block's terminator.
std::optional<u256> jump_target_constant(const BasicBlock& blk) {
  ConstStack sim;
  for (std::size_t i = 0; i + 1 < blk.instructions.size(); ++i) sim.apply(blk.instructions[i]);
  return sim.peek(0);
}

}  // namespace

Cfg build_cfg(const std::vector<Instruction>& instrs) {
  Cfg cfg;
  if (instrs.empty()) {
    BasicBlock blk;
    blk.id = 0;
    cfg.blocks[0] = blk;
    cfg.entry = 0;
    return cfg;
  }

  // Leaders: first instruction, every JUMPDEST, every instruction after a
  // terminator.
  std::set<std::uint64_t> leaders{instrs.front().pc};
  for (std::size_t i = 0; i < instrs.size(); ++i) {
    if (instrs[i].opcode == Opcode::kJumpDest) leaders.insert(instrs[i].pc);
    if (is_terminator(instrs[i].opcode) && i + 1 < instrs.size()) leaders.insert(instrs[i + 1].pc);
  }

  std::map<std::uint64_t, int> id_by_first_pc;
  int next_id = 0;
  std::vector<BasicBlock> order;
  BasicBlock current;
  bool open = false;
  for (const auto& instr : instrs) {
    if (leaders.count(instr.pc) && open) {
      order.push_back(std::move(current));
      current = BasicBlock{};
      open = false;
    }
    if (!open) {
      current.id = next_id++;
      current.first_pc = instr.pc;
      id_by_first_pc[instr.pc] = current.id;
      open = true;
    }
    current.instructions.push_back(instr);
    if (is_terminator(instr.opcode)) {
      order.push_back(std::move(current));
      current = BasicBlock{};
      open = false;
    }
  }
  if (open) order.push_back(std::move(current));

  // Terminators and successors.
  for (std::size_t i = 0; i < order.size(); ++i) {
    BasicBlock& blk = order[i];
    const Instruction& last = blk.instructions.back();
    auto next_block_id = [&]() -> std::optional<int> {
      if (i + 1 < order.size()) return order[i + 1].id;
      return std::nullopt;
    };

    auto resolve_target = [&](const Instruction& at) -> std::optional<int> {
      auto target = jump_target_constant(blk);
      if (!target) return std::nullopt;
      if (*target > kMaxCodeSize) {
        throw CfgError("jump to out-of-range target at pc " + std::to_string(at.pc));
      }
      auto dest_pc = static_cast<std::uint64_t>(*target);
      auto it = id_by_first_pc.find(dest_pc);
      if (it == id_by_first_pc.end() ||
          order[static_cast<std::size_t>(it->second)].instructions.front().opcode != Opcode::kJumpDest) {
        throw CfgError("jump to non-JUMPDEST target at pc " + std::to_string(at.pc));
      }
      return it->second;
    };

    switch (last.opcode) {
      case Opcode::kJump: {
        blk.terminator = TerminatorKind::kJump;
        if (auto t = resolve_target(last)) {
          blk.successors = {*t};
        } else {
          blk.unresolved_jump = true;
        }
        break;
      }
      case Opcode::kJumpI: {
        blk.terminator = TerminatorKind::kJumpI;
        auto taken = resolve_target(last);
        auto fall = next_block_id();
        if (taken && fall) {
          blk.successors = {*taken, *fall};
        } else {
          blk.unresolved_jump = true;
        }
        break;
      }
      case Opcode::kStop:
        blk.terminator = TerminatorKind::kHalt;
        break;
      case Opcode::kReturn:
        blk.terminator = TerminatorKind::kCallReturn;
        break;
      case Opcode::kRevert:
        blk.terminator = TerminatorKind::kRevert;
        break;
      case Opcode::kInvalid:
        blk.terminator = TerminatorKind::kInvalid;
        break;
      default: {
        // Cut by a JUMPDEST leader or end of code.
        if (auto fall = next_block_id()) {
          blk.terminator = TerminatorKind::kFallthrough;
          blk.successors = {*fall};
        } else {
          blk.terminator = TerminatorKind::kHalt;
        }
        break;
      }
    }
  }

  for (auto& blk : order) cfg.blocks[blk.id] = std::move(blk);
  cfg.entry = 0;

  // Dispatcher idiom: PUSH4 selector ... EQ ... JUMPI with a resolved taken
  // target marks a function entry.
  for (const auto& [id, blk] : cfg.blocks) {
    if (blk.terminator != TerminatorKind::kJumpI || blk.successors.size() != 2) continue;
    std::optional<std::uint32_t> sel;
    bool eq_after_push4 = false;
    for (const auto& instr : blk.instructions) {
      if (is_push(instr.opcode)) {
        if (push_width(instr.opcode) == 4) {
          sel = static_cast<std::uint32_t>(instr.immediate_word());
          eq_after_push4 = false;
        }
      } else if (instr.opcode == Opcode::kEq && sel) {
        eq_after_push4 = true;
      }
    }
    if (sel && eq_after_push4) cfg.function_entries[*sel] = blk.successors.front();
  }

  // Every function entry must be reachable from the contract entry.
  auto reachable = cfg.reachable_from(cfg.entry);
  std::set<int> reach(reachable.begin(), reachable.end());
  for (const auto& [sel, id] : cfg.function_entries) {
    if (!reach.count(id)) {
      throw CfgError("function entry block " + std::to_string(id) + " unreachable from entry");
    }
  }
  return cfg;
}

}  // namespace revex::evm
