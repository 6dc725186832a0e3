#include "revex/dep/summary.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace revex::dep {

namespace {

using evm::Opcode;
using evm::u256;

// Block-local abstract value: constant, hash-of-constant-base mapping slot,
// or unknown.
struct MappingSlot {
  u256 base;
};
using AbsValue = std::variant<std::monostate, u256, MappingSlot>;

bool is_const(const AbsValue& v) { return std::holds_alternative<u256>(v); }

class BlockSim {
 public:
  explicit BlockSim(FunctionSummary& summary) : summary_(summary) {}

  void run(const evm::BasicBlock& blk) {
    stack_.clear();
    memory_.clear();
    for (const auto& instr : blk.instructions) step(instr);
  }

 private:
  void step(const evm::Instruction& instr) {
    Opcode op = instr.opcode;
    if (evm::is_push(op)) {
      stack_.push_back(instr.immediate_word());
      return;
    }
    if (evm::is_dup(op)) {
      stack_.push_back(peek(evm::dup_index(op) - 1));
      return;
    }
    if (evm::is_swap(op)) {
      int n = evm::swap_index(op);
      AbsValue a = peek(0);
      AbsValue b = peek(n);
      set(0, b);
      set(n, a);
      return;
    }
    switch (op) {
      case Opcode::kSLoad: {
        record(peek(0), summary_.reads);
        pop(1);
        stack_.push_back(std::monostate{});
        return;
      }
      case Opcode::kSStore: {
        record(peek(0), summary_.writes);
        pop(2);
        return;
      }
      case Opcode::kMStore: {
        AbsValue off = peek(0);
        AbsValue val = peek(1);
        pop(2);
        if (is_const(off)) memory_[std::get<u256>(off)] = val;
        return;
      }
      case Opcode::kSha3: {
        AbsValue off = peek(0);
        AbsValue len = peek(1);
        pop(2);
        AbsValue result = std::monostate{};
        if (is_const(off) && is_const(len) && std::get<u256>(len) == 64) {
          auto base_it = memory_.find(std::get<u256>(off) + 32);
          if (base_it != memory_.end() && is_const(base_it->second)) {
            result = MappingSlot{std::get<u256>(base_it->second)};
          }
        }
        stack_.push_back(result);
        return;
      }
      default:
        break;
    }
    if (evm::is_call_family(op)) summary_.makes_external_call = true;
    pop(evm::stack_pops(op));
    for (std::size_t i = 0; i < evm::stack_pushes(op); ++i) stack_.push_back(std::monostate{});
  }

  void record(const AbsValue& slot, std::set<SlotDesc>& into) {
    if (is_const(slot)) {
      into.insert(SlotDesc::slot(std::get<u256>(slot)));
    } else if (std::holds_alternative<MappingSlot>(slot)) {
      into.insert(SlotDesc::mapping_base(std::get<MappingSlot>(slot).base));
    } else {
      summary_.incomplete = true;
    }
  }

  AbsValue peek(int n) const {
    if (n < 0 || static_cast<std::size_t>(n) >= stack_.size()) return std::monostate{};
    return stack_[stack_.size() - 1 - static_cast<std::size_t>(n)];
  }
  void set(int n, AbsValue v) {
    if (n >= 0 && static_cast<std::size_t>(n) < stack_.size()) {
      stack_[stack_.size() - 1 - static_cast<std::size_t>(n)] = std::move(v);
    }
  }
  void pop(std::size_t n) {
    for (std::size_t i = 0; i < n && !stack_.empty(); ++i) stack_.pop_back();
  }

  FunctionSummary& summary_;
  std::vector<AbsValue> stack_;
  std::map<u256, AbsValue> memory_;
};

}  // namespace

std::set<SlotDesc> FunctionSummary::touched() const {
  std::set<SlotDesc> all = reads;
  all.insert(writes.begin(), writes.end());
  return all;
}

SummaryMap extract_rw_sets(const evm::Cfg& cfg, const ingest::ContractBundle& bundle) {
  SummaryMap summaries;
  for (const auto& [sel, entry_block] : cfg.function_entries) {
    FunctionSummary summary;
    summary.selector = sel;
    BlockSim sim(summary);
    for (int id : cfg.reachable_from(entry_block)) {
      sim.run(cfg.block(id));
    }
    summaries[sel] = std::move(summary);
  }
  if (bundle.declared_functions) {
    for (const auto& fn : *bundle.declared_functions) {
      FunctionSummary& summary = summaries[fn.selector];
      summary.selector = fn.selector;
      summary.reads.insert(fn.state_vars.begin(), fn.state_vars.end());
    }
  }
  return summaries;
}

}  // namespace revex::dep
