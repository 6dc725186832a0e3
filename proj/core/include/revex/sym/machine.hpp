#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "revex/ingest/bundle.hpp"
#include "revex/prune/smc_cfg.hpp"
#include "revex/sym/expr.hpp"
#include "revex/sym/store.hpp"

namespace revex::sym {

enum class CallKind { kCall, kCallCode, kDelegateCall, kStaticCall };
std::string call_kind_name(CallKind kind);

struct TraceEvent {
  enum class Kind {
    kTxBegin,
    kSLoad,
    kSStore,
    kBranch,
    kCallBegin,
    kCallEnd,
    kReenterBegin,
    kReenterEnd,
    kHalt,
    kRevert,
  };
  Kind kind = Kind::kHalt;
  std::string context;   // storage context / executing contract
  std::string slot;      // canonical slot key for storage events
  SymWord word;          // stored/loaded value, call target, branch condition
  SymWord value;         // call value
  CallKind call_kind = CallKind::kCall;
  bool symbolic_target = false;
  bool symbolic_branch = false;
  bool reverted = false;
  std::set<Taint> guard_taint;  // kBranch: slots the condition derives from
  std::uint64_t pc = 0;
  int frame_depth = 0;
  std::uint32_t selector = 0;   // kTxBegin / kReenterBegin
  std::uint64_t ordinal = 0;    // attacker-call ordinal for call events
};

// Debug rendering, one event per line: `SLOAD c@slot`, `SSTORE c@slot`,
// `CALL kind target value`, `HALT` / `REVERT`.
std::string trace_to_string(const std::vector<TraceEvent>& trace);

// Path constraint: boolean word (comparison or iszero root) that must be
// non-zero, plus the program point that introduced it.
struct Constraint {
  SymWord word;
  std::string contract_id;
  std::uint64_t pc = 0;
};

struct Msg {
  SymWord sender;
  SymWord value;
  std::map<std::uint64_t, SymWord> calldata;  // byte offset -> word
  SymWord calldata_size;
};

struct Frame {
  std::string exec_contract;    // whose code runs
  std::string storage_context;  // GOT partition written by SSTORE
  Msg msg;
  std::vector<SymWord> stack;
  std::map<std::uint64_t, SymWord> memory;
  std::uint64_t pc = 0;
  bool is_static = false;
  bool is_reenter = false;
  // Frames entered from a transaction boundary or the adversary get fresh
  // symbols for unseeded calldata reads; concrete callee frames read zero.
  bool synthetic_calldata = false;
  std::string sym_prefix;
  // Caller-side return plumbing.
  std::uint64_t ret_offset = 0;
  std::uint64_t ret_length = 0;
  std::uint64_t reenter_ordinal = 0;
  GlobalStore store_snapshot;
};

enum class PathStatus { kRunning, kStopped, kReverted, kInvalid, kUnknown };

constexpr std::size_t kMaxStackDepth = 1024;

struct MachineState {
  std::vector<Frame> frames;
  GlobalStore store;
  std::vector<Constraint> constraints;
  std::vector<TraceEvent> trace;
  PathStatus status = PathStatus::kRunning;
  std::string status_reason;
  bool reentered = false;
  std::uint64_t attacker_calls = 0;        // ordinal counter along this path
  std::set<std::uint64_t> reenter_ordinals;
  int tx_index = 0;
};

// Per-run execution environment: loaded contracts, pruning policy, the
// warned function the adversary re-enters, and the symbol factory (which
// substitutes model values during concrete replay).
class Env {
 public:
  Env(const ingest::Corpus& corpus, bool pruning);

  const ingest::Corpus& corpus() const { return *corpus_; }
  const prune::SmcCfg& smc(const std::string& contract_id) const;
  const evm::Cfg& cfg(const std::string& contract_id) const;
  const evm::Instruction* fetch(const std::string& contract_id, std::uint64_t pc) const;

  void set_warned(const std::string& contract_id, std::uint32_t selector);
  const std::string& warned_contract() const { return warned_contract_; }
  std::uint32_t warned_selector() const { return warned_selector_; }
  std::optional<std::uint64_t> warned_entry_pc() const;

  // Concrete replay: symbols take model values (missing -> 0) and the
  // adversary re-enters exactly at the recorded call ordinals.
  void set_replay(std::map<std::string, u256> model, std::set<std::uint64_t> reenter_ordinals);
  bool replaying() const { return replaying_; }
  bool replay_reenters_at(std::uint64_t ordinal) const {
    return reenter_ordinals_.count(ordinal) != 0;
  }

  SymWord fresh(const std::string& name) const;
  SymWord attacker_sender() const { return fresh(kAttackerSymbol); }

  int max_call_depth = 4;
  static constexpr const char* kAttackerSymbol = "att_sender";

 private:
  const ingest::Corpus* corpus_;
  std::map<std::string, prune::SmcCfg> smc_;
  std::string warned_contract_;
  std::uint32_t warned_selector_ = 0;
  bool replaying_ = false;
  std::map<std::string, u256> replay_model_;
  std::set<std::uint64_t> reenter_ordinals_;
};

// Builds the entry frame for one transaction: dispatcher entry with the
// selector word seeded so the dispatch folds concretely.
Frame make_transaction_frame(const Env& env, const std::string& contract_id, std::uint32_t selector,
                             const std::string& sym_prefix, SymWord sender);

// Executes one instruction; returns successor states (empty when the path
// halted or was pruned away). Forks only at symbolic JUMPI and at adversary
// calls that may re-enter the warned function.
std::vector<MachineState> step(const MachineState& state, const Env& env);

}  // namespace revex::sym
