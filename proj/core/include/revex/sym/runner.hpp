#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "revex/sym/machine.hpp"

namespace revex::sym {

struct Budget {
  std::uint64_t max_steps = 2'000'000;
  std::chrono::milliseconds wall_time{120'000};
  std::size_t max_worlds = 32;   // committed intermediate states per transaction
  std::size_t max_paths = 512;   // collected terminal paths of the warned call
};

// One completed execution of the warned function, with everything the
// verifier needs: global constraints, the full trace, the final store, and
// the adversary bookkeeping for the reachability check.
struct Path {
  std::vector<Constraint> constraints;
  std::vector<TraceEvent> trace;
  GlobalStore store;
  std::set<std::uint64_t> reenter_ordinals;
  std::vector<std::string> setup_senders;   // sender symbols of earlier transactions
  std::vector<u256> pre_attack_concretes;   // concrete storage words before the warned call
};

struct PathSet {
  std::vector<Path> paths;
  bool incomplete = false;
  std::string incomplete_reason;
  std::uint64_t steps_used = 0;
  bool stopped_early = false;  // the callback confirmed a witness
};

// Returns true to halt exploration (a witness was confirmed).
using PathCallback = std::function<bool(const Path&)>;

// Executes `sequence` as transactions against one persistent store, each with
// fresh symbolic sender/value/calldata, then the warned function last with
// the adversary as sender. Collects every completed warned path; stops early
// when the callback confirms one; flags the result incomplete on any budget
// exhaustion or unknown-status path.
PathSet run_sequence(const Env& env, const std::string& contract_id,
                     const std::vector<std::uint32_t>& sequence, std::uint32_t warned_selector,
                     const Budget& budget, const PathCallback& on_path = nullptr);

}  // namespace revex::sym
