#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "revex/sym/machine.hpp"

namespace revex::verify {

// Where the exploit shape was found in a trace.
struct WitnessMatch {
  sym::Taint slot;               // (storage context, canonical slot)
  std::size_t guard_index = 0;   // branch whose condition read the slot
  std::size_t call_index = 0;    // attacker-reachable external call
  std::size_t write_index = 0;   // post-call write to the same slot
  std::uint64_t reenter_ordinal = 0;
};

// The reentrancy witness over a completed trace of the warned function:
// a guard that reads slot S, then a non-static external call the adversary
// can reach, then a write to S — with a re-entered execution of the warned
// function that completed and branched on S under the pre-write value.
// Read-only external calls and static-only traces never match.
std::optional<WitnessMatch> find_witness(const std::vector<sym::TraceEvent>& trace);

bool witness_predicate(const std::vector<sym::TraceEvent>& trace);

}  // namespace revex::verify
