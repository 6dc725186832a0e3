#pragma once

#include <cstdint>
#include <map>
#include <set>

#include "revex/evm/cfg.hpp"
#include "revex/ingest/bundle.hpp"

namespace revex::dep {

using ingest::SlotDesc;

struct FunctionSummary {
  std::uint32_t selector = 0;
  std::set<SlotDesc> reads;
  std::set<SlotDesc> writes;
  bool makes_external_call = false;
  // Set when a storage operand could not be resolved to a constant slot or a
  // constant mapping base; such slots are simply not recorded.
  bool incomplete = false;

  std::set<SlotDesc> touched() const;
};

using SummaryMap = std::map<std::uint32_t, FunctionSummary>;

// Walks each function's reachable blocks, resolving SLOAD/SSTORE operands
// that are block-local constants or hash results over a constant mapping
// base. Declared metadata state_vars are unioned in when present.
SummaryMap extract_rw_sets(const evm::Cfg& cfg, const ingest::ContractBundle& bundle);

}  // namespace revex::dep
