#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "revex/dep/summary.hpp"

namespace revex::dep {

struct TargetSets {
  std::set<SlotDesc> v_target;          // slots touched by warned functions
  std::set<SlotDesc> v_target_related;  // closure of slots touched by target functions
  std::set<std::uint32_t> f_target;     // functions touching any tracked slot
};

// Two-rule fixpoint: any function touching a tracked slot joins f_target and
// contributes its slots, until nothing grows. Warned selectors are always
// target functions. Throws Error when a warned selector has no summary.
TargetSets compute_target_sets(const std::vector<std::uint32_t>& warned_selectors,
                               const SummaryMap& summaries);

}  // namespace revex::dep
