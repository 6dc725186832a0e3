#pragma once

#include <set>
#include <string>
#include <vector>

#include "revex/ingest/report.hpp"

namespace revex::harness {

// Logical-OR merge: a (contract, function) is warned in the merge iff at
// least one tool in the combination warned it. The merged tool name is the
// sorted combination joined by '+'. Throws Error when the combination names
// an absent tool.
ingest::WarningReport merge_reports(const std::vector<ingest::WarningReport>& reports,
                                    const std::set<std::string>& combo);

}  // namespace revex::harness
