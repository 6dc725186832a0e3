#include "revex/harness/merge.hpp"

#include <algorithm>
#include <map>

#include "revex/errors.hpp"

namespace revex::harness {

ingest::WarningReport merge_reports(const std::vector<ingest::WarningReport>& reports,
                                    const std::set<std::string>& combo) {
  std::set<std::string> present;
  for (const auto& r : reports) present.insert(r.tool_name);
  for (const auto& tool : combo) {
    if (!present.count(tool)) throw Error("combination names absent tool: " + tool);
  }

  ingest::WarningReport merged;
  std::string name;
  for (const auto& tool : combo) {  // std::set iterates sorted
    if (!name.empty()) name += "+";
    name += tool;
  }
  merged.tool_name = name;

  std::map<std::pair<std::string, std::uint32_t>, ingest::Warning> dedup;
  for (const auto& r : reports) {
    if (!combo.count(r.tool_name)) continue;
    for (const auto& w : r.warnings) {
      dedup.emplace(std::make_pair(w.contract_id, w.selector), w);
    }
  }
  for (const auto& [key, w] : dedup) merged.warnings.push_back(w);
  return merged;
}

}  // namespace revex::harness
