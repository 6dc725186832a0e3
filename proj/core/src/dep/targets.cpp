#include "revex/dep/targets.hpp"

#include <algorithm>

#include "revex/errors.hpp"
#include "revex/ingest/report.hpp"

namespace revex::dep {

namespace {

bool intersects(const std::set<SlotDesc>& a, const std::set<SlotDesc>& b) {
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  return std::any_of(small.begin(), small.end(), [&](const SlotDesc& s) { return large.count(s) != 0; });
}

}  // namespace

TargetSets compute_target_sets(const std::vector<std::uint32_t>& warned_selectors,
                               const SummaryMap& summaries) {
  TargetSets out;
  for (std::uint32_t sel : warned_selectors) {
    auto it = summaries.find(sel);
    if (it == summaries.end()) {
      throw Error("missing summary for warned selector " + ingest::selector_hex(sel));
    }
    auto touched = it->second.touched();
    out.v_target.insert(touched.begin(), touched.end());
    out.f_target.insert(sel);
  }

  std::set<SlotDesc> tracked = out.v_target;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [sel, summary] : summaries) {
      if (out.f_target.count(sel)) continue;
      auto touched = summary.touched();
      if (!intersects(touched, tracked)) continue;
      out.f_target.insert(sel);
      for (const auto& slot : touched) {
        if (out.v_target_related.insert(slot).second) tracked.insert(slot);
      }
      changed = true;
    }
  }
  // Warned functions' own slots are related by construction.
  for (std::uint32_t sel : warned_selectors) {
    auto touched = summaries.at(sel).touched();
    out.v_target_related.insert(touched.begin(), touched.end());
  }
  return out;
}

}  // namespace revex::dep
