#include "revex/dep/fdg.hpp"

#include <algorithm>
#include <sstream>

#include "revex/ingest/report.hpp"

namespace revex::dep {

std::uint64_t Fdg::edge_weight(std::uint32_t a, std::uint32_t b) const {
  if (a > b) std::swap(a, b);
  auto it = edges.find({a, b});
  return it == edges.end() ? 0 : it->second;
}

Fdg build_fdg(const TargetSets& targets, const SummaryMap& summaries) {
  Fdg fdg;
  fdg.nodes = targets.f_target;
  for (std::uint32_t sel : fdg.nodes) fdg.node_weight[sel] = 0;

  std::vector<std::uint32_t> order(fdg.nodes.begin(), fdg.nodes.end());
  std::map<std::uint32_t, std::set<SlotDesc>> touched;
  for (std::uint32_t sel : order) touched[sel] = summaries.at(sel).touched();

  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const auto& a = touched[order[i]];
      const auto& b = touched[order[j]];
      std::uint64_t shared = 0;
      for (const auto& slot : a) {
        if (b.count(slot) && targets.v_target_related.count(slot)) ++shared;
      }
      if (shared == 0) continue;
      fdg.edges[{order[i], order[j]}] = shared;
      fdg.node_weight[order[i]] += shared;
      fdg.node_weight[order[j]] += shared;
    }
  }
  return fdg;
}

std::vector<std::uint32_t> function_sequence(const Fdg& fdg) {
  std::vector<std::uint32_t> seq(fdg.nodes.begin(), fdg.nodes.end());
  std::stable_sort(seq.begin(), seq.end(), [&](std::uint32_t a, std::uint32_t b) {
    std::uint64_t wa = fdg.node_weight.at(a);
    std::uint64_t wb = fdg.node_weight.at(b);
    if (wa != wb) return wa < wb;
    return a < b;
  });
  return seq;
}

std::string fdg_to_dot(const Fdg& fdg) {
  std::ostringstream os;
  os << "graph fdg {\n";
  for (std::uint32_t sel : fdg.nodes) {
    os << "  \"" << ingest::selector_hex(sel) << "\" [label=\"" << ingest::selector_hex(sel)
       << "\\nw=" << fdg.node_weight.at(sel) << "\"];\n";
  }
  for (const auto& [pair, weight] : fdg.edges) {
    os << "  \"" << ingest::selector_hex(pair.first) << "\" -- \"" << ingest::selector_hex(pair.second)
       << "\" [label=\"" << weight << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace revex::dep
