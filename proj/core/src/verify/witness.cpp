#include "revex/verify/witness.hpp"

namespace revex::verify {

using sym::TraceEvent;
using Kind = sym::TraceEvent::Kind;

namespace {

std::size_t last_tx_begin(const std::vector<TraceEvent>& trace) {
  std::size_t start = 0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (trace[i].kind == Kind::kTxBegin) start = i;
  }
  return start;
}

std::size_t matching_call_end(const std::vector<TraceEvent>& trace, std::size_t begin) {
  int depth = trace[begin].frame_depth;
  for (std::size_t i = begin + 1; i < trace.size(); ++i) {
    if (trace[i].kind == Kind::kCallEnd && trace[i].frame_depth == depth) return i;
  }
  return trace.size();
}

bool attacker_reachable(const std::vector<TraceEvent>& trace, std::size_t begin, std::size_t end) {
  if (trace[begin].symbolic_target) return true;
  for (std::size_t i = begin + 1; i < end; ++i) {
    if (trace[i].kind == Kind::kCallBegin && trace[i].symbolic_target) return true;
  }
  return false;
}

// A completed (non-reverted) re-entry inside [begin, end) that passed the
// guard on `slot`: it branched on the slot's pre-write value and went on to
// re-attempt the transfer (a non-static external call after that branch).
// Re-entries the guard turned away, whether by revert or by a graceful exit,
// do not witness anything.
std::optional<std::uint64_t> completed_reentry_on(const std::vector<TraceEvent>& trace,
                                                  std::size_t begin, std::size_t end,
                                                  const sym::Taint& slot) {
  for (std::size_t i = begin + 1; i < end; ++i) {
    if (trace[i].kind != Kind::kReenterBegin) continue;
    std::uint64_t ordinal = trace[i].ordinal;
    bool guard_on_slot = false;
    bool retransfer = false;
    for (std::size_t j = i + 1; j < end; ++j) {
      if (trace[j].kind == Kind::kReenterEnd && trace[j].ordinal == ordinal) {
        if (!trace[j].reverted && guard_on_slot && retransfer) return ordinal;
        break;
      }
      if (trace[j].kind == Kind::kBranch && trace[j].guard_taint.count(slot)) guard_on_slot = true;
      if (guard_on_slot && trace[j].kind == Kind::kCallBegin &&
          trace[j].call_kind != sym::CallKind::kStaticCall) {
        retransfer = true;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<WitnessMatch> find_witness(const std::vector<TraceEvent>& trace) {
  std::size_t start = last_tx_begin(trace);

  for (std::size_t g = start; g < trace.size(); ++g) {
    const TraceEvent& guard = trace[g];
    if (guard.kind != Kind::kBranch || guard.frame_depth != 0 || guard.guard_taint.empty()) continue;

    for (std::size_t c = g + 1; c < trace.size(); ++c) {
      const TraceEvent& call = trace[c];
      if (call.kind != Kind::kCallBegin || call.frame_depth != 0) continue;
      if (call.call_kind == sym::CallKind::kStaticCall) continue;
      std::size_t end = matching_call_end(trace, c);
      if (!attacker_reachable(trace, c, end)) continue;

      for (const auto& slot : guard.guard_taint) {
        auto reentry = completed_reentry_on(trace, c, end, slot);
        if (!reentry) continue;
        for (std::size_t w = end; w < trace.size(); ++w) {
          const TraceEvent& write = trace[w];
          if (write.kind != Kind::kSStore || write.frame_depth != 0) continue;
          if (sym::Taint{write.context, write.slot} != slot) continue;
          WitnessMatch match;
          match.slot = slot;
          match.guard_index = g;
          match.call_index = c;
          match.write_index = w;
          match.reenter_ordinal = *reentry;
          return match;
        }
      }
    }
  }
  return std::nullopt;
}

bool witness_predicate(const std::vector<TraceEvent>& trace) {
  return find_witness(trace).has_value();
}

}  // namespace revex::verify
