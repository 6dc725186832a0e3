#include "revex/sym/runner.hpp"

#include <algorithm>
#include <deque>

namespace revex::sym {

namespace {

struct World {
  GlobalStore store;
  std::vector<Constraint> constraints;
  std::vector<TraceEvent> trace;
  std::vector<std::string> setup_senders;
};

struct RunClock {
  std::chrono::steady_clock::time_point deadline;
  std::uint64_t max_steps;
  std::uint64_t steps = 0;

  bool exhausted() const {
    return steps >= max_steps || std::chrono::steady_clock::now() >= deadline;
  }
};

// Depth-first exploration of one transaction from one world. Terminal states
// are handed to `sink`; returns false when the budget ran dry mid-way.
template <typename Sink>
bool explore_tx(const Env& env, const World& world, const std::string& contract_id,
                std::uint32_t selector, int tx_index, bool attack, RunClock& clock, Sink&& sink) {
  MachineState seed;
  seed.store = world.store;
  seed.constraints = world.constraints;
  seed.tx_index = tx_index;

  std::string prefix = "t" + std::to_string(tx_index);
  SymWord sender = attack ? env.attacker_sender() : env.fresh(prefix + "_sender");
  seed.frames.push_back(make_transaction_frame(env, contract_id, selector, prefix, sender));

  TraceEvent tx_ev;
  tx_ev.kind = TraceEvent::Kind::kTxBegin;
  tx_ev.context = contract_id;
  tx_ev.selector = selector;
  seed.trace = world.trace;
  seed.trace.push_back(tx_ev);

  std::vector<MachineState> stack;
  stack.push_back(std::move(seed));
  while (!stack.empty()) {
    if (clock.exhausted()) return false;
    MachineState st = std::move(stack.back());
    stack.pop_back();
    if (st.status != PathStatus::kRunning) {
      if (!sink(std::move(st))) return true;  // sink asked to stop: not a budget failure
      continue;
    }
    ++clock.steps;
    auto succs = step(st, env);
    // Policy order means succs[0] explores first: push in reverse.
    for (auto it = succs.rbegin(); it != succs.rend(); ++it) {
      stack.push_back(std::move(*it));
    }
  }
  return true;
}

std::vector<u256> concrete_store_values(const GlobalStore& store) {
  std::vector<u256> out;
  for (const auto& [cid, slots] : store.partitions()) {
    for (const auto& [key, entry] : slots) {
      if (entry.value.is_concrete() && entry.value.concrete() != 0) {
        out.push_back(entry.value.concrete());
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

PathSet run_sequence(const Env& env, const std::string& contract_id,
                     const std::vector<std::uint32_t>& sequence, std::uint32_t warned_selector,
                     const Budget& budget, const PathCallback& on_path) {
  PathSet result;
  RunClock clock{std::chrono::steady_clock::now() + budget.wall_time, budget.max_steps};

  // Setup transactions: everything in the sequence except the warned
  // function, which always runs last.
  std::vector<std::uint32_t> setup;
  for (std::uint32_t sel : sequence) {
    if (sel != warned_selector) setup.push_back(sel);
  }

  std::vector<World> worlds{World{}};
  int tx_index = 0;
  for (std::uint32_t sel : setup) {
    std::vector<World> next_worlds;
    for (const World& world : worlds) {
      bool committed = false;
      bool truncated = false;
      bool ok = explore_tx(env, world, contract_id, sel, tx_index, /*attack=*/false, clock,
                           [&](MachineState st) {
                             if (st.status == PathStatus::kUnknown) {
                               result.incomplete = true;
                               result.incomplete_reason = st.status_reason;
                               return true;
                             }
                             if (st.status != PathStatus::kStopped) return true;  // reverted/invalid
                             if (next_worlds.size() >= budget.max_worlds) {
                               truncated = true;
                               return false;
                             }
                             World w;
                             w.store = std::move(st.store);
                             w.constraints = std::move(st.constraints);
                             w.trace = std::move(st.trace);
                             w.setup_senders = world.setup_senders;
                             w.setup_senders.push_back("t" + std::to_string(st.tx_index) + "_sender");
                             next_worlds.push_back(std::move(w));
                             committed = true;
                             return true;
                           });
      if (!ok || truncated) {
        result.incomplete = true;
        if (result.incomplete_reason.empty()) {
          result.incomplete_reason = truncated ? "world cap reached" : "budget exhausted";
        }
      }
      if (!committed && next_worlds.size() < budget.max_worlds) {
        // Every path of this transaction reverted: state is unchanged and the
        // later transactions still run.
        next_worlds.push_back(world);
      }
    }
    worlds = std::move(next_worlds);
    ++tx_index;
  }

  // The warned transaction, adversary-sent.
  for (const World& world : worlds) {
    std::vector<u256> pre_attack = concrete_store_values(world.store);
    bool stop_all = false;
    bool ok = explore_tx(env, world, contract_id, warned_selector, tx_index, /*attack=*/true, clock,
                         [&](MachineState st) {
                           if (st.status == PathStatus::kUnknown) {
                             result.incomplete = true;
                             result.incomplete_reason = st.status_reason;
                             return true;
                           }
                           if (st.status != PathStatus::kStopped) return true;
                           Path path;
                           path.constraints = std::move(st.constraints);
                           path.trace = std::move(st.trace);
                           path.store = std::move(st.store);
                           path.reenter_ordinals = std::move(st.reenter_ordinals);
                           path.setup_senders = world.setup_senders;
                           path.pre_attack_concretes = pre_attack;
                           bool confirmed = on_path && on_path(path);
                           if (result.paths.size() < budget.max_paths) {
                             result.paths.push_back(std::move(path));
                           } else {
                             result.incomplete = true;
                             result.incomplete_reason = "path cap reached";
                           }
                           if (confirmed) {
                             result.stopped_early = true;
                             stop_all = true;
                             return false;
                           }
                           return true;
                         });
    if (!ok && !stop_all) {
      result.incomplete = true;
      if (result.incomplete_reason.empty()) result.incomplete_reason = "budget exhausted";
    }
    if (stop_all) break;
  }

  result.steps_used = clock.steps;
  return result;
}

}  // namespace revex::sym
