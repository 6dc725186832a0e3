#include "revex/verify/verifier.hpp"

#include <json.hpp>

#include <atomic>
#include <thread>

#include "revex/dep/fdg.hpp"
#include "revex/dep/targets.hpp"
#include "revex/errors.hpp"
#include "revex/verify/witness.hpp"

namespace revex::verify {

using sym::Constraint;
using sym::SymWord;
using sym::u256;

std::string outcome_name(Outcome outcome) {
  switch (outcome) {
    case Outcome::kConfirmed: return "confirmed";
    case Outcome::kRefuted: return "refuted";
    case Outcome::kUnknown: return "unknown";
  }
  return "unknown";
}

namespace {

// The adversary drives the warned call: its sender differs from the null
// address, from every loaded contract, from every concrete word already in
// storage (stored owners and friends), and from the senders of the setup
// transactions (honest parties).
std::vector<Constraint> adversary_constraints(const ingest::Corpus& corpus, const sym::Path& path) {
  std::vector<Constraint> out;
  SymWord attacker = SymWord::symbol(sym::Env::kAttackerSymbol);
  auto exclude = [&](const SymWord& value) {
    out.push_back(Constraint{is_zero(eq(attacker, value)), "<adversary>", 0});
  };
  exclude(SymWord::constant(0));
  for (const auto& addr : corpus.addresses()) exclude(SymWord::constant(addr));
  for (const auto& value : path.pre_attack_concretes) exclude(SymWord::constant(value));
  for (const auto& sender : path.setup_senders) exclude(SymWord::symbol(sender));
  return out;
}

sym::Budget budget_for(const VerifyConfig& config) {
  sym::Budget budget;
  budget.max_steps = config.max_steps;
  budget.wall_time = config.timeout;
  return budget;
}

}  // namespace

Verdict verify_warning(const ingest::Corpus& corpus, const ingest::Warning& warning,
                       const VerifyConfig& config) {
  auto started = std::chrono::steady_clock::now();
  Verdict verdict;
  verdict.contract_id = warning.contract_id;
  verdict.selector = warning.selector;

  auto finish = [&](Outcome outcome, std::string reason = {}) {
    verdict.outcome = outcome;
    verdict.reason = std::move(reason);
    verdict.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return verdict;
  };

  try {
    const ingest::LoadedContract* contract = corpus.find(warning.contract_id);
    if (!contract) return finish(Outcome::kUnknown, "unknown contract " + warning.contract_id);
    auto entry_it = contract->cfg.function_entries.find(warning.selector);
    if (entry_it == contract->cfg.function_entries.end()) {
      return finish(Outcome::kUnknown,
                    "selector " + ingest::selector_hex(warning.selector) + " has no entry");
    }
    // A dynamic jump anywhere in the warned function makes the exploration
    // blind to part of its control flow: never guess, report unknown.
    if (contract->cfg.any_unresolved(contract->cfg.reachable_from(entry_it->second))) {
      return finish(Outcome::kUnknown, "warned function contains an unresolved jump");
    }

    auto summaries = dep::extract_rw_sets(contract->cfg, contract->bundle);
    auto targets = dep::compute_target_sets({warning.selector}, summaries);
    auto fdg = dep::build_fdg(targets, summaries);
    auto sequence = dep::function_sequence(fdg);

    sym::Env env(corpus, config.pruning);
    env.set_warned(warning.contract_id, warning.selector);

    SolverConfig solver = config.solver ? *config.solver : default_solver();

    std::optional<Witness> witness;
    bool solver_unknown = false;
    std::string solver_note;

    auto on_path = [&](const sym::Path& path) {
      if (!witness_predicate(path.trace)) return false;
      std::vector<Constraint> constraints = path.constraints;
      auto adversary = adversary_constraints(corpus, path);
      constraints.insert(constraints.end(), adversary.begin(), adversary.end());
      SolverReply reply;
      try {
        reply = check_reachability(constraints, solver);
      } catch (const SolverProtocolError& e) {
        solver_unknown = true;
        solver_note = e.what();
        return false;
      }
      if (reply.result == SatResult::kSat) {
        // Unconstrained transaction inputs are don't-cares: pin them to zero
        // so the model is total over sender/value of every transaction.
        for (std::size_t tx = 0; tx <= sequence.size(); ++tx) {
          reply.model.emplace("t" + std::to_string(tx) + "_value", 0);
          reply.model.emplace("t" + std::to_string(tx) + "_sender", 0);
        }
        reply.model.emplace(sym::Env::kAttackerSymbol, 0);
        witness = Witness{path.trace, reply.model, path.reenter_ordinals};
        return true;
      }
      if (reply.result == SatResult::kUnknown) {
        solver_unknown = true;
        solver_note = reply.note;
      }
      return false;
    };

    auto pathset = sym::run_sequence(env, warning.contract_id, sequence, warning.selector,
                                     budget_for(config), on_path);
    verdict.steps_used = pathset.steps_used;

    if (witness) {
      verdict.witness = std::move(witness);
      return finish(Outcome::kConfirmed);
    }
    if (pathset.incomplete) return finish(Outcome::kUnknown, pathset.incomplete_reason);
    if (solver_unknown) return finish(Outcome::kUnknown, solver_note);
    return finish(Outcome::kRefuted);
  } catch (const Error& e) {
    return finish(Outcome::kUnknown, e.what());
  }
}

std::vector<Verdict> verify(const ingest::Corpus& corpus, const ingest::WarningReport& report,
                            const VerifyConfig& config) {
  std::vector<Verdict> verdicts(report.warnings.size());
  unsigned jobs = std::max(1u, config.jobs);
  if (jobs == 1 || report.warnings.size() <= 1) {
    for (std::size_t i = 0; i < report.warnings.size(); ++i) {
      verdicts[i] = verify_warning(corpus, report.warnings[i], config);
    }
    return verdicts;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= report.warnings.size()) return;
        verdicts[i] = verify_warning(corpus, report.warnings[i], config);
      }
    });
  }
  for (auto& th : pool) th.join();
  return verdicts;
}

bool replay_witness(const ingest::Corpus& corpus, const Verdict& verdict,
                    const VerifyConfig& config) {
  if (verdict.outcome != Outcome::kConfirmed || !verdict.witness) return false;
  const ingest::LoadedContract* contract = corpus.find(verdict.contract_id);
  if (!contract) return false;

  auto summaries = dep::extract_rw_sets(contract->cfg, contract->bundle);
  auto targets = dep::compute_target_sets({verdict.selector}, summaries);
  auto fdg = dep::build_fdg(targets, summaries);
  auto sequence = dep::function_sequence(fdg);

  sym::Env env(corpus, config.pruning);
  env.set_warned(verdict.contract_id, verdict.selector);
  env.set_replay(verdict.witness->model, verdict.witness->reenter_ordinals);

  bool reproduced = false;
  auto on_path = [&](const sym::Path& path) {
    if (witness_predicate(path.trace)) {
      reproduced = true;
      return true;
    }
    return false;
  };
  sym::run_sequence(env, verdict.contract_id, sequence, verdict.selector, budget_for(config),
                    on_path);
  return reproduced;
}

std::string verdicts_to_json(const std::vector<Verdict>& verdicts) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& v : verdicts) {
    nlohmann::json rec;
    rec["contract_id"] = v.contract_id;
    rec["selector"] = ingest::selector_hex(v.selector);
    rec["outcome"] = outcome_name(v.outcome);
    rec["elapsed_s"] = v.elapsed_seconds;
    rec["steps"] = v.steps_used;
    if (!v.reason.empty()) rec["reason"] = v.reason;
    if (v.witness) {
      nlohmann::json w;
      w["trace"] = sym::trace_to_string(v.witness->trace);
      nlohmann::json model;
      for (const auto& [name, value] : v.witness->model) model[name] = evm::to_hex(value);
      w["model"] = model;
      rec["witness"] = w;
    }
    arr.push_back(rec);
  }
  return arr.dump(2);
}

}  // namespace revex::verify
