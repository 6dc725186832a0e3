#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "revex/ingest/bundle.hpp"
#include "revex/ingest/report.hpp"
#include "revex/sym/runner.hpp"
#include "revex/verify/smt.hpp"

namespace revex::verify {

enum class Outcome { kConfirmed, kRefuted, kUnknown };
std::string outcome_name(Outcome outcome);

struct Witness {
  std::vector<sym::TraceEvent> trace;
  std::map<std::string, sym::u256> model;
  std::set<std::uint64_t> reenter_ordinals;
};

struct Verdict {
  std::string contract_id;
  std::uint32_t selector = 0;
  Outcome outcome = Outcome::kUnknown;
  std::optional<Witness> witness;
  double elapsed_seconds = 0;
  std::uint64_t steps_used = 0;
  std::string reason;  // set for unknown verdicts
};

struct VerifyConfig {
  bool pruning = true;
  std::chrono::milliseconds timeout{120'000};  // per warning
  std::uint64_t max_steps = 2'000'000;
  std::optional<SolverConfig> solver;  // default resolved lazily
  unsigned jobs = 1;
};

// Full pipeline for one warning: dependency closure, ascending-weight
// function sequence, pruned symbolic execution, witness predicate, solver
// reachability. The first satisfiable witness confirms and halts the search;
// exhausting all paths refutes; any incompleteness degrades to unknown.
Verdict verify_warning(const ingest::Corpus& corpus, const ingest::Warning& warning,
                       const VerifyConfig& config);

// Batch driver; per-warning errors degrade that warning to unknown and never
// abort the batch. Warnings fan out across `config.jobs` threads.
std::vector<Verdict> verify(const ingest::Corpus& corpus, const ingest::WarningReport& report,
                            const VerifyConfig& config);

// Replays a confirmed verdict's model through the machine in concrete mode
// and re-checks the witness predicate on the resulting trace.
bool replay_witness(const ingest::Corpus& corpus, const Verdict& verdict,
                    const VerifyConfig& config);

std::string verdicts_to_json(const std::vector<Verdict>& verdicts);

}  // namespace revex::verify
