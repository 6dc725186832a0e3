#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "revex/sym/machine.hpp"

namespace revex::verify {

enum class SatResult { kSat, kUnsat, kUnknown };

struct SolverReply {
  SatResult result = SatResult::kUnknown;
  std::map<std::string, sym::u256> model;  // every named symbol, missing filled as 0
  std::string raw;
  std::string note;  // timeout / crash explanation
};

struct SolverConfig {
  std::vector<std::string> argv;
  std::chrono::milliseconds timeout{10'000};
};

// 256-bit quantifier-free bit-vector serialization; hash terms become
// uninterpreted-function applications.
std::string serialize_query(const std::vector<sym::Constraint>& constraints);

// Evaluates constraint sets that contain no symbols, skipping the solver.
std::optional<SolverReply> concrete_shortcut(const std::vector<sym::Constraint>& constraints);

// Runs the external solver over SMT-LIB2 text on stdin/stdout. Timeouts and
// crashes come back as kUnknown; an unparseable reply throws
// SolverProtocolError with the raw reply attached.
SolverReply check_reachability(const std::vector<sym::Constraint>& constraints,
                               const SolverConfig& config);

// Resolution order: REVEX_SOLVER (split on spaces), z3 on PATH, the bundled
// word-level solver next to the running executable.
SolverConfig default_solver();

}  // namespace revex::verify
