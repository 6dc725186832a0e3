#pragma once

#include <stdexcept>
#include <string>

namespace revex {

// Base for every engine-level failure. Path-level conditions (stack
// underflow, reverts, budget exhaustion) are machine statuses, not errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed report or metadata document.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Corpus directory problems: duplicate addresses, undecodable hex.
class LoadError : public Error {
 public:
  using Error::Error;
};

// Assembly-text rejection; carries the offending line number.
class AsmError : public Error {
 public:
  AsmError(const std::string& msg, std::size_t line)
      : Error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Structurally broken control flow, e.g. a constant jump to a non-JUMPDEST.
class CfgError : public Error {
 public:
  using Error::Error;
};

// Expression depth / path count / step caps. Surfaces as "unknown".
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Unparseable reply from the SMT solver subprocess.
class SolverProtocolError : public Error {
 public:
  SolverProtocolError(const std::string& msg, std::string raw_reply)
      : Error(msg), raw_reply_(std::move(raw_reply)) {}
  const std::string& raw_reply() const { return raw_reply_; }

 private:
  std::string raw_reply_;
};

}  // namespace revex
