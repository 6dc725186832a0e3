#include "revex/verify/smt.hpp"

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <set>
#include <sstream>

#include "revex/errors.hpp"
#include "revex/verify/subprocess.hpp"

namespace revex::verify {

using sym::Constraint;
using sym::ExprOp;
using sym::ExprRef;
using sym::u256;

namespace {

std::string bv_literal(const u256& v) { return "#x" + evm::to_hex64(v); }

std::string hash_fun_name(std::size_t arity) { return "hash" + std::to_string(arity); }

// Canonical string -> stable small name for hash applications, so the query
// stays readable and structurally equal applications share one term.
struct HashNames {
  std::map<std::string, std::size_t> arity;  // function name -> arity
};

void render_word(const ExprRef& node, std::ostringstream& os, HashNames& hashes);

void render_bool(const ExprRef& node, std::ostringstream& os, HashNames& hashes) {
  switch (node->op) {
    case ExprOp::kLt:
      os << "(bvult ";
      render_word(node->args[0], os, hashes);
      os << " ";
      render_word(node->args[1], os, hashes);
      os << ")";
      return;
    case ExprOp::kGt:
      os << "(bvugt ";
      render_word(node->args[0], os, hashes);
      os << " ";
      render_word(node->args[1], os, hashes);
      os << ")";
      return;
    case ExprOp::kEq:
      os << "(= ";
      render_word(node->args[0], os, hashes);
      os << " ";
      render_word(node->args[1], os, hashes);
      os << ")";
      return;
    case ExprOp::kIsZero:
      os << "(= ";
      render_word(node->args[0], os, hashes);
      os << " " << bv_literal(0) << ")";
      return;
    default:
      os << "(distinct ";
      render_word(node, os, hashes);
      os << " " << bv_literal(0) << ")";
      return;
  }
}

void render_word(const ExprRef& node, std::ostringstream& os, HashNames& hashes) {
  switch (node->op) {
    case ExprOp::kConst:
      os << bv_literal(node->value);
      return;
    case ExprOp::kSym:
      os << node->name;
      return;
    case ExprOp::kAdd:
    case ExprOp::kSub:
    case ExprOp::kMul:
    case ExprOp::kDiv:
    case ExprOp::kAnd:
    case ExprOp::kOr: {
      const char* op = node->op == ExprOp::kAdd   ? "bvadd"
                       : node->op == ExprOp::kSub ? "bvsub"
                       : node->op == ExprOp::kMul ? "bvmul"
                       : node->op == ExprOp::kDiv ? "bvudiv"
                       : node->op == ExprOp::kAnd ? "bvand"
                                                  : "bvor";
      os << "(" << op << " ";
      render_word(node->args[0], os, hashes);
      os << " ";
      render_word(node->args[1], os, hashes);
      os << ")";
      return;
    }
    case ExprOp::kNot:
      os << "(bvnot ";
      render_word(node->args[0], os, hashes);
      os << ")";
      return;
    case ExprOp::kLt:
    case ExprOp::kGt:
    case ExprOp::kEq:
    case ExprOp::kIsZero:
      // Comparison as a 0/1 word.
      os << "(ite ";
      render_bool(node, os, hashes);
      os << " " << bv_literal(1) << " " << bv_literal(0) << ")";
      return;
    case ExprOp::kHash: {
      std::string fn = hash_fun_name(node->args.size());
      hashes.arity[fn] = node->args.size();
      os << "(" << fn;
      for (const auto& a : node->args) {
        os << " ";
        render_word(a, os, hashes);
      }
      os << ")";
      return;
    }
  }
}

}  // namespace

std::string serialize_query(const std::vector<Constraint>& constraints) {
  std::set<std::string> symbols;
  for (const auto& c : constraints) sym::collect_symbols(c.word.node(), symbols);

  HashNames hashes;
  std::vector<std::string> assertions;
  for (const auto& c : constraints) {
    std::ostringstream os;
    render_bool(c.word.node(), os, hashes);
    assertions.push_back(os.str());
  }

  std::ostringstream out;
  out << "(set-logic QF_AUFBV)\n";
  for (const auto& name : symbols) {
    out << "(declare-const " << name << " (_ BitVec 256))\n";
  }
  for (const auto& [fn, arity] : hashes.arity) {
    out << "(declare-fun " << fn << " (";
    for (std::size_t i = 0; i < arity; ++i) out << (i ? " " : "") << "(_ BitVec 256)";
    out << ") (_ BitVec 256))\n";
  }
  for (const auto& a : assertions) out << "(assert " << a << ")\n";
  out << "(check-sat)\n(get-model)\n(exit)\n";
  return out.str();
}

std::optional<SolverReply> concrete_shortcut(const std::vector<Constraint>& constraints) {
  for (const auto& c : constraints) {
    if (!c.word.is_concrete()) return std::nullopt;
  }
  SolverReply reply;
  reply.result = SatResult::kSat;
  for (const auto& c : constraints) {
    if (c.word.concrete() == 0) {
      reply.result = SatResult::kUnsat;
      break;
    }
  }
  return reply;
}

namespace {

// Minimal s-expression reader for solver replies.
struct Sexp {
  std::string atom;
  std::vector<Sexp> items;
  bool is_atom() const { return items.empty() && !atom.empty(); }
};

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::string current;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == ';') {  // comment to end of line
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (c == '(' || c == ')') {
      if (!current.empty()) {
        tokens.push_back(current);
        current.clear();
      }
      tokens.push_back(std::string(1, c));
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      if (!current.empty()) {
        tokens.push_back(current);
        current.clear();
      }
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) tokens.push_back(current);
  return tokens;
}

Sexp parse_sexp(const std::vector<std::string>& tokens, std::size_t& pos) {
  Sexp out;
  if (pos >= tokens.size()) return out;
  if (tokens[pos] == "(") {
    ++pos;
    while (pos < tokens.size() && tokens[pos] != ")") {
      out.items.push_back(parse_sexp(tokens, pos));
    }
    if (pos < tokens.size()) ++pos;  // consume ')'
    if (out.items.empty()) out.atom = "()";
    return out;
  }
  out.atom = tokens[pos++];
  return out;
}

std::optional<u256> parse_bv_value(const Sexp& s) {
  if (s.is_atom()) {
    const std::string& a = s.atom;
    if (a.rfind("#x", 0) == 0) return evm::parse_u256("0x" + a.substr(2));
    if (a.rfind("#b", 0) == 0) {
      u256 v = 0;
      for (char c : a.substr(2)) {
        if (c != '0' && c != '1') return std::nullopt;
        v = (v << 1) | (c == '1' ? 1 : 0);
      }
      return v;
    }
    return std::nullopt;
  }
  // (_ bvNNN 256)
  if (s.items.size() == 3 && s.items[0].atom == "_" && s.items[1].atom.rfind("bv", 0) == 0) {
    u256 v = 0;
    for (char c : s.items[1].atom.substr(2)) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
      v = v * 10 + (c - '0');
    }
    return v;
  }
  return std::nullopt;
}

void collect_model(const Sexp& s, std::map<std::string, u256>& model) {
  if (!s.items.empty() && s.items[0].is_atom() && s.items[0].atom == "define-fun" &&
      s.items.size() >= 5) {
    const Sexp& name = s.items[1];
    const Sexp& params = s.items[2];
    bool nullary = params.items.empty();
    if (name.is_atom() && nullary) {
      if (auto v = parse_bv_value(s.items.back())) model[name.atom] = *v;
    }
    return;
  }
  for (const auto& item : s.items) collect_model(item, model);
}

}  // namespace

SolverReply check_reachability(const std::vector<Constraint>& constraints,
                               const SolverConfig& config) {
  if (auto shortcut = concrete_shortcut(constraints)) return *shortcut;

  std::string query = serialize_query(constraints);
  SubprocessResult proc = run_subprocess(config.argv, query, config.timeout);

  SolverReply reply;
  reply.raw = proc.stdout_text;
  if (proc.timed_out) {
    reply.result = SatResult::kUnknown;
    reply.note = "solver timeout";
    return reply;
  }

  std::istringstream lines(proc.stdout_text);
  std::string verdict_line;
  while (std::getline(lines, verdict_line)) {
    auto first = verdict_line.find_first_not_of(" \t\r");
    if (first != std::string::npos) {
      verdict_line = verdict_line.substr(first);
      break;
    }
  }
  if (verdict_line.rfind("sat", 0) == 0 && verdict_line.size() <= 4) {
    reply.result = SatResult::kSat;
  } else if (verdict_line.rfind("unsat", 0) == 0) {
    reply.result = SatResult::kUnsat;
    return reply;
  } else if (verdict_line.rfind("unknown", 0) == 0) {
    reply.result = SatResult::kUnknown;
    reply.note = "solver returned unknown";
    return reply;
  } else if (proc.exit_code != 0 && proc.stdout_text.empty()) {
    reply.result = SatResult::kUnknown;
    reply.note = "solver crashed (exit " + std::to_string(proc.exit_code) + ")";
    return reply;
  } else {
    throw SolverProtocolError("unrecognized solver verdict", proc.stdout_text);
  }

  // sat: read the model that follows the verdict line.
  std::string rest;
  std::getline(lines, rest, '\0');
  auto tokens = tokenize(rest);
  std::size_t pos = 0;
  while (pos < tokens.size()) {
    Sexp s = parse_sexp(tokens, pos);
    collect_model(s, reply.model);
  }
  // Named symbols the solver considered don't-care default to zero.
  std::set<std::string> symbols;
  for (const auto& c : constraints) sym::collect_symbols(c.word.node(), symbols);
  for (const auto& name : symbols) {
    if (!reply.model.count(name)) reply.model[name] = 0;
  }
  return reply;
}

SolverConfig default_solver() {
  SolverConfig config;
  if (const char* env = std::getenv("REVEX_SOLVER")) {
    std::istringstream ss(env);
    std::string tok;
    while (ss >> tok) config.argv.push_back(tok);
    if (!config.argv.empty()) return config;
  }
  if (std::string z3 = find_in_path("z3"); !z3.empty()) {
    config.argv = {z3, "-in"};
    return config;
  }
  std::string dir = executable_dir();
  for (const char* candidate : {"/microsolve", "/../tools/microsolve"}) {
    std::string path = dir + candidate;
    std::error_code ec;
    if (std::filesystem::exists(path, ec)) {
      config.argv = {std::filesystem::weakly_canonical(path).string()};
      return config;
    }
  }
  throw Error("no SMT solver available: set REVEX_SOLVER or install z3");
}

}  // namespace revex::verify
