// Word-level SMT-LIB2 solver for 256-bit bit-vector constraint sets, spoken
// over stdin/stdout: set-logic QF_AUFBV, declare-const, declare-fun, assert,
// check-sat, get-model. It decides by constant propagation, interval and
// disequality reasoning, and a bounded backtracking search; hash functions
// are interpreted as the contract-ABI keccak so models agree with concrete
// replays. Answers `unknown` whenever it cannot prove either way.

#include <algorithm>
#include <cctype>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "revex/evm/keccak.hpp"
#include "revex/evm/word.hpp"

using revex::evm::u256;

namespace {

const u256 kMaxWord = ~u256(0);

// ---------------------------------------------------------------- s-exprs

struct Sexp {
  std::string atom;
  std::vector<Sexp> items;
  bool is_atom() const { return items.empty(); }
};

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == ';') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (c == '(' || c == ')' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) {
        tokens.push_back(cur);
        cur.clear();
      }
      if (c == '(' || c == ')') tokens.emplace_back(1, c);
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) tokens.push_back(cur);
  return tokens;
}

Sexp parse(const std::vector<std::string>& tokens, std::size_t& pos) {
  Sexp s;
  if (pos >= tokens.size()) return s;
  if (tokens[pos] == "(") {
    ++pos;
    while (pos < tokens.size() && tokens[pos] != ")") s.items.push_back(parse(tokens, pos));
    if (pos < tokens.size()) ++pos;
    return s;
  }
  s.atom = tokens[pos++];
  return s;
}

// ---------------------------------------------------------------- terms

std::optional<u256> parse_literal(const Sexp& s) {
  if (s.is_atom()) {
    if (s.atom.rfind("#x", 0) == 0) return revex::evm::parse_u256("0x" + s.atom.substr(2));
    if (s.atom.rfind("#b", 0) == 0) {
      u256 v = 0;
      for (char c : s.atom.substr(2)) v = (v << 1) | (c == '1' ? 1 : 0);
      return v;
    }
    return std::nullopt;
  }
  if (s.items.size() == 3 && s.items[0].atom == "_" && s.items[1].atom.rfind("bv", 0) == 0) {
    u256 v = 0;
    for (char c : s.items[1].atom.substr(2)) v = v * 10 + (c - '0');
    return v;
  }
  return std::nullopt;
}

struct Solver {
  std::vector<std::string> consts;       // declaration order
  std::set<std::string> declared;
  std::set<std::string> declared_funs;   // uninterpreted word functions
  std::vector<Sexp> asserts;
  std::map<std::string, u256> binding;   // proven equalities
  std::map<std::string, std::set<u256>> diseq;
  std::map<std::string, u256> lo, hi;    // inclusive bounds
  bool proven_unsat = false;

  bool is_var(const Sexp& s) const { return s.is_atom() && declared.count(s.atom) != 0; }

  u256 lo_of(const std::string& v) const {
    auto it = lo.find(v);
    return it == lo.end() ? u256(0) : it->second;
  }
  u256 hi_of(const std::string& v) const {
    auto it = hi.find(v);
    return it == hi.end() ? kMaxWord : it->second;
  }

  void bind(const std::string& v, const u256& value) {
    auto it = binding.find(v);
    if (it != binding.end()) {
      if (it->second != value) proven_unsat = true;
      return;
    }
    if (value < lo_of(v) || value > hi_of(v) || diseq[v].count(value)) {
      proven_unsat = true;
      return;
    }
    binding[v] = value;
  }
  void bound_lo(const std::string& v, const u256& value) {
    if (value > lo_of(v)) lo[v] = value;
    if (lo_of(v) > hi_of(v)) proven_unsat = true;
    check_pinned(v);
  }
  void bound_hi(const std::string& v, const u256& value) {
    if (value < hi_of(v)) hi[v] = value;
    if (lo_of(v) > hi_of(v)) proven_unsat = true;
    check_pinned(v);
  }
  void check_pinned(const std::string& v) {
    if (!proven_unsat && lo_of(v) == hi_of(v) && !binding.count(v)) bind(v, lo_of(v));
  }

  // Ground evaluation; nullopt when a free variable blocks it.
  std::optional<u256> eval_word(const Sexp& s, const std::map<std::string, u256>& model) const {
    if (auto lit = parse_literal(s)) return lit;
    if (s.is_atom()) {
      auto it = model.find(s.atom);
      if (it != model.end()) return it->second;
      auto b = binding.find(s.atom);
      if (b != binding.end()) return b->second;
      return std::nullopt;
    }
    if (s.items.empty() || !s.items[0].is_atom()) return std::nullopt;
    const std::string& op = s.items[0].atom;
    auto arg = [&](std::size_t i) { return eval_word(s.items[i], model); };
    if (op == "bvadd" || op == "bvsub" || op == "bvmul" || op == "bvudiv" || op == "bvand" ||
        op == "bvor") {
      auto a = arg(1), b = arg(2);
      if (!a || !b) return std::nullopt;
      if (op == "bvadd") return *a + *b;
      if (op == "bvsub") return *a - *b;
      if (op == "bvmul") return *a * *b;
      if (op == "bvudiv") return *b == 0 ? u256(0) : u256(*a / *b);
      if (op == "bvand") return *a & *b;
      return *a | *b;
    }
    if (op == "bvnot") {
      auto a = arg(1);
      if (!a) return std::nullopt;
      return ~*a;
    }
    if (op == "ite") {
      auto c = eval_bool(s.items[1], model);
      if (!c) return std::nullopt;
      return arg(*c ? 2 : 3);
    }
    if (declared_funs.count(op)) {
      // Fixed interpretation: the contract-ABI hash of the argument words.
      revex::evm::Bytes buf;
      for (std::size_t i = 1; i < s.items.size(); ++i) {
        auto a = arg(i);
        if (!a) return std::nullopt;
        auto bytes = revex::evm::to_be_bytes(*a);
        buf.insert(buf.end(), bytes.begin(), bytes.end());
      }
      return revex::evm::keccak256_word(buf);
    }
    return std::nullopt;
  }

  std::optional<bool> eval_bool(const Sexp& s, const std::map<std::string, u256>& model) const {
    if (s.is_atom()) {
      if (s.atom == "true") return true;
      if (s.atom == "false") return false;
      return std::nullopt;
    }
    if (s.items.empty() || !s.items[0].is_atom()) return std::nullopt;
    const std::string& op = s.items[0].atom;
    if (op == "not") {
      auto a = eval_bool(s.items[1], model);
      if (!a) return std::nullopt;
      return !*a;
    }
    if (op == "and" || op == "or") {
      bool all = true, any = false, indeterminate = false;
      for (std::size_t i = 1; i < s.items.size(); ++i) {
        auto a = eval_bool(s.items[i], model);
        if (!a) {
          indeterminate = true;
          continue;
        }
        all = all && *a;
        any = any || *a;
      }
      if (op == "and") return (!all && !indeterminate) ? std::optional<bool>(false)
                              : indeterminate          ? std::nullopt
                                                       : std::optional<bool>(all);
      return any ? std::optional<bool>(true)
                 : (indeterminate ? std::nullopt : std::optional<bool>(false));
    }
    if (op == "=" || op == "distinct" || op == "bvult" || op == "bvugt" || op == "bvule" ||
        op == "bvuge") {
      auto a = eval_word(s.items[1], model);
      auto b = eval_word(s.items[2], model);
      if (!a || !b) return std::nullopt;
      if (op == "=") return *a == *b;
      if (op == "distinct") return *a != *b;
      if (op == "bvult") return *a < *b;
      if (op == "bvugt") return *a > *b;
      if (op == "bvule") return *a <= *b;
      return *a >= *b;
    }
    return std::nullopt;
  }

  // One propagation visit of a boolean with known polarity.
  void propagate(const Sexp& s, bool polarity) {
    if (proven_unsat) return;
    if (s.is_atom()) return;
    if (s.items.empty() || !s.items[0].is_atom()) return;
    const std::string& op = s.items[0].atom;

    if (op == "not") {
      propagate(s.items[1], !polarity);
      return;
    }
    if ((op == "and" && polarity) || (op == "or" && !polarity)) {
      for (std::size_t i = 1; i < s.items.size(); ++i) propagate(s.items[i], polarity);
      return;
    }
    if (op != "=" && op != "distinct" && op != "bvult" && op != "bvugt") return;

    const Sexp* a = &s.items[1];
    const Sexp* b = &s.items[2];

    // Melt (= (ite C x y) z) with ground x,y,z into a constraint on C.
    if ((op == "=" || op == "distinct") && !a->is_atom() && a->items.size() == 4 &&
        a->items[0].atom == "ite") {
      bool pol = op == "=" ? polarity : !polarity;
      auto x = eval_word(a->items[2], {});
      auto y = eval_word(a->items[3], {});
      auto z = eval_word(*b, {});
      if (x && y && z) {
        if (*x == *z && *y != *z) propagate(a->items[1], pol);
        else if (*x != *z && *y == *z) propagate(a->items[1], !pol);
        else if (*x != *z && *y != *z && pol) proven_unsat = true;
        return;
      }
    }

    auto ca = eval_word(*a, {});
    auto cb = eval_word(*b, {});
    if (ca && cb) {
      bool holds = op == "="          ? *ca == *cb
                   : op == "distinct" ? *ca != *cb
                   : op == "bvult"    ? *ca < *cb
                                      : *ca > *cb;
      if (holds != polarity) proven_unsat = true;
      return;
    }
    // Orient: variable on the left.
    bool flipped = false;
    if (!is_var(*a) && is_var(*b)) {
      std::swap(a, b);
      std::swap(ca, cb);
      flipped = true;
    }
    if (!is_var(*a) || !cb) return;
    const std::string& v = a->atom;
    const u256& c = *cb;

    if (op == "=") {
      if (polarity) bind(v, c);
      else diseq[v].insert(c);
      return;
    }
    if (op == "distinct") {
      if (polarity) diseq[v].insert(c);
      else bind(v, c);
      return;
    }
    // v < c holds for: (bvult v c) and (bvugt c v).
    bool var_less = (op == "bvult" && !flipped) || (op == "bvugt" && flipped);
    if (polarity) {
      if (var_less) {
        if (c == 0) { proven_unsat = true; return; }
        bound_hi(v, c - 1);
      } else {
        if (c == kMaxWord) { proven_unsat = true; return; }
        bound_lo(v, c + 1);
      }
    } else {
      if (var_less) bound_lo(v, c);
      else bound_hi(v, c);
    }
  }

  std::vector<u256> candidates(const std::string& v) const {
    std::vector<u256> out;
    u256 l = lo_of(v), h = hi_of(v);
    const auto dit = diseq.find(v);
    const std::set<u256> empty;
    const std::set<u256>& avoid = dit == diseq.end() ? empty : dit->second;
    auto add = [&](u256 x) {
      if (x < l || x > h || avoid.count(x)) return;
      if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
    };
    // Smallest non-excluded value from the bottom of the interval.
    u256 probe = l;
    for (int i = 0; i < 64 && probe <= h; ++i) {
      if (!avoid.count(probe)) { add(probe); break; }
      if (probe == kMaxWord) break;
      ++probe;
    }
    add(1);
    add(h);
    if (!avoid.empty()) {
      u256 beyond = *avoid.rbegin();
      if (beyond != kMaxWord) add(beyond + 1);
    }
    add(u256("0x1234567890abcdef"));
    return out;
  }

  bool search(std::vector<std::string>& order, std::size_t index,
              std::map<std::string, u256>& model, std::uint64_t& nodes) {
    if (proven_unsat || nodes > 50000) return false;
    ++nodes;
    // Check every assert that is ground under the current partial model.
    for (const auto& a : asserts) {
      auto r = eval_bool(a, model);
      if (r && !*r) return false;
    }
    if (index == order.size()) return true;
    const std::string& v = order[index];
    if (model.count(v)) return search(order, index + 1, model, nodes);
    for (const u256& c : candidates(v)) {
      model[v] = c;
      if (search(order, index + 1, model, nodes)) return true;
      model.erase(v);
    }
    return false;
  }
};

}  // namespace

int main() {
  std::stringstream buffer;
  buffer << std::cin.rdbuf();
  auto tokens = tokenize(buffer.str());

  Solver solver;
  bool answered = false;
  std::size_t pos = 0;
  while (pos < tokens.size()) {
    Sexp cmd = parse(tokens, pos);
    if (cmd.is_atom() || cmd.items.empty() || !cmd.items[0].is_atom()) continue;
    const std::string& head = cmd.items[0].atom;
    if (head == "declare-const" && cmd.items.size() >= 2) {
      solver.consts.push_back(cmd.items[1].atom);
      solver.declared.insert(cmd.items[1].atom);
    } else if (head == "declare-fun" && cmd.items.size() >= 4) {
      if (cmd.items[2].items.empty()) {
        solver.consts.push_back(cmd.items[1].atom);
        solver.declared.insert(cmd.items[1].atom);
      } else {
        solver.declared_funs.insert(cmd.items[1].atom);
      }
    } else if (head == "assert" && cmd.items.size() >= 2) {
      solver.asserts.push_back(cmd.items[1]);
    } else if (head == "check-sat") {
      // Propagate to a fixpoint: bindings feed ground evaluation next round.
      for (int round = 0; round < 16 && !solver.proven_unsat; ++round) {
        auto before = solver.binding.size();
        auto before_diseq = solver.diseq;
        auto before_lo = solver.lo;
        auto before_hi = solver.hi;
        for (const auto& a : solver.asserts) solver.propagate(a, true);
        if (solver.binding.size() == before && solver.diseq == before_diseq &&
            solver.lo == before_lo && solver.hi == before_hi) {
          break;
        }
      }
      if (solver.proven_unsat) {
        std::cout << "unsat\n";
        answered = true;
        continue;
      }
      std::map<std::string, u256> model = solver.binding;
      std::vector<std::string> order;
      for (const auto& v : solver.consts) {
        if (!model.count(v)) order.push_back(v);
      }
      std::uint64_t nodes = 0;
      if (solver.search(order, 0, model, nodes)) {
        // Double-check the full model before answering.
        bool all_hold = true;
        for (const auto& a : solver.asserts) {
          auto r = solver.eval_bool(a, model);
          if (!r || !*r) { all_hold = false; break; }
        }
        if (all_hold) {
          std::cout << "sat\n(model\n";
          for (const auto& v : solver.consts) {
            u256 value = model.count(v) ? model[v] : u256(0);
            std::cout << "  (define-fun " << v << " () (_ BitVec 256) #x"
                      << revex::evm::to_hex64(value) << ")\n";
          }
          std::cout << ")\n";
          answered = true;
          continue;
        }
      }
      std::cout << "unknown\n";
      answered = true;
    } else if (head == "get-model" || head == "exit" || head == "set-logic" ||
               head == "set-option" || head == "set-info") {
      // get-model output is emitted with check-sat; the rest are accepted
      // silently.
    }
  }
  if (!answered) std::cout << "unknown\n";
  return 0;
}
