#include "revex/sym/expr.hpp"

#include <algorithm>
#include <sstream>

#include "revex/errors.hpp"
#include "revex/evm/keccak.hpp"

namespace revex::sym {

namespace {

ExprRef make_const(u256 value) {
  auto e = std::make_shared<Expr>();
  e->op = ExprOp::kConst;
  e->value = std::move(value);
  e->depth = 1;
  return e;
}

ExprRef make_node(ExprOp op, std::vector<ExprRef> args) {
  std::uint32_t depth = 0;
  for (const auto& a : args) depth = std::max(depth, a->depth);
  if (depth + 1 > kMaxExprDepth) {
    throw ResourceError("expression depth exceeds " + std::to_string(kMaxExprDepth));
  }
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->args = std::move(args);
  e->depth = depth + 1;
  return e;
}

u256 fold_binary(ExprOp op, const u256& a, const u256& b) {
  switch (op) {
    case ExprOp::kAdd: return a + b;
    case ExprOp::kSub: return a - b;
    case ExprOp::kMul: return a * b;
    case ExprOp::kDiv: return b == 0 ? u256(0) : u256(a / b);
    case ExprOp::kAnd: return a & b;
    case ExprOp::kOr: return a | b;
    case ExprOp::kLt: return a < b ? 1 : 0;
    case ExprOp::kGt: return a > b ? 1 : 0;
    case ExprOp::kEq: return a == b ? 1 : 0;
    default: return 0;
  }
}

u256 concrete_hash(const std::vector<u256>& words) {
  evm::Bytes buf;
  for (const auto& w : words) {
    auto bytes = evm::to_be_bytes(w);
    buf.insert(buf.end(), bytes.begin(), bytes.end());
  }
  return evm::keccak256_word(buf);
}

}  // namespace

SymWord SymWord::constant(u256 value) { return SymWord(make_const(std::move(value)), nullptr); }

SymWord SymWord::symbol(const std::string& name) {
  auto e = std::make_shared<Expr>();
  e->op = ExprOp::kSym;
  e->name = name;
  e->depth = 1;
  return SymWord(std::move(e), nullptr);
}

SymWord SymWord::with_taint(TaintSet extra) const {
  return SymWord(node_, merge_taint(taint_, extra));
}

std::string SymWord::to_string() const { return expr_to_string(node_); }

TaintSet merge_taint(const TaintSet& a, const TaintSet& b) {
  if (!a || a->empty()) return b;
  if (!b || b->empty()) return a;
  auto merged = std::make_shared<std::set<Taint>>(*a);
  merged->insert(b->begin(), b->end());
  return merged;
}

TaintSet taint_of(const Taint& single) {
  return std::make_shared<std::set<Taint>>(std::set<Taint>{single});
}

#define REVEX_BINARY_OP(fn, opcode)                                                  \
  SymWord fn(const SymWord& a, const SymWord& b) {                                   \
    TaintSet taint = merge_taint(a.taint(), b.taint());                              \
    if (a.is_concrete() && b.is_concrete()) {                                        \
      return SymWord::constant(fold_binary(opcode, a.concrete(), b.concrete()))      \
          .with_taint(taint);                                                        \
    }                                                                                \
    return SymWord(make_node(opcode, {a.node(), b.node()}), taint);                  \
  }

REVEX_BINARY_OP(add, ExprOp::kAdd)
REVEX_BINARY_OP(sub, ExprOp::kSub)
REVEX_BINARY_OP(mul, ExprOp::kMul)
REVEX_BINARY_OP(div, ExprOp::kDiv)
REVEX_BINARY_OP(bit_and, ExprOp::kAnd)
REVEX_BINARY_OP(bit_or, ExprOp::kOr)
REVEX_BINARY_OP(lt, ExprOp::kLt)
REVEX_BINARY_OP(gt, ExprOp::kGt)
REVEX_BINARY_OP(eq, ExprOp::kEq)

#undef REVEX_BINARY_OP

SymWord bit_not(const SymWord& a) {
  if (a.is_concrete()) {
    u256 folded = ~a.concrete();
    return SymWord::constant(folded).with_taint(a.taint());
  }
  return SymWord(make_node(ExprOp::kNot, {a.node()}), a.taint());
}

SymWord is_zero(const SymWord& a) {
  if (a.is_concrete()) {
    return SymWord::constant(a.concrete() == 0 ? 1 : 0).with_taint(a.taint());
  }
  return SymWord(make_node(ExprOp::kIsZero, {a.node()}), a.taint());
}

SymWord hash_words(const std::vector<SymWord>& words) {
  TaintSet taint;
  bool all_concrete = true;
  std::vector<ExprRef> args;
  std::vector<u256> values;
  for (const auto& w : words) {
    taint = merge_taint(taint, w.taint());
    args.push_back(w.node());
    if (w.is_concrete()) values.push_back(w.concrete());
    else all_concrete = false;
  }
  if (all_concrete) {
    return SymWord::constant(concrete_hash(values)).with_taint(taint);
  }
  return SymWord(make_node(ExprOp::kHash, std::move(args)), taint);
}

void collect_symbols(const ExprRef& node, std::set<std::string>& out) {
  if (node->op == ExprOp::kSym) out.insert(node->name);
  for (const auto& a : node->args) collect_symbols(a, out);
}

void collect_hash_apps(const ExprRef& node, std::map<std::string, ExprRef>& out) {
  if (node->op == ExprOp::kHash) out.emplace(expr_to_string(node), node);
  for (const auto& a : node->args) collect_hash_apps(a, out);
}

u256 evaluate(const ExprRef& node, const std::map<std::string, u256>& model) {
  switch (node->op) {
    case ExprOp::kConst:
      return node->value;
    case ExprOp::kSym: {
      auto it = model.find(node->name);
      return it == model.end() ? u256(0) : it->second;
    }
    case ExprOp::kNot:
      return ~evaluate(node->args[0], model);
    case ExprOp::kIsZero:
      return evaluate(node->args[0], model) == 0 ? 1 : 0;
    case ExprOp::kHash: {
      std::vector<u256> values;
      values.reserve(node->args.size());
      for (const auto& a : node->args) values.push_back(evaluate(a, model));
      return concrete_hash(values);
    }
    default:
      return fold_binary(node->op, evaluate(node->args[0], model), evaluate(node->args[1], model));
  }
}

namespace {

const char* op_tag(ExprOp op) {
  switch (op) {
    case ExprOp::kAdd: return "add";
    case ExprOp::kSub: return "sub";
    case ExprOp::kMul: return "mul";
    case ExprOp::kDiv: return "div";
    case ExprOp::kAnd: return "and";
    case ExprOp::kOr: return "or";
    case ExprOp::kNot: return "not";
    case ExprOp::kLt: return "lt";
    case ExprOp::kGt: return "gt";
    case ExprOp::kEq: return "eq";
    case ExprOp::kIsZero: return "iszero";
    case ExprOp::kHash: return "hash";
    default: return "?";
  }
}

void render(const ExprRef& node, std::ostringstream& os) {
  switch (node->op) {
    case ExprOp::kConst:
      os << evm::to_hex(node->value);
      return;
    case ExprOp::kSym:
      os << node->name;
      return;
    default:
      os << "(" << op_tag(node->op);
      for (const auto& a : node->args) {
        os << " ";
        render(a, os);
      }
      os << ")";
      return;
  }
}

}  // namespace

std::string expr_to_string(const ExprRef& node) {
  std::ostringstream os;
  render(node, os);
  return os.str();
}

}  // namespace revex::sym
