#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "revex/evm/word.hpp"

namespace revex::sym {

using evm::u256;

// Expression depth guard; exceeding it raises ResourceError and the path is
// reported unknown.
constexpr std::uint32_t kMaxExprDepth = 10000;

enum class ExprOp : std::uint8_t {
  kConst,
  kSym,
  kAdd,
  kSub,
  kMul,
  kDiv,
  kAnd,
  kOr,
  kNot,
  kLt,
  kGt,
  kEq,
  kIsZero,
  kHash,  // uninterpreted hash over one or two words
};

struct Expr;
using ExprRef = std::shared_ptr<const Expr>;

struct Expr {
  ExprOp op = ExprOp::kConst;
  u256 value;               // kConst
  std::string name;         // kSym
  std::vector<ExprRef> args;
  std::uint32_t depth = 1;
};

// A slot identity a value data-depends on: (storage context, canonical slot).
using Taint = std::pair<std::string, std::string>;
using TaintSet = std::shared_ptr<const std::set<Taint>>;

// 256-bit machine word: concrete value or symbolic expression, plus the set
// of storage slots its value was derived from. Concrete folding is eager and
// never loses taint.
class SymWord {
 public:
  SymWord() : SymWord(constant(0)) {}

  static SymWord constant(u256 value);
  static SymWord symbol(const std::string& name);

  bool is_concrete() const { return node_->op == ExprOp::kConst; }
  const u256& concrete() const { return node_->value; }
  const ExprRef& node() const { return node_; }
  std::uint32_t depth() const { return node_->depth; }

  const TaintSet& taint() const { return taint_; }
  SymWord with_taint(TaintSet extra) const;

  // Canonical rendering; structural equality of words is string equality.
  std::string to_string() const;

  friend SymWord add(const SymWord&, const SymWord&);
  friend SymWord sub(const SymWord&, const SymWord&);
  friend SymWord mul(const SymWord&, const SymWord&);
  friend SymWord div(const SymWord&, const SymWord&);
  friend SymWord bit_and(const SymWord&, const SymWord&);
  friend SymWord bit_or(const SymWord&, const SymWord&);
  friend SymWord bit_not(const SymWord&);
  friend SymWord lt(const SymWord&, const SymWord&);
  friend SymWord gt(const SymWord&, const SymWord&);
  friend SymWord eq(const SymWord&, const SymWord&);
  friend SymWord is_zero(const SymWord&);
  friend SymWord hash_words(const std::vector<SymWord>& words);

 private:
  SymWord(ExprRef node, TaintSet taint) : node_(std::move(node)), taint_(std::move(taint)) {}

  ExprRef node_;
  TaintSet taint_;  // nullptr means empty
};

SymWord add(const SymWord&, const SymWord&);
SymWord sub(const SymWord&, const SymWord&);
SymWord mul(const SymWord&, const SymWord&);
SymWord div(const SymWord&, const SymWord&);
SymWord bit_and(const SymWord&, const SymWord&);
SymWord bit_or(const SymWord&, const SymWord&);
SymWord bit_not(const SymWord&);
SymWord lt(const SymWord&, const SymWord&);
SymWord gt(const SymWord&, const SymWord&);
SymWord eq(const SymWord&, const SymWord&);
SymWord is_zero(const SymWord&);
// Hash of one or two words: concrete keccak when all words are concrete,
// an uninterpreted term otherwise.
SymWord hash_words(const std::vector<SymWord>& words);

TaintSet merge_taint(const TaintSet& a, const TaintSet& b);
TaintSet taint_of(const Taint& single);

// Collects every distinct symbol name in the expression.
void collect_symbols(const ExprRef& node, std::set<std::string>& out);
// Collects every distinct hash application (by canonical string).
void collect_hash_apps(const ExprRef& node, std::map<std::string, ExprRef>& out);

// Evaluates under a model (symbol -> value, missing symbols read as zero).
// Hash applications are computed with the real keccak over their evaluated
// arguments, so replays agree with concrete execution.
u256 evaluate(const ExprRef& node, const std::map<std::string, u256>& model);

std::string expr_to_string(const ExprRef& node);

}  // namespace revex::sym
