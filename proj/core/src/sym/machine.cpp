#include "revex/sym/machine.hpp"

#include <algorithm>
#include <sstream>

#include "revex/errors.hpp"

namespace revex::sym {

using evm::Instruction;
using evm::Opcode;

std::string call_kind_name(CallKind kind) {
  switch (kind) {
    case CallKind::kCall: return "CALL";
    case CallKind::kCallCode: return "CALLCODE";
    case CallKind::kDelegateCall: return "DELEGATECALL";
    case CallKind::kStaticCall: return "STATICCALL";
  }
  return "CALL";
}

std::string trace_to_string(const std::vector<TraceEvent>& trace) {
  std::ostringstream os;
  for (const auto& ev : trace) {
    switch (ev.kind) {
      case TraceEvent::Kind::kTxBegin:
        os << "TX " << ev.context << " 0x" << std::hex << ev.selector << std::dec << "\n";
        break;
      case TraceEvent::Kind::kSLoad:
        os << "SLOAD " << ev.context << "@" << ev.slot << "\n";
        break;
      case TraceEvent::Kind::kSStore:
        os << "SSTORE " << ev.context << "@" << ev.slot << "\n";
        break;
      case TraceEvent::Kind::kBranch:
        os << "BRANCH " << (ev.symbolic_branch ? "sym " : "conc ") << ev.word.to_string() << "\n";
        break;
      case TraceEvent::Kind::kCallBegin:
        os << "CALL " << call_kind_name(ev.call_kind) << " " << ev.word.to_string() << " "
           << ev.value.to_string() << "\n";
        break;
      case TraceEvent::Kind::kCallEnd:
        os << "CALLEND" << (ev.reverted ? " reverted" : "") << "\n";
        break;
      case TraceEvent::Kind::kReenterBegin:
        os << "REENTER 0x" << std::hex << ev.selector << std::dec << "\n";
        break;
      case TraceEvent::Kind::kReenterEnd:
        os << "REENTEREND" << (ev.reverted ? " reverted" : "") << "\n";
        break;
      case TraceEvent::Kind::kHalt:
        os << "HALT\n";
        break;
      case TraceEvent::Kind::kRevert:
        os << "REVERT\n";
        break;
    }
  }
  return os.str();
}

Env::Env(const ingest::Corpus& corpus, bool pruning) : corpus_(&corpus) {
  for (const auto& [id, loaded] : corpus.contracts()) {
    smc_.emplace(id, prune::build_smc_cfg(loaded.cfg, pruning));
  }
}

const prune::SmcCfg& Env::smc(const std::string& contract_id) const {
  auto it = smc_.find(contract_id);
  if (it == smc_.end()) throw Error("no such contract: " + contract_id);
  return it->second;
}

const evm::Cfg& Env::cfg(const std::string& contract_id) const {
  const auto* loaded = corpus_->find(contract_id);
  if (!loaded) throw Error("no such contract: " + contract_id);
  return loaded->cfg;
}

const Instruction* Env::fetch(const std::string& contract_id, std::uint64_t pc) const {
  const auto* loaded = corpus_->find(contract_id);
  if (!loaded) return nullptr;
  const auto& instrs = loaded->instructions;
  auto it = std::lower_bound(instrs.begin(), instrs.end(), pc,
                             [](const Instruction& i, std::uint64_t p) { return i.pc < p; });
  if (it == instrs.end() || it->pc != pc) return nullptr;
  return &*it;
}

void Env::set_warned(const std::string& contract_id, std::uint32_t selector) {
  warned_contract_ = contract_id;
  warned_selector_ = selector;
}

std::optional<std::uint64_t> Env::warned_entry_pc() const {
  if (warned_contract_.empty()) return std::nullopt;
  const auto& c = cfg(warned_contract_);
  auto it = c.function_entries.find(warned_selector_);
  if (it == c.function_entries.end()) return std::nullopt;
  return c.block(it->second).first_pc;
}

void Env::set_replay(std::map<std::string, u256> model, std::set<std::uint64_t> reenter_ordinals) {
  replaying_ = true;
  replay_model_ = std::move(model);
  reenter_ordinals_ = std::move(reenter_ordinals);
}

SymWord Env::fresh(const std::string& name) const {
  if (!replaying_) return SymWord::symbol(name);
  auto it = replay_model_.find(name);
  return SymWord::constant(it == replay_model_.end() ? u256(0) : it->second);
}

Frame make_transaction_frame(const Env& env, const std::string& contract_id, std::uint32_t selector,
                             const std::string& sym_prefix, SymWord sender) {
  Frame frame;
  frame.exec_contract = contract_id;
  frame.storage_context = contract_id;
  frame.msg.sender = std::move(sender);
  frame.msg.value = env.fresh(sym_prefix + "_value");
  frame.msg.calldata[0] = SymWord::constant(u256(selector) << 224);
  frame.msg.calldata_size = env.fresh(sym_prefix + "_cds");
  frame.synthetic_calldata = true;
  frame.sym_prefix = sym_prefix;
  frame.pc = env.cfg(contract_id).block(env.cfg(contract_id).entry).first_pc;
  return frame;
}

namespace {

struct Ctx {
  MachineState& st;
  const Env& env;
  Frame& frame() { return st.frames.back(); }

  bool dead() const { return st.status != PathStatus::kRunning; }
  void invalid(const std::string& why) {
    st.status = PathStatus::kInvalid;
    st.status_reason = why;
  }
  void unknown(const std::string& why) {
    st.status = PathStatus::kUnknown;
    st.status_reason = why;
  }

  SymWord pop() {
    auto& stack = frame().stack;
    if (stack.empty()) {
      invalid("stack underflow");
      return SymWord::constant(0);
    }
    SymWord top = stack.back();
    stack.pop_back();
    return top;
  }
  void push(SymWord w) {
    auto& stack = frame().stack;
    if (stack.size() >= kMaxStackDepth) {
      invalid("stack overflow");
      return;
    }
    stack.push_back(std::move(w));
  }

  void emit(TraceEvent ev) {
    ev.frame_depth = static_cast<int>(st.frames.size()) - 1;
    st.trace.push_back(std::move(ev));
  }
};

std::optional<std::uint64_t> concrete_u64(const SymWord& w) {
  if (!w.is_concrete()) return std::nullopt;
  if (w.concrete() > u256(std::numeric_limits<std::uint32_t>::max())) return std::nullopt;
  return static_cast<std::uint64_t>(w.concrete());
}

SymWord mem_read(const Frame& frame, std::uint64_t offset) {
  auto it = frame.memory.find(offset);
  return it == frame.memory.end() ? SymWord::constant(0) : it->second;
}

SymWord normalize_true(const SymWord& cond) {
  switch (cond.node()->op) {
    case ExprOp::kLt:
    case ExprOp::kGt:
    case ExprOp::kEq:
    case ExprOp::kIsZero:
      return cond;
    default:
      return is_zero(is_zero(cond));
  }
}

// Completes a finished callee frame: pops it, restores storage on failure,
// and plumbs the success flag plus single-word return data to the caller.
void finish_frame(Ctx& ctx, bool success, std::optional<SymWord> ret) {
  Frame finished = ctx.frame();
  if (!success) ctx.st.store = finished.store_snapshot;
  ctx.st.frames.pop_back();

  if (finished.is_reenter) {
    TraceEvent ev;
    ev.kind = TraceEvent::Kind::kReenterEnd;
    ev.reverted = !success;
    ev.ordinal = finished.reenter_ordinal;
    ctx.emit(ev);
    // The adversary call that hosted the re-entry now returns to the caller:
    // attacker-controlled success and fresh return data.
    Frame& caller = ctx.frame();
    if (finished.ret_length >= 32) {
      caller.memory[finished.ret_offset] =
          ctx.env.fresh("t" + std::to_string(ctx.st.tx_index) + "_ret" + std::to_string(finished.reenter_ordinal));
    }
    ctx.push(SymWord::constant(1));
    TraceEvent end;
    end.kind = TraceEvent::Kind::kCallEnd;
    ctx.emit(end);
    return;
  }

  Frame& caller = ctx.frame();
  if (success && ret && finished.ret_length >= 32) {
    caller.memory[finished.ret_offset] = *ret;
  }
  ctx.push(SymWord::constant(success ? 1 : 0));
  TraceEvent ev;
  ev.kind = TraceEvent::Kind::kCallEnd;
  ev.reverted = !success;
  ctx.emit(ev);
}

void do_halt(Ctx& ctx, std::optional<SymWord> ret) {
  if (ctx.st.frames.size() == 1) {
    ctx.st.status = PathStatus::kStopped;
    TraceEvent ev;
    ev.kind = TraceEvent::Kind::kHalt;
    ctx.emit(ev);
    return;
  }
  finish_frame(ctx, /*success=*/true, std::move(ret));
}

void do_revert(Ctx& ctx) {
  TraceEvent ev;
  ev.kind = TraceEvent::Kind::kRevert;
  ctx.emit(ev);
  if (ctx.st.frames.size() == 1) {
    ctx.st.status = PathStatus::kReverted;
    return;
  }
  finish_frame(ctx, /*success=*/false, std::nullopt);
}

void do_sha3(Ctx& ctx) {
  SymWord off_w = ctx.pop();
  SymWord len_w = ctx.pop();
  if (ctx.dead()) return;
  auto off = concrete_u64(off_w);
  auto len = concrete_u64(len_w);
  if (!off || !len || *len == 0 || *len % 32 != 0 || *len > 128) {
    ctx.unknown("unsupported hash range");
    return;
  }
  std::vector<SymWord> words;
  for (std::uint64_t o = *off; o < *off + *len; o += 32) words.push_back(mem_read(ctx.frame(), o));
  ctx.push(hash_words(words));
}

void do_sload(Ctx& ctx) {
  SymWord slot = ctx.pop();
  if (ctx.dead()) return;
  GotKey key{ctx.frame().storage_context, slot};
  std::string canonical = key.canonical_slot();
  SymWord value = ctx.st.store.read(key);
  value = value.with_taint(merge_taint(taint_of({key.contract_id, canonical}), slot.taint()));

  TraceEvent ev;
  ev.kind = TraceEvent::Kind::kSLoad;
  ev.context = key.contract_id;
  ev.slot = canonical;
  ev.word = value;
  ev.pc = ctx.frame().pc;
  ctx.emit(ev);
  ctx.push(std::move(value));
}

void do_sstore(Ctx& ctx) {
  if (ctx.frame().is_static) {
    ctx.invalid("storage write in a static context");
    return;
  }
  SymWord slot = ctx.pop();
  SymWord value = ctx.pop();
  if (ctx.dead()) return;
  GotKey key{ctx.frame().storage_context, slot};

  TraceEvent ev;
  ev.kind = TraceEvent::Kind::kSStore;
  ev.context = key.contract_id;
  ev.slot = key.canonical_slot();
  ev.word = value;
  ev.pc = ctx.frame().pc;
  ctx.emit(ev);
  ctx.st.store.write(key, std::move(value));
}

void do_calldataload(Ctx& ctx) {
  SymWord off_w = ctx.pop();
  if (ctx.dead()) return;
  auto off = concrete_u64(off_w);
  if (!off) {
    ctx.unknown("symbolic calldata offset");
    return;
  }
  Frame& frame = ctx.frame();
  auto it = frame.msg.calldata.find(*off);
  if (it != frame.msg.calldata.end()) {
    ctx.push(it->second);
    return;
  }
  if (!frame.synthetic_calldata) {
    ctx.push(SymWord::constant(0));
    return;
  }
  SymWord word = ctx.env.fresh(frame.sym_prefix + "_cd" + std::to_string(*off));
  frame.msg.calldata[*off] = word;
  ctx.push(word);
}

// Pops call operands, resolves the callee, and either descends into a
// loaded contract or applies the adversary model for symbolic targets.
// Returns extra forked states (the no-re-entry variant).
std::vector<MachineState> do_call(Ctx& ctx, CallKind kind) {
  Frame& frame = ctx.frame();
  ctx.pop();  // gas, ignored
  SymWord target = ctx.pop();
  SymWord value = SymWord::constant(0);
  if (kind == CallKind::kCall || kind == CallKind::kCallCode) {
    value = ctx.pop();
  } else if (kind == CallKind::kDelegateCall) {
    value = frame.msg.value;
  }
  SymWord args_off_w = ctx.pop();
  SymWord args_len_w = ctx.pop();
  SymWord ret_off_w = ctx.pop();
  SymWord ret_len_w = ctx.pop();
  if (ctx.dead()) return {};

  auto args_off = concrete_u64(args_off_w);
  auto args_len = concrete_u64(args_len_w);
  auto ret_off = concrete_u64(ret_off_w);
  auto ret_len = concrete_u64(ret_len_w);
  if (!args_off || !args_len || !ret_off || !ret_len) {
    ctx.unknown("symbolic call argument window");
    return {};
  }

  bool in_static = frame.is_static || kind == CallKind::kStaticCall;
  std::uint64_t pc = frame.pc;

  // During replay every symbol is already a model value, so adversary calls
  // are recognized by their target not resolving to a loaded contract.
  bool adversary = !target.is_concrete() ||
                   (ctx.env.replaying() && !ctx.env.corpus().find_by_address(target.concrete()));

  TraceEvent begin;
  begin.kind = TraceEvent::Kind::kCallBegin;
  begin.context = frame.exec_contract;
  begin.call_kind = kind;
  begin.word = target;
  begin.value = value;
  begin.symbolic_target = adversary;
  begin.pc = pc;
  begin.ordinal = ctx.st.attacker_calls;

  if (!adversary) {
    ctx.emit(begin);
    const auto* callee = ctx.env.corpus().find_by_address(target.concrete());
    if (!callee || ctx.st.frames.size() >= static_cast<std::size_t>(ctx.env.max_call_depth)) {
      // Externally-owned account (or the depth bound): the call succeeds and
      // returns nothing.
      ctx.push(SymWord::constant(1));
      TraceEvent end;
      end.kind = TraceEvent::Kind::kCallEnd;
      ctx.emit(end);
      return {};
    }
    const auto* caller_bundle = ctx.env.corpus().find(frame.exec_contract);
    Frame callee_frame;
    callee_frame.exec_contract = callee->bundle.contract_id;
    callee_frame.storage_context =
        (kind == CallKind::kCall || kind == CallKind::kStaticCall) ? callee->bundle.contract_id
                                                                   : frame.storage_context;
    callee_frame.msg.sender = (kind == CallKind::kDelegateCall)
                                  ? frame.msg.sender
                                  : SymWord::constant(caller_bundle->bundle.address);
    callee_frame.msg.value = value;
    for (const auto& [off, word] : frame.memory) {
      if (off >= *args_off && off < *args_off + *args_len) {
        callee_frame.msg.calldata[off - *args_off] = word;
      }
    }
    callee_frame.msg.calldata_size = SymWord::constant(*args_len);
    callee_frame.synthetic_calldata = false;
    callee_frame.sym_prefix = frame.sym_prefix + "c";
    callee_frame.pc =
        ctx.env.cfg(callee->bundle.contract_id).block(ctx.env.cfg(callee->bundle.contract_id).entry).first_pc;
    callee_frame.is_static = in_static;
    callee_frame.ret_offset = *ret_off;
    callee_frame.ret_length = *ret_len;
    callee_frame.store_snapshot = ctx.st.store;
    ctx.st.frames.push_back(std::move(callee_frame));
    return {};
  }

  // Symbolic target: the adversary. The call itself succeeds with fresh
  // return data; a plain CALL outside a static context may additionally
  // re-enter the warned function once.
  std::uint64_t ordinal = ctx.st.attacker_calls++;
  begin.ordinal = ordinal;

  auto complete_without_reentry = [&](MachineState st) {
    Ctx alt{st, ctx.env};
    alt.emit(begin);
    Frame& f = alt.frame();
    if (*ret_len >= 32) {
      f.memory[*ret_off] =
          alt.env.fresh("t" + std::to_string(st.tx_index) + "_ret" + std::to_string(ordinal));
    }
    alt.push(SymWord::constant(1));
    TraceEvent end;
    end.kind = TraceEvent::Kind::kCallEnd;
    alt.emit(end);
    return st;
  };

  auto warned_entry = ctx.env.warned_entry_pc();
  bool may_reenter = kind == CallKind::kCall && !in_static && !ctx.st.reentered && warned_entry &&
                     ctx.st.frames.size() < static_cast<std::size_t>(ctx.env.max_call_depth) &&
                     (!ctx.env.replaying() || ctx.env.replay_reenters_at(ordinal));

  if (!may_reenter) {
    MachineState st = complete_without_reentry(std::move(ctx.st));
    ctx.st = std::move(st);
    return {};
  }

  // Fork: the re-entering variant continues in ctx, the plain variant is
  // returned as a sibling state. During replay only the recorded choice runs.
  std::vector<MachineState> siblings;
  if (!ctx.env.replaying()) {
    siblings.push_back(complete_without_reentry(ctx.st));
  }

  ctx.emit(begin);
  ctx.st.reentered = true;
  ctx.st.reenter_ordinals.insert(ordinal);

  Frame reenter;
  reenter.exec_contract = ctx.env.warned_contract();
  reenter.storage_context = ctx.env.warned_contract();
  reenter.msg.sender = ctx.env.attacker_sender();
  reenter.msg.value = ctx.env.fresh("re" + std::to_string(ordinal) + "_value");
  reenter.msg.calldata[0] = SymWord::constant(u256(ctx.env.warned_selector()) << 224);
  reenter.msg.calldata_size = ctx.env.fresh("re" + std::to_string(ordinal) + "_cds");
  reenter.synthetic_calldata = true;
  reenter.sym_prefix = "re" + std::to_string(ordinal);
  reenter.pc = *warned_entry;
  reenter.is_static = false;
  reenter.is_reenter = true;
  reenter.reenter_ordinal = ordinal;
  reenter.ret_offset = *ret_off;
  reenter.ret_length = *ret_len;
  reenter.store_snapshot = ctx.st.store;

  TraceEvent rb;
  rb.kind = TraceEvent::Kind::kReenterBegin;
  rb.selector = ctx.env.warned_selector();
  rb.ordinal = ordinal;
  ctx.emit(rb);
  ctx.st.frames.push_back(std::move(reenter));
  return siblings;
}

// Symbolic JUMPI: fork per the pruning policy's successor order; concrete
// JUMPI follows the branch the condition dictates, policy notwithstanding.
std::vector<MachineState> do_jumpi(Ctx& ctx) {
  SymWord target = ctx.pop();
  SymWord cond = ctx.pop();
  if (ctx.dead()) return {};
  auto taken_pc = concrete_u64(target);
  if (!taken_pc) {
    ctx.unknown("dynamic jump target");
    return {};
  }
  const Instruction* dest = ctx.env.fetch(ctx.frame().exec_contract, *taken_pc);
  if (!dest || dest->opcode != Opcode::kJumpDest) {
    ctx.invalid("jump to non-JUMPDEST");
    return {};
  }
  std::uint64_t fall_pc = ctx.frame().pc + 1;

  if (cond.is_concrete()) {
    TraceEvent ev;
    ev.kind = TraceEvent::Kind::kBranch;
    ev.word = cond;
    ev.symbolic_branch = false;
    ev.pc = ctx.frame().pc;
    ev.context = ctx.frame().exec_contract;
    // Taint survives constant folding, so replayed (all-concrete) traces
    // still show which slots guarded the branch.
    if (cond.taint()) ev.guard_taint = *cond.taint();
    ctx.emit(ev);
    ctx.frame().pc = cond.concrete() != 0 ? *taken_pc : fall_pc;
    return {};
  }

  const auto& contract = ctx.frame().exec_contract;
  const auto& cfg = ctx.env.cfg(contract);
  const auto& smc = ctx.env.smc(contract);
  int block_id = cfg.block_of_pc(ctx.frame().pc);
  std::vector<int> policy =
      block_id >= 0 ? prune::next_successors(smc, block_id) : std::vector<int>{};

  struct Choice {
    std::uint64_t pc;
    bool taken;
  };
  std::vector<Choice> choices;
  bool taken_used = false;
  bool fall_used = false;
  for (int succ : policy) {
    std::uint64_t first_pc = cfg.block(succ).first_pc;
    if (!taken_used && first_pc == *taken_pc) {
      choices.push_back({*taken_pc, true});
      taken_used = true;
    } else if (!fall_used && first_pc == fall_pc) {
      choices.push_back({fall_pc, false});
      fall_used = true;
    }
  }

  std::vector<MachineState> out;
  for (const auto& choice : choices) {
    MachineState next = ctx.st;
    Ctx nctx{next, ctx.env};
    SymWord word = choice.taken ? normalize_true(cond) : is_zero(cond);

    TraceEvent ev;
    ev.kind = TraceEvent::Kind::kBranch;
    ev.word = word;
    ev.symbolic_branch = true;
    ev.pc = nctx.frame().pc;
    ev.context = contract;
    if (cond.taint()) ev.guard_taint = *cond.taint();
    nctx.emit(ev);

    next.constraints.push_back(Constraint{word, contract, nctx.frame().pc});
    nctx.frame().pc = choice.pc;
    out.push_back(std::move(next));
  }
  // The current state is consumed by the fork (possibly into nothing, when
  // every branch was pruned away).
  ctx.st.status = PathStatus::kInvalid;
  ctx.st.status_reason = "forked";
  return out;
}

}  // namespace

std::vector<MachineState> step(const MachineState& input, const Env& env) {
  MachineState state = input;
  Ctx ctx{state, env};
  Frame& frame = ctx.frame();

  const Instruction* instr = env.fetch(frame.exec_contract, frame.pc);
  if (!instr) {
    // Ran off the end of code: implicit halt.
    do_halt(ctx, std::nullopt);
    return {std::move(state)};
  }

  Opcode op = instr->opcode;
  std::uint64_t next_pc = frame.pc + instr->encoded_size();

  try {
    if (evm::is_push(op)) {
      ctx.push(SymWord::constant(instr->immediate_word()));
    } else if (evm::is_dup(op)) {
      int n = evm::dup_index(op);
      if (frame.stack.size() < static_cast<std::size_t>(n)) {
        ctx.invalid("stack underflow");
      } else {
        ctx.push(frame.stack[frame.stack.size() - static_cast<std::size_t>(n)]);
      }
    } else if (evm::is_swap(op)) {
      int n = evm::swap_index(op);
      if (frame.stack.size() < static_cast<std::size_t>(n) + 1) {
        ctx.invalid("stack underflow");
      } else {
        std::swap(frame.stack[frame.stack.size() - 1],
                  frame.stack[frame.stack.size() - 1 - static_cast<std::size_t>(n)]);
      }
    } else {
      switch (op) {
        case Opcode::kStop:
          do_halt(ctx, std::nullopt);
          return {std::move(state)};
        case Opcode::kAdd: { auto a = ctx.pop(); auto b = ctx.pop(); if (!ctx.dead()) ctx.push(add(a, b)); break; }
        case Opcode::kMul: { auto a = ctx.pop(); auto b = ctx.pop(); if (!ctx.dead()) ctx.push(mul(a, b)); break; }
        case Opcode::kSub: { auto a = ctx.pop(); auto b = ctx.pop(); if (!ctx.dead()) ctx.push(sub(a, b)); break; }
        case Opcode::kDiv: { auto a = ctx.pop(); auto b = ctx.pop(); if (!ctx.dead()) ctx.push(div(a, b)); break; }
        case Opcode::kLt: { auto a = ctx.pop(); auto b = ctx.pop(); if (!ctx.dead()) ctx.push(lt(a, b)); break; }
        case Opcode::kGt: { auto a = ctx.pop(); auto b = ctx.pop(); if (!ctx.dead()) ctx.push(gt(a, b)); break; }
        case Opcode::kEq: { auto a = ctx.pop(); auto b = ctx.pop(); if (!ctx.dead()) ctx.push(eq(a, b)); break; }
        case Opcode::kIsZero: { auto a = ctx.pop(); if (!ctx.dead()) ctx.push(is_zero(a)); break; }
        case Opcode::kAnd: { auto a = ctx.pop(); auto b = ctx.pop(); if (!ctx.dead()) ctx.push(bit_and(a, b)); break; }
        case Opcode::kOr: { auto a = ctx.pop(); auto b = ctx.pop(); if (!ctx.dead()) ctx.push(bit_or(a, b)); break; }
        case Opcode::kNot: { auto a = ctx.pop(); if (!ctx.dead()) ctx.push(bit_not(a)); break; }
        case Opcode::kSha3:
          do_sha3(ctx);
          break;
        case Opcode::kCaller:
          ctx.push(frame.msg.sender);
          break;
        case Opcode::kCallValue:
          ctx.push(frame.msg.value);
          break;
        case Opcode::kCallDataLoad:
          do_calldataload(ctx);
          break;
        case Opcode::kCallDataSize:
          ctx.push(frame.msg.calldata_size);
          break;
        case Opcode::kPop:
          ctx.pop();
          break;
        case Opcode::kMLoad: {
          auto off_w = ctx.pop();
          if (ctx.dead()) break;
          auto off = concrete_u64(off_w);
          if (!off) { ctx.unknown("symbolic memory offset"); break; }
          ctx.push(mem_read(frame, *off));
          break;
        }
        case Opcode::kMStore: {
          auto off_w = ctx.pop();
          auto val = ctx.pop();
          if (ctx.dead()) break;
          auto off = concrete_u64(off_w);
          if (!off) { ctx.unknown("symbolic memory offset"); break; }
          frame.memory[*off] = val;
          break;
        }
        case Opcode::kSLoad:
          do_sload(ctx);
          break;
        case Opcode::kSStore:
          do_sstore(ctx);
          break;
        case Opcode::kJump: {
          auto target = ctx.pop();
          if (ctx.dead()) break;
          auto pc = concrete_u64(target);
          if (!pc) { ctx.unknown("dynamic jump target"); break; }
          const Instruction* dest = env.fetch(frame.exec_contract, *pc);
          if (!dest || dest->opcode != Opcode::kJumpDest) {
            ctx.invalid("jump to non-JUMPDEST");
            break;
          }
          frame.pc = *pc;
          return {std::move(state)};
        }
        case Opcode::kJumpI: {
          auto forks = do_jumpi(ctx);
          if (state.status == PathStatus::kInvalid && state.status_reason == "forked") {
            return forks;
          }
          // Concrete branch or dead path: the state itself continues.
          return {std::move(state)};
        }
        case Opcode::kPc:
          ctx.push(SymWord::constant(frame.pc));
          break;
        case Opcode::kJumpDest:
          break;
        case Opcode::kCall:
        case Opcode::kCallCode:
        case Opcode::kDelegateCall:
        case Opcode::kStaticCall: {
          CallKind kind = op == Opcode::kCall          ? CallKind::kCall
                          : op == Opcode::kCallCode    ? CallKind::kCallCode
                          : op == Opcode::kDelegateCall ? CallKind::kDelegateCall
                                                        : CallKind::kStaticCall;
          // The callee (or adversary) frame starts fresh; the caller resumes
          // after the call site.
          frame.pc = next_pc;
          auto siblings = do_call(ctx, kind);
          std::vector<MachineState> out;
          out.push_back(std::move(state));
          for (auto& sib : siblings) out.push_back(std::move(sib));
          return out;
        }
        case Opcode::kReturn: {
          auto off_w = ctx.pop();
          auto len_w = ctx.pop();
          if (ctx.dead()) break;
          auto off = concrete_u64(off_w);
          auto len = concrete_u64(len_w);
          std::optional<SymWord> ret;
          if (off && len && *len >= 32) ret = mem_read(frame, *off);
          do_halt(ctx, std::move(ret));
          return {std::move(state)};
        }
        case Opcode::kRevert:
          do_revert(ctx);
          return {std::move(state)};
        case Opcode::kInvalid:
        default:
          ctx.invalid("INVALID opcode");
          break;
      }
    }
  } catch (const ResourceError& e) {
    ctx.unknown(e.what());
  }

  // Every frame-changing opcode returned above, so the active frame is still
  // the one this instruction ran in.
  if (state.status == PathStatus::kRunning) state.frames.back().pc = next_pc;
  return {std::move(state)};
}

}  // namespace revex::sym
