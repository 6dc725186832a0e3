#include <doctest.h>

#include "revex/errors.hpp"
#include "revex/evm/assembler.hpp"
#include "revex/ingest/bundle.hpp"
#include "revex/sym/machine.hpp"
#include "revex/sym/runner.hpp"

using namespace revex;
using namespace revex::sym;

namespace {

ingest::ContractBundle bundle_of(const std::string& id, const std::string& asm_text,
                                 const std::string& address) {
  ingest::ContractBundle b;
  b.contract_id = id;
  b.code = evm::assemble(asm_text);
  b.address = evm::parse_u256(address);
  return b;
}

// Depth-first run of a single seeded transaction; returns terminal states.
std::vector<MachineState> run_all(const Env& env, MachineState seed, int max_steps = 5000) {
  std::vector<MachineState> done;
  std::vector<MachineState> work{std::move(seed)};
  int steps = 0;
  while (!work.empty() && steps++ < max_steps) {
    MachineState st = std::move(work.back());
    work.pop_back();
    if (st.status != PathStatus::kRunning) {
      done.push_back(std::move(st));
      continue;
    }
    for (auto& s : step(st, env)) work.push_back(std::move(s));
  }
  return done;
}

MachineState seed_tx(const Env& env, const std::string& contract, std::uint32_t selector,
                     int tx_index = 0) {
  MachineState st;
  st.tx_index = tx_index;
  std::string prefix = "t" + std::to_string(tx_index);
  st.frames.push_back(
      make_transaction_frame(env, contract, selector, prefix, SymWord::symbol(prefix + "_sender")));
  return st;
}

const SymWord* store_value(const GlobalStore& store, const std::string& contract,
                           const std::string& slot) {
  auto part = store.partitions().find(contract);
  if (part == store.partitions().end()) return nullptr;
  auto it = part->second.find(slot);
  if (it == part->second.end()) return nullptr;
  return &it->second.value;
}

}  // namespace

TEST_CASE("words: folding, modular semantics, depth guard") {
  auto two = SymWord::constant(2);
  auto three = SymWord::constant(3);
  CHECK(add(two, three).concrete() == 5);
  CHECK(sub(two, three).concrete() == evm::parse_u256(
      "0xffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffff"));
  CHECK(div(two, SymWord::constant(0)).concrete() == 0);
  CHECK(is_zero(SymWord::constant(0)).concrete() == 1);
  CHECK(bit_not(SymWord::constant(0)).concrete() == ~evm::u256(0));

  auto x = SymWord::symbol("x");
  CHECK_FALSE(add(x, two).is_concrete());
  CHECK(add(x, two).to_string() == "(add x 0x2)");

  SymWord deep = x;
  CHECK_THROWS_AS(
      [&] {
        for (int i = 0; i < 20000; ++i) deep = add(deep, two);
      }(),
      ResourceError);
}

TEST_CASE("taint survives constant folding") {
  auto tainted = SymWord::constant(0).with_taint(taint_of({"c", "0x5"}));
  auto folded = lt(tainted, SymWord::constant(7));
  CHECK(folded.is_concrete());
  REQUIRE(folded.taint());
  CHECK(folded.taint()->count({"c", "0x5"}));
}

TEST_CASE("global store: zero default, read-over-write, partitions, hash keys") {
  GlobalStore store;
  GotKey a5{"A", SymWord::constant(5)};
  CHECK(got_read(store, a5).concrete() == 0);

  store = got_write(std::move(store), a5, SymWord::constant(7));
  CHECK(got_read(store, a5).concrete() == 7);
  CHECK(got_read(store, GotKey{"B", SymWord::constant(5)}).concrete() == 0);

  auto k = SymWord::symbol("k");
  GotKey hashed{"A", hash_words({k, SymWord::constant(0)})};
  store = got_write(std::move(store), hashed, SymWord::symbol("x"));
  GotKey hashed_again{"A", hash_words({SymWord::symbol("k"), SymWord::constant(0)})};
  CHECK(got_read(store, hashed_again).to_string() == "x");
  // A different key expression misses.
  GotKey other{"A", hash_words({SymWord::symbol("k2"), SymWord::constant(0)})};
  CHECK(got_read(store, other).concrete() == 0);
}

TEST_CASE("machine: concrete arithmetic pushes 5") {
  ingest::Corpus corpus;
  corpus.add(bundle_of("toy", "PUSH1 0x02\nPUSH1 0x03\nADD\nSTOP", "0x01"));
  Env env(corpus, true);
  auto done = run_all(env, seed_tx(env, "toy", 0));
  REQUIRE(done.size() == 1);
  CHECK(done[0].status == PathStatus::kStopped);
  // ADD pops 3 then 2: 3 + 2.
  CHECK(done[0].frames.back().stack.back().concrete() == 5);
}

TEST_CASE("machine: callvalue plus six lands in slot 2 as an expression") {
  ingest::Corpus corpus;
  corpus.add(bundle_of("callee", "CALLVALUE\nPUSH1 0x06\nADD\nPUSH1 0x02\nSSTORE\nSTOP", "0x02"));
  Env env(corpus, true);
  auto done = run_all(env, seed_tx(env, "callee", 0));
  REQUIRE(done.size() == 1);
  const auto* stored = store_value(done[0].store, "callee", "0x2");
  REQUIRE(stored);
  CHECK(stored->to_string() == "(add 0x6 t0_value)");
}

TEST_CASE("machine: symbolic jumpi keeps only the weighted branch, with constraint") {
  ingest::Corpus corpus;
  corpus.add(bundle_of("toy", R"(
    PUSH1 0x04
    CALLDATALOAD
    PUSH target
    JUMPI
    STOP
  target:
    JUMPDEST
    PUSH1 0x00
    SLOAD
    POP
    STOP
  )", "0x03"));
  Env env(corpus, true);
  auto done = run_all(env, seed_tx(env, "toy", 0));
  // Fallthrough (weight 0) is pruned next to the weighted target branch.
  REQUIRE(done.size() == 1);
  CHECK(done[0].status == PathStatus::kStopped);
  REQUIRE(done[0].constraints.size() == 1);
  CHECK(done[0].constraints[0].word.to_string() == "(iszero (iszero t0_cd4))");

  // Without pruning both branches exist, carrying opposite constraints.
  Env noprune(corpus, false);
  auto both = run_all(noprune, seed_tx(noprune, "toy", 0));
  CHECK(both.size() == 2);
}

TEST_CASE("calls: context switching table for all four kinds") {
  const std::string writer = R"(
    CALLER
    PUSH1 0x00
    SSTORE
    CALLVALUE
    PUSH1 0x01
    SSTORE
    PUSH1 0x2a
    PUSH1 0x02
    SSTORE
    PUSH1 0x01
    PUSH1 0x00
    MSTORE
    PUSH1 0x20
    PUSH1 0x00
    RETURN
  )";
  auto caller_text = [](const std::string& op, bool with_value) {
    std::string s;
    s += "PUSH1 0x20\nPUSH1 0x00\nPUSH1 0x00\nPUSH1 0x00\n";  // retLen retOff argsLen argsOff
    if (with_value) s += "PUSH1 0x07\n";
    s += "PUSH20 0x00000000000000000000000000000000000000c2\n";
    s += "PUSH1 0x00\n";
    s += op + "\nPOP\nSTOP\n";
    return s;
  };

  auto run_kind = [&](const std::string& op, bool with_value) {
    ingest::Corpus corpus;
    corpus.add(bundle_of("caller", caller_text(op, with_value), "0xc1"));
    corpus.add(bundle_of("writer", writer, "0xc2"));
    Env env(corpus, true);
    auto done = run_all(env, seed_tx(env, "caller", 0));
    REQUIRE(done.size() == 1);
    return done[0];
  };

  SUBCASE("CALL: callee storage, sender = caller contract, value passed") {
    auto st = run_kind("CALL", true);
    CHECK(st.status == PathStatus::kStopped);
    const auto* sender = store_value(st.store, "writer", "0x0");
    const auto* value = store_value(st.store, "writer", "0x1");
    const auto* marker = store_value(st.store, "writer", "0x2");
    REQUIRE((sender && value && marker));
    CHECK(sender->concrete() == evm::parse_u256("0xc1"));
    CHECK(value->concrete() == 7);
    CHECK(marker->concrete() == 0x2a);
    CHECK(store_value(st.store, "caller", "0x2") == nullptr);
  }
  SUBCASE("CALLCODE: caller storage, sender = caller contract, value passed") {
    auto st = run_kind("CALLCODE", true);
    const auto* sender = store_value(st.store, "caller", "0x0");
    const auto* value = store_value(st.store, "caller", "0x1");
    const auto* marker = store_value(st.store, "caller", "0x2");
    REQUIRE((sender && value && marker));
    CHECK(sender->concrete() == evm::parse_u256("0xc1"));
    CHECK(value->concrete() == 7);
    CHECK(marker->concrete() == 0x2a);
    CHECK(store_value(st.store, "writer", "0x2") == nullptr);
  }
  SUBCASE("DELEGATECALL: caller storage, sender and value inherited") {
    auto st = run_kind("DELEGATECALL", false);
    const auto* sender = store_value(st.store, "caller", "0x0");
    const auto* value = store_value(st.store, "caller", "0x1");
    REQUIRE((sender && value));
    CHECK(sender->to_string() == "t0_sender");
    CHECK(value->to_string() == "t0_value");
    CHECK(store_value(st.store, "writer", "0x2") == nullptr);
  }
  SUBCASE("STATICCALL: a write inside the static frame kills the path") {
    auto st = run_kind("STATICCALL", false);
    CHECK(st.status == PathStatus::kInvalid);
  }
}

TEST_CASE("calls: static frame allows pure reads and returns data") {
  ingest::Corpus corpus;
  corpus.add(bundle_of("reader", R"(
    PUSH1 0x05
    SLOAD
    PUSH1 0x00
    MSTORE
    PUSH1 0x20
    PUSH1 0x00
    RETURN
  )", "0xd2"));
  corpus.add(bundle_of("caller", R"(
    PUSH1 0x20
    PUSH1 0x00
    PUSH1 0x00
    PUSH1 0x00
    PUSH20 0x00000000000000000000000000000000000000d2
    PUSH1 0x00
    STATICCALL
    POP
    PUSH1 0x00
    MLOAD
    PUSH1 0x03
    SSTORE
    STOP
  )", "0xd1"));
  Env env(corpus, true);
  auto done = run_all(env, seed_tx(env, "caller", 0));
  REQUIRE(done.size() == 1);
  CHECK(done[0].status == PathStatus::kStopped);
  // The write AFTER the static call is legal (outer frame is not static).
  CHECK(store_value(done[0].store, "caller", "0x3"));
}

TEST_CASE("runner: storage persists across transactions") {
  ingest::Corpus corpus;
  // bump() and probe() both increment slot 5.
  corpus.add(bundle_of("counter", R"(
    PUSH29 0x0100000000000000000000000000000000000000000000000000000000
    PUSH1 0x00
    CALLDATALOAD
    DIV
    DUP1
    PUSH4 0x11111111
    EQ
    PUSH body
    JUMPI
    DUP1
    PUSH4 0x22222222
    EQ
    PUSH body
    JUMPI
    PUSH1 0x00
    PUSH1 0x00
    REVERT
  body:
    JUMPDEST
    PUSH1 0x05
    SLOAD
    PUSH1 0x01
    ADD
    PUSH1 0x05
    SSTORE
    STOP
  )", "0xe1"));
  Env env(corpus, true);
  env.set_warned("counter", 0x22222222);
  Budget budget;
  auto ps = run_sequence(env, "counter", {0x11111111, 0x22222222}, 0x22222222, budget);
  REQUIRE(ps.paths.size() == 1);
  const auto* counted = store_value(ps.paths[0].store, "counter", "0x5");
  REQUIRE(counted);
  CHECK(counted->concrete() == 2);  // the setup increment is visible here
}

TEST_CASE("runner: constraint count equals symbolic branch count") {
  auto corpus = ingest::load_bundle(std::string(REVEX_CORPUS_DIR) + "/contracts");
  Env env(corpus, true);
  env.set_warned("vault", 0x2e1a7d4d);
  Budget budget;
  auto ps = run_sequence(env, "vault", {0xd0e30db0, 0x2e1a7d4d}, 0x2e1a7d4d, budget);
  REQUIRE(!ps.paths.empty());
  for (const auto& path : ps.paths) {
    std::size_t symbolic_branches = 0;
    for (const auto& ev : path.trace) {
      if (ev.kind == TraceEvent::Kind::kBranch && ev.symbolic_branch) ++symbolic_branches;
    }
    CHECK(path.constraints.size() == symbolic_branches);
  }
}

TEST_CASE("runner: empty sequence degenerates to direct exploration") {
  auto corpus = ingest::load_bundle(std::string(REVEX_CORPUS_DIR) + "/contracts");
  Env env(corpus, true);
  env.set_warned("vault", 0x2e1a7d4d);
  Budget budget;
  auto direct = run_sequence(env, "vault", {}, 0x2e1a7d4d, budget);
  auto with_self = run_sequence(env, "vault", {0x2e1a7d4d}, 0x2e1a7d4d, budget);
  CHECK(direct.paths.size() == with_self.paths.size());
}

TEST_CASE("runner: step budget exhaustion flags the result incomplete") {
  auto corpus = ingest::load_bundle(std::string(REVEX_CORPUS_DIR) + "/contracts");
  Env env(corpus, true);
  env.set_warned("spinner", 0xa5b6ea8f);
  Budget budget;
  budget.max_steps = 2000;
  auto ps = run_sequence(env, "spinner", {}, 0xa5b6ea8f, budget);
  CHECK(ps.incomplete);
  CHECK(ps.paths.empty());
}

TEST_CASE("concrete soundness: symbolic run with concrete inputs matches replay mode") {
  auto corpus = ingest::load_bundle(std::string(REVEX_CORPUS_DIR) + "/contracts");
  // Run deposit with pinned inputs through the replay (concrete) machinery.
  std::map<std::string, evm::u256> model{{"t0_sender", evm::parse_u256("0xaaaa")},
                                         {"t0_value", 9}};
  Env replay_env(corpus, true);
  replay_env.set_warned("vault", 0xd0e30db0);
  replay_env.set_replay(model, {});
  Budget budget;
  auto replayed = run_sequence(replay_env, "vault", {}, 0xd0e30db0, budget);
  REQUIRE(replayed.paths.size() == 1);

  // Same transaction, symbolic engine, then evaluate the final storage under
  // the same model.
  Env sym_env(corpus, true);
  sym_env.set_warned("vault", 0xd0e30db0);
  auto symbolic = run_sequence(sym_env, "vault", {}, 0xd0e30db0, budget);
  REQUIRE(symbolic.paths.size() == 1);

  const auto& concrete_part = replayed.paths[0].store.partitions().at("vault");
  const auto& sym_part = symbolic.paths[0].store.partitions().at("vault");
  REQUIRE(concrete_part.size() == sym_part.size());
  for (const auto& [slot, entry] : sym_part) {
    evm::u256 expect = evaluate(entry.value.node(), model);
    std::string concrete_slot = SymWord::constant(evaluate(entry.slot.node(), model)).to_string();
    auto it = concrete_part.find(concrete_slot);
    REQUIRE(it != concrete_part.end());
    CHECK(it->second.value.concrete() == expect);
  }
}

TEST_CASE("trace rendering uses the documented line formats") {
  auto corpus = ingest::load_bundle(std::string(REVEX_CORPUS_DIR) + "/contracts");
  Env env(corpus, true);
  env.set_warned("vault", 0x2e1a7d4d);
  Budget budget;
  auto ps = run_sequence(env, "vault", {}, 0x2e1a7d4d, budget);
  REQUIRE(!ps.paths.empty());
  auto text = trace_to_string(ps.paths[0].trace);
  CHECK(text.find("SLOAD vault@") != std::string::npos);
  CHECK(text.find("SSTORE vault@") != std::string::npos);
  CHECK(text.find("CALL CALL ") != std::string::npos);
  CHECK(text.find("HALT") != std::string::npos);
}
