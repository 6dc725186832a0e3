// Acceptance suite: exercises every gating criterion end to end and prints
// one pass/fail line per criterion. Exits non-zero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "revex/dep/fdg.hpp"
#include "revex/dep/targets.hpp"
#include "revex/evm/assembler.hpp"
#include "revex/harness/combos.hpp"
#include "revex/harness/metrics.hpp"
#include "revex/ingest/bundle.hpp"
#include "revex/prune/smc_cfg.hpp"
#include "revex/sym/runner.hpp"
#include "revex/verify/subprocess.hpp"
#include "revex/verify/verifier.hpp"

using namespace revex;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& what, bool ok, const std::string& detail = {}) {
  std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion, what.c_str(),
              detail.empty() ? "" : " — ", detail.c_str());
  if (!ok) ++g_failures;
}

const std::string kContracts = std::string(REVEX_CORPUS_DIR) + "/contracts";

verify::VerifyConfig config_with(bool pruning) {
  verify::VerifyConfig config;
  config.pruning = pruning;
  config.timeout = std::chrono::milliseconds(110'000);
  verify::SolverConfig solver;
  solver.argv = {REVEX_MICROSOLVE};
  config.solver = solver;
  return config;
}

struct CorpusCase {
  std::string contract;
  std::uint32_t selector;
  verify::Outcome expected;
};

const std::vector<CorpusCase> kCases = {
    {"vault", 0x2e1a7d4d, verify::Outcome::kConfirmed},
    {"collect1", 0xeb673aab, verify::Outcome::kConfirmed},
    {"collect2", 0x5f6781ac, verify::Outcome::kConfirmed},
    {"collect3", 0x5bf08740, verify::Outcome::kConfirmed},
    {"wallet", 0xb61d27f6, verify::Outcome::kRefuted},
    {"bitcash", 0x5c4fa5fc, verify::Outcome::kRefuted},
};

std::vector<verify::Verdict> run_corpus(const ingest::Corpus& corpus, bool pruning) {
  auto config = config_with(pruning);
  std::vector<verify::Verdict> verdicts;
  for (const auto& c : kCases) {
    ingest::Warning w;
    w.contract_id = c.contract;
    w.selector = c.selector;
    w.kind = "reentrancy";
    verdicts.push_back(verify::verify_warning(corpus, w, config));
  }
  return verdicts;
}

void criterion_1_and_8(const ingest::Corpus& corpus, std::vector<verify::Verdict>& out_verdicts) {
  auto started = std::chrono::steady_clock::now();
  out_verdicts = run_corpus(corpus, true);
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  bool ok = corpus.contracts().size() >= 8;
  std::string detail;
  for (std::size_t i = 0; i < kCases.size(); ++i) {
    bool match = out_verdicts[i].outcome == kCases[i].expected;
    ok = ok && match;
    if (!match) {
      detail += kCases[i].contract + " got " + verify::outcome_name(out_verdicts[i].outcome) + "; ";
    }
  }
  ok = ok && elapsed < 120.0;
  report(1, "corpus verdicts exact, runtime under 120 s", ok,
         detail + "elapsed " + std::to_string(elapsed) + " s");

  // Criterion 8: every confirmed verdict replays concretely.
  auto config = config_with(true);
  std::size_t confirmed = 0, replayed = 0;
  for (const auto& v : out_verdicts) {
    if (v.outcome != verify::Outcome::kConfirmed) continue;
    ++confirmed;
    if (verify::replay_witness(corpus, v, config)) ++replayed;
  }
  report(8, "confirmed witnesses replay concretely", confirmed > 0 && replayed == confirmed,
         std::to_string(replayed) + "/" + std::to_string(confirmed));
}

void criterion_2() {
  bool ok = true;
  auto check = [&](harness::Metrics m, const char* field, const std::string& expect) {
    std::string got;
    if (std::string(field) == "precision") got = harness::format_percent(*m.precision);
    if (std::string(field) == "recall") got = harness::format_percent(*m.recall);
    if (std::string(field) == "f1") got = harness::format_percent(*m.f1);
    if (got != expect) ok = false;
  };
  check(harness::metrics_from_counts(26, 15474, 0, 0), "precision", "0.2%");
  check(harness::metrics_from_counts(25, 488, 0, 0), "precision", "4.9%");
  check(harness::metrics_from_counts(29, 9, 2, 103), "recall", "93.5%");
  check(harness::metrics_from_counts(29, 9, 2, 103), "f1", "84.1%");
  report(2, "published precision/recall/F1 arithmetic reproduced exactly", ok);
}

void criterion_3() {
  std::vector<std::string> tools;
  for (int i = 1; i <= 8; ++i) tools.push_back("tool" + std::to_string(i));
  auto combos = harness::enumerate_combos(tools, {2, 4, 6, 8});
  report(3, "eight tools over sizes {2,4,6,8} enumerate 127 combinations", combos.size() == 127,
         std::to_string(combos.size()) + " combinations");
}

void criterion_4() {
  using evm::BasicBlock;
  using evm::Cfg;
  using evm::Instruction;
  using evm::Opcode;
  std::mt19937 rng(20240817);
  std::vector<Opcode> pool = {Opcode::kPush1,  Opcode::kPop,         Opcode::kAdd,
                              Opcode::kSLoad,  Opcode::kSStore,      Opcode::kCall,
                              Opcode::kCaller, Opcode::kMLoad,       Opcode::kDup1,
                              Opcode::kCallCode, Opcode::kDelegateCall, Opcode::kStaticCall};
  std::uint64_t mismatches = 0;
  std::uint64_t edges = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    int nblocks = 1 + static_cast<int>(rng() % 20);
    Cfg cfg;
    for (int b = 0; b < nblocks; ++b) {
      BasicBlock blk;
      blk.id = b;
      blk.first_pc = static_cast<std::uint64_t>(b) * 100;
      int len = 1 + static_cast<int>(rng() % 30);
      for (int i = 0; i < len; ++i) {
        Instruction instr;
        instr.pc = blk.first_pc + static_cast<std::uint64_t>(i);
        instr.opcode = pool[rng() % pool.size()];
        blk.instructions.push_back(instr);
      }
      if (rng() % 8 == 0) {
        Instruction tail;
        tail.pc = blk.first_pc + 99;
        tail.opcode = rng() % 2 ? Opcode::kRevert : Opcode::kInvalid;
        blk.instructions.push_back(tail);
      }
      int fanout = static_cast<int>(rng() % 3);
      for (int s = 0; s < fanout; ++s) blk.successors.push_back(static_cast<int>(rng() % nblocks));
      cfg.blocks[b] = std::move(blk);
    }
    cfg.entry = 0;
    auto smc = prune::build_smc_cfg(cfg);
    for (const auto& [id, blk] : cfg.blocks) {
      for (int succ : blk.successors) {
        const auto& sblk = cfg.block(succ);
        std::uint64_t expect = 0;
        for (const auto& i : sblk.instructions) {
          if (i.opcode == Opcode::kSLoad || i.opcode == Opcode::kSStore ||
              i.opcode == Opcode::kCall || i.opcode == Opcode::kCallCode ||
              i.opcode == Opcode::kDelegateCall || i.opcode == Opcode::kStaticCall) {
            ++expect;
          }
        }
        ++edges;
        if (smc.edge_weight.at({id, sblk.first_pc}) != expect) ++mismatches;
      }
    }
  }
  report(4, "edge weights match brute-force key-instruction counts on 1000 random CFGs",
         mismatches == 0, std::to_string(edges) + " edges, " + std::to_string(mismatches) +
                              " mismatches");
}

void criterion_5() {
  using dep::FunctionSummary;
  using dep::SummaryMap;
  using ingest::SlotDesc;
  std::mt19937 rng(424242);
  std::uint64_t mismatches = 0;
  std::uint64_t checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    int nfun = 2 + static_cast<int>(rng() % 11);
    int nslots = 1 + static_cast<int>(rng() % 8);
    SummaryMap summaries;
    std::vector<std::uint32_t> sels;
    for (int f = 0; f < nfun; ++f) {
      std::uint32_t sel = 0x4000 + static_cast<std::uint32_t>(f);
      sels.push_back(sel);
      FunctionSummary s;
      s.selector = sel;
      for (int slot = 0; slot < nslots; ++slot) {
        if (rng() % 3 == 0) s.reads.insert(SlotDesc::slot(slot));
        if (rng() % 3 == 0) s.writes.insert(SlotDesc::slot(slot));
      }
      summaries[sel] = std::move(s);
    }
    auto targets = dep::compute_target_sets({sels[rng() % sels.size()]}, summaries);
    auto fdg = dep::build_fdg(targets, summaries);

    std::map<std::uint32_t, std::uint64_t> node_weight;
    for (auto s : targets.f_target) node_weight[s] = 0;
    for (auto a : targets.f_target) {
      for (auto b : targets.f_target) {
        if (a >= b) continue;
        std::uint64_t shared = 0;
        for (const auto& slot : targets.v_target_related) {
          bool in_a = summaries.at(a).reads.count(slot) || summaries.at(a).writes.count(slot);
          bool in_b = summaries.at(b).reads.count(slot) || summaries.at(b).writes.count(slot);
          if (in_a && in_b) ++shared;
        }
        ++checked;
        if (fdg.edge_weight(a, b) != shared) ++mismatches;
        node_weight[a] += shared;
        node_weight[b] += shared;
      }
    }
    for (auto s : targets.f_target) {
      ++checked;
      if (fdg.node_weight.at(s) != node_weight[s]) ++mismatches;
    }
    std::vector<std::uint32_t> expect(targets.f_target.begin(), targets.f_target.end());
    std::stable_sort(expect.begin(), expect.end(), [&](std::uint32_t a, std::uint32_t b) {
      if (node_weight[a] != node_weight[b]) return node_weight[a] < node_weight[b];
      return a < b;
    });
    ++checked;
    if (dep::function_sequence(fdg) != expect) ++mismatches;
  }
  report(5, "dependency-graph weights and ordering match brute force on 1000 random sets",
         mismatches == 0, std::to_string(checked) + " checks, " + std::to_string(mismatches) +
                              " mismatches");
}

void criterion_6(const ingest::Corpus& corpus, const std::vector<verify::Verdict>& pruned) {
  auto unpruned = run_corpus(corpus, false);
  bool same = pruned.size() == unpruned.size();
  bool steps_ok = true;
  std::string detail;
  for (std::size_t i = 0; same && i < pruned.size(); ++i) {
    if (pruned[i].outcome != unpruned[i].outcome) {
      same = false;
      detail += pruned[i].contract_id + " diverged; ";
    }
    if (pruned[i].steps_used > unpruned[i].steps_used) {
      steps_ok = false;
      detail += pruned[i].contract_id + " used more steps pruned; ";
    }
  }
  report(6, "pruned and unpruned runs agree, pruning never costs extra steps", same && steps_ok,
         detail);
}

void criterion_7() {
  using namespace revex::sym;
  const std::string writer =
      "CALLER\nPUSH1 0x00\nSSTORE\nCALLVALUE\nPUSH1 0x01\nSSTORE\n"
      "PUSH1 0x2a\nPUSH1 0x02\nSSTORE\nSTOP\n";
  auto caller_text = [](const std::string& op, bool with_value) {
    std::string s = "PUSH1 0x00\nPUSH1 0x00\nPUSH1 0x00\nPUSH1 0x00\n";
    if (with_value) s += "PUSH1 0x07\n";
    s += "PUSH20 0x00000000000000000000000000000000000000b2\nPUSH1 0x00\n" + op + "\nPOP\nSTOP\n";
    return s;
  };
  auto value_of = [](const MachineState& st, const std::string& part, const std::string& slot)
      -> const SymWord* {
    auto p = st.store.partitions().find(part);
    if (p == st.store.partitions().end()) return nullptr;
    auto it = p->second.find(slot);
    return it == p->second.end() ? nullptr : &it->second.value;
  };

  bool ok = true;
  std::string detail;
  auto expect = [&](bool cond, const std::string& why) {
    if (!cond) {
      ok = false;
      detail += why + "; ";
    }
  };

  auto run_kind = [&](const std::string& op, bool with_value) {
    ingest::Corpus corpus;
    ingest::ContractBundle caller;
    caller.contract_id = "caller";
    caller.code = evm::assemble(caller_text(op, with_value));
    caller.address = evm::parse_u256("0xb1");
    corpus.add(std::move(caller));
    ingest::ContractBundle callee;
    callee.contract_id = "writer";
    callee.code = evm::assemble(writer);
    callee.address = evm::parse_u256("0xb2");
    corpus.add(std::move(callee));

    Env env(corpus, true);
    MachineState st;
    st.frames.push_back(make_transaction_frame(env, "caller", 0, "t0", SymWord::symbol("t0_sender")));
    std::vector<MachineState> work{st}, done;
    int steps = 0;
    while (!work.empty() && steps++ < 2000) {
      MachineState cur = std::move(work.back());
      work.pop_back();
      if (cur.status != PathStatus::kRunning) {
        done.push_back(std::move(cur));
        continue;
      }
      for (auto& s : step(cur, env)) work.push_back(std::move(s));
    }
    return done;
  };

  auto call = run_kind("CALL", true);
  expect(call.size() == 1 && call[0].status == PathStatus::kStopped, "CALL did not complete");
  if (!call.empty()) {
    const auto* sender = value_of(call[0], "writer", "0x0");
    const auto* value = value_of(call[0], "writer", "0x1");
    expect(sender && sender->is_concrete() && sender->concrete() == evm::parse_u256("0xb1"),
           "CALL sender");
    expect(value && value->is_concrete() && value->concrete() == 7, "CALL value");
    expect(value_of(call[0], "caller", "0x2") == nullptr, "CALL storage partition");
  }

  auto callcode = run_kind("CALLCODE", true);
  if (!callcode.empty()) {
    const auto* sender = value_of(callcode[0], "caller", "0x0");
    const auto* value = value_of(callcode[0], "caller", "0x1");
    expect(sender && sender->is_concrete() && sender->concrete() == evm::parse_u256("0xb1"),
           "CALLCODE sender");
    expect(value && value->is_concrete() && value->concrete() == 7, "CALLCODE value");
    expect(value_of(callcode[0], "writer", "0x2") == nullptr, "CALLCODE storage partition");
  } else {
    expect(false, "CALLCODE did not complete");
  }

  auto delegate = run_kind("DELEGATECALL", false);
  if (!delegate.empty()) {
    const auto* sender = value_of(delegate[0], "caller", "0x0");
    const auto* value = value_of(delegate[0], "caller", "0x1");
    expect(sender && sender->to_string() == "t0_sender", "DELEGATECALL sender inherited");
    expect(value && value->to_string() == "t0_value", "DELEGATECALL value inherited");
    expect(value_of(delegate[0], "writer", "0x2") == nullptr,
           "DELEGATECALL writes land in the caller partition");
  } else {
    expect(false, "DELEGATECALL did not complete");
  }

  auto static_call = run_kind("STATICCALL", false);
  expect(static_call.size() == 1 && static_call[0].status == PathStatus::kInvalid,
         "SSTORE under STATICCALL must invalidate the path");

  report(7, "call-kind context table holds for all four kinds", ok, detail);
}

void criterion_9() {
  std::vector<std::string> argv = {
      REVEX_CLI,
      "verify",
      "--corpus", kContracts,
      "--report", std::string(REVEX_CORPUS_DIR) + "/reports/scan_spinner.json",
      "--timeout", "2",
      "--solver", REVEX_MICROSOLVE,
  };
  auto started = std::chrono::steady_clock::now();
  auto result = verify::run_subprocess(argv, "", std::chrono::milliseconds(20'000));
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  bool ok = !result.timed_out && result.exit_code == 0 &&
            result.stdout_text.find("unknown") != std::string::npos && elapsed < 2.0 + 5.0;
  report(9, "over-budget contract degrades to unknown with exit 0 inside timeout + 5 s", ok,
         "elapsed " + std::to_string(elapsed) + " s, exit " + std::to_string(result.exit_code));
}

}  // namespace

int main() {
  auto corpus = ingest::load_bundle(kContracts);

  std::vector<verify::Verdict> pruned_verdicts;
  criterion_1_and_8(corpus, pruned_verdicts);
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6(corpus, pruned_verdicts);
  criterion_7();
  criterion_9();

  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
