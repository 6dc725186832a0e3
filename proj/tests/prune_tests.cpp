#include <doctest.h>

#include <random>

#include "revex/evm/assembler.hpp"
#include "revex/ingest/bundle.hpp"
#include "revex/prune/smc_cfg.hpp"

using namespace revex;
using namespace revex::prune;
using evm::BasicBlock;
using evm::Cfg;
using evm::Instruction;
using evm::Opcode;

namespace {

Instruction instr(Opcode op, std::uint64_t pc) {
  Instruction i;
  i.pc = pc;
  i.opcode = op;
  return i;
}

// Synthetic CFG builder for the oracle tests: block i occupies pcs starting
// at i*100, successor wiring is explicit.
Cfg synth_cfg(const std::vector<std::vector<Opcode>>& blocks,
              const std::vector<std::vector<int>>& successors) {
  Cfg cfg;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    BasicBlock blk;
    blk.id = static_cast<int>(b);
    blk.first_pc = b * 100;
    std::uint64_t pc = blk.first_pc;
    for (Opcode op : blocks[b]) blk.instructions.push_back(instr(op, pc++));
    if (blk.instructions.empty()) blk.instructions.push_back(instr(Opcode::kJumpDest, pc));
    blk.successors = successors[b];
    cfg.blocks[blk.id] = std::move(blk);
  }
  cfg.entry = 0;
  return cfg;
}

}  // namespace

TEST_CASE("count_weight: key instructions only") {
  BasicBlock blk;
  blk.first_pc = 40;
  std::uint64_t pc = 40;
  for (Opcode op : {Opcode::kJumpDest, Opcode::kPush1, Opcode::kSLoad, Opcode::kPush1, Opcode::kCall}) {
    blk.instructions.push_back(instr(op, pc++));
  }
  auto [w, first] = count_weight(blk);
  CHECK(w == 2);
  CHECK(first == 40);

  BasicBlock none;
  none.first_pc = 7;
  for (Opcode op : {Opcode::kJumpDest, Opcode::kPush1, Opcode::kPop, Opcode::kStop}) {
    none.instructions.push_back(instr(op, 7));
  }
  CHECK(count_weight(none).first == 0);

  BasicBlock triple;
  for (Opcode op : {Opcode::kSStore, Opcode::kSStore, Opcode::kSStore}) {
    triple.instructions.push_back(instr(op, 0));
  }
  CHECK(count_weight(triple).first == 3);
}

TEST_CASE("build_smc_cfg: single block has no edges") {
  auto cfg = synth_cfg({{Opcode::kStop}}, {{}});
  auto smc = build_smc_cfg(cfg);
  CHECK(smc.edge_weight.empty());
  CHECK(smc.pruned_edges.empty());
}

TEST_CASE("build_smc_cfg: withdraw guard keeps the paying branch, prunes the revert") {
  auto corpus = ingest::load_bundle(std::string(REVEX_CORPUS_DIR) + "/contracts");
  const auto* vault = corpus.find("vault");
  auto smc = build_smc_cfg(vault->cfg);
  int guard = vault->cfg.function_entries.at(0x2e1a7d4d);
  auto order = next_successors(smc, guard);
  REQUIRE(order.size() == 1);
  const auto& kept = vault->cfg.block(order[0]);
  CHECK_FALSE(kept.contains_opcode(Opcode::kRevert));
  auto weight = smc.edge_weight.at({guard, kept.first_pc});
  CHECK(weight >= 2);  // reload + external call on the paying side
  // The revert side is a pruned edge.
  bool revert_pruned = false;
  for (int succ : vault->cfg.block(guard).successors) {
    if (vault->cfg.block(succ).contains_opcode(Opcode::kRevert)) {
      revert_pruned = smc.is_pruned(guard, succ);
    }
  }
  CHECK(revert_pruned);
}

TEST_CASE("next_successors: ordering and the all-zero fallback") {
  // Two weighted branches: heavier first.
  auto cfg = synth_cfg(
      {
          {Opcode::kJumpDest, Opcode::kJumpI},
          {Opcode::kJumpDest, Opcode::kSLoad, Opcode::kStop},
          {Opcode::kJumpDest, Opcode::kSLoad, Opcode::kSStore, Opcode::kStop},
      },
      {{1, 2}, {}, {}});
  auto smc = build_smc_cfg(cfg);
  CHECK(next_successors(smc, 0) == std::vector<int>{2, 1});

  // One zero-weight branch is dropped next to a weighted sibling.
  auto cfg2 = synth_cfg(
      {
          {Opcode::kJumpDest, Opcode::kJumpI},
          {Opcode::kJumpDest, Opcode::kStop},
          {Opcode::kJumpDest, Opcode::kSLoad, Opcode::kCall, Opcode::kStop},
      },
      {{1, 2}, {}, {}});
  auto smc2 = build_smc_cfg(cfg2);
  CHECK(next_successors(smc2, 0) == std::vector<int>{2});
  CHECK(smc2.edge_weight.at({0, 200}) == 2);
  CHECK(smc2.edge_weight.at({0, 100}) == 0);

  // All-zero successors, none reverting: keep everything in first_pc order.
  auto cfg3 = synth_cfg(
      {
          {Opcode::kJumpDest, Opcode::kJumpI},
          {Opcode::kJumpDest, Opcode::kStop},
          {Opcode::kJumpDest, Opcode::kPop, Opcode::kStop},
      },
      {{2, 1}, {}, {}});
  auto smc3 = build_smc_cfg(cfg3);
  CHECK(next_successors(smc3, 0) == std::vector<int>{1, 2});
}

TEST_CASE("next_successors: edges into rollback blocks are pruned") {
  auto cfg = synth_cfg(
      {
          {Opcode::kJumpDest, Opcode::kJumpI},
          {Opcode::kJumpDest, Opcode::kRevert},
          {Opcode::kJumpDest, Opcode::kPop, Opcode::kStop},
      },
      {{1, 2}, {}, {}});
  auto smc = build_smc_cfg(cfg);
  CHECK(next_successors(smc, 0) == std::vector<int>{2});
  CHECK(smc.is_pruned(0, 1));
}

TEST_CASE("no-prune mode returns base successors untouched") {
  auto cfg = synth_cfg(
      {
          {Opcode::kJumpDest, Opcode::kJumpI},
          {Opcode::kJumpDest, Opcode::kRevert},
          {Opcode::kJumpDest, Opcode::kSLoad, Opcode::kStop},
      },
      {{1, 2}, {}, {}});
  auto smc = build_smc_cfg(cfg, /*pruning_enabled=*/false);
  CHECK(next_successors(smc, 0) == std::vector<int>{1, 2});
}

TEST_CASE("smc oracle: 1000 random CFGs match a brute-force key count") {
  std::mt19937 rng(4321);
  std::vector<Opcode> body_pool = {Opcode::kPush1,  Opcode::kPop,    Opcode::kAdd,
                                   Opcode::kSLoad,  Opcode::kSStore, Opcode::kCall,
                                   Opcode::kCaller, Opcode::kMLoad,  Opcode::kDup1,
                                   Opcode::kCallCode, Opcode::kDelegateCall, Opcode::kStaticCall};
  for (int trial = 0; trial < 1000; ++trial) {
    int nblocks = 1 + static_cast<int>(rng() % 20);
    std::vector<std::vector<Opcode>> blocks(nblocks);
    std::vector<std::vector<int>> succs(nblocks);
    for (int b = 0; b < nblocks; ++b) {
      int len = 1 + static_cast<int>(rng() % 30);
      for (int i = 0; i < len; ++i) blocks[b].push_back(body_pool[rng() % body_pool.size()]);
      if (rng() % 8 == 0) blocks[b].push_back(rng() % 2 ? Opcode::kRevert : Opcode::kInvalid);
      int fanout = static_cast<int>(rng() % 3);
      for (int s = 0; s < fanout; ++s) succs[b].push_back(static_cast<int>(rng() % nblocks));
    }
    auto cfg = synth_cfg(blocks, succs);
    auto smc = build_smc_cfg(cfg);

    for (const auto& [id, blk] : cfg.blocks) {
      for (int succ : blk.successors) {
        const auto& sblk = cfg.block(succ);
        std::uint64_t expect = 0;
        for (const auto& i : sblk.instructions) {
          switch (i.opcode) {
            case Opcode::kSLoad:
            case Opcode::kSStore:
            case Opcode::kCall:
            case Opcode::kCallCode:
            case Opcode::kDelegateCall:
            case Opcode::kStaticCall:
              ++expect;
              break;
            default:
              break;
          }
        }
        REQUIRE(smc.edge_weight.at({id, sblk.first_pc}) == expect);
      }
      // Pruning monotonicity: the policy output is a reordering of a subset.
      auto kept = next_successors(smc, id);
      for (int k : kept) {
        REQUIRE(std::count(blk.successors.begin(), blk.successors.end(), k) > 0);
      }
      // Key-block preservation: an edge into a key block survives unless the
      // block also rolls back.
      for (int succ : blk.successors) {
        const auto& sblk = cfg.block(succ);
        bool key = count_weight(sblk).first > 0;
        bool rollback = sblk.contains_opcode(Opcode::kRevert) || sblk.contains_opcode(Opcode::kInvalid);
        if (key && !rollback) {
          REQUIRE(std::count(kept.begin(), kept.end(), succ) > 0);
        }
      }
    }
  }
}
