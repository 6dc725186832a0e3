#include <doctest.h>

#include <random>

#include "revex/errors.hpp"
#include "revex/evm/assembler.hpp"
#include "revex/evm/cfg.hpp"
#include "revex/evm/keccak.hpp"
#include "revex/evm/word.hpp"
#include "revex/ingest/bundle.hpp"

using namespace revex;
using namespace revex::evm;

TEST_CASE("keccak matches the published vectors") {
  auto empty = keccak256(Bytes{});
  CHECK(hex_of_bytes(Bytes(empty.begin(), empty.end())) ==
        "c5d2460186f7233c927e7db2dcc703c0e500b653ca82273b7bfad8045d85a470");
  auto abc = keccak256(Bytes{'a', 'b', 'c'});
  CHECK(hex_of_bytes(Bytes(abc.begin(), abc.end())) ==
        "4e03657aea45a94fc7d47ba826c8d667c0d1e6e33a64a036ec44f58fa12d6c45");
}

TEST_CASE("selectors follow the signature-hash rule") {
  CHECK(selector("withdraw(uint256)") == 0x2e1a7d4d);
  CHECK(selector("deposit()") == 0xd0e30db0);
  CHECK(selector("execute(address,uint256,bytes)") == 0xb61d27f6);
  CHECK(selector("balanceOf(address)") == 0x70a08231);
}

TEST_CASE("disassemble: empty, hand-decoded bytes, unknown byte") {
  CHECK(disassemble({}).empty());

  auto instrs = disassemble(parse_hex_bytes("602a00"));
  REQUIRE(instrs.size() == 2);
  CHECK(instrs[0].pc == 0);
  CHECK(instrs[0].opcode == Opcode::kPush1);
  CHECK(instrs[0].immediate_word() == 0x2a);
  CHECK(instrs[1].pc == 2);
  CHECK(instrs[1].opcode == Opcode::kStop);

  auto invalid = disassemble(parse_hex_bytes("fe"));
  REQUIRE(invalid.size() == 1);
  CHECK(invalid[0].opcode == Opcode::kInvalid);
  CHECK(invalid[0].pc == 0);
}

TEST_CASE("disassemble: truncated PUSH becomes INVALID, every byte consumed") {
  auto instrs = disassemble(parse_hex_bytes("61ff"));  // PUSH2 with one byte left
  REQUIRE(instrs.size() == 1);
  CHECK(instrs[0].opcode == Opcode::kInvalid);
  CHECK_FALSE(instrs[0].immediate.has_value());
}

TEST_CASE("disassemble: pc accounting is cumulative encoded size") {
  auto instrs = disassemble(parse_hex_bytes("5b602a61beef0050"));
  std::uint64_t pc = 0;
  for (const auto& i : instrs) {
    CHECK(i.pc == pc);
    pc += i.encoded_size();
  }
  CHECK(pc == 8);
}

TEST_CASE("assemble: examples and errors") {
  CHECK(hex_of_bytes(assemble("PUSH1 0x2a\nSTOP\n")) == "602a00");
  CHECK(assemble("").empty());
  CHECK_THROWS_AS(assemble("FOO"), AsmError);
  try {
    assemble("STOP\nFOO");
  } catch (const AsmError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(assemble("PUSH2 nowhere\nJUMP"), AsmError);       // undefined label
  CHECK_THROWS_AS(assemble("x:\nJUMPDEST\nx:\nJUMPDEST"), AsmError);  // duplicate label
  CHECK_THROWS_AS(assemble("PUSH1 0xabcd"), AsmError);              // too wide
}

TEST_CASE("assemble/disassemble round trip on random programs") {
  std::mt19937 rng(7);
  std::vector<Opcode> pool = {Opcode::kStop,    Opcode::kAdd,     Opcode::kSub,
                              Opcode::kMul,     Opcode::kDiv,     Opcode::kLt,
                              Opcode::kIsZero,  Opcode::kCaller,  Opcode::kCallValue,
                              Opcode::kPop,     Opcode::kMLoad,   Opcode::kMStore,
                              Opcode::kSLoad,   Opcode::kSStore,  Opcode::kJumpDest,
                              Opcode::kDup1,    Opcode::kSwap1,   Opcode::kSha3,
                              Opcode::kCall,    Opcode::kRevert,  Opcode::kInvalid};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Instruction> program;
    std::uint64_t pc = 0;
    int len = static_cast<int>(rng() % 40);
    for (int i = 0; i < len; ++i) {
      Instruction instr;
      instr.pc = pc;
      if (rng() % 3 == 0) {
        std::size_t width = 1 + rng() % 32;
        instr.opcode = static_cast<Opcode>(static_cast<std::uint8_t>(Opcode::kPush1) + width - 1);
        Bytes imm(width);
        for (auto& b : imm) b = static_cast<std::uint8_t>(rng());
        instr.immediate = imm;
      } else {
        instr.opcode = pool[rng() % pool.size()];
      }
      pc += instr.encoded_size();
      program.push_back(std::move(instr));
    }
    auto bytes = assemble(render_program(program));
    auto decoded = disassemble(bytes);
    REQUIRE(decoded.size() == program.size());
    for (std::size_t i = 0; i < program.size(); ++i) CHECK(decoded[i] == program[i]);
  }
}

TEST_CASE("build_cfg: straight line, JUMPI arity, bad jump target") {
  auto cfg = build_cfg(disassemble(assemble("PUSH1 0x01\nPOP\nSTOP")));
  REQUIRE(cfg.blocks.size() == 1);
  CHECK(cfg.block(0).successors.empty());
  CHECK(cfg.block(0).terminator == TerminatorKind::kHalt);

  auto cfg2 = build_cfg(disassemble(assemble(R"(
    PUSH1 0x01
    PUSH l
    JUMPI
    STOP
  l:
    JUMPDEST
    STOP
  )")));
  int jumpi_block = -1;
  for (const auto& [id, blk] : cfg2.blocks) {
    if (blk.terminator == TerminatorKind::kJumpI) jumpi_block = id;
  }
  REQUIRE(jumpi_block >= 0);
  CHECK(cfg2.block(jumpi_block).successors.size() == 2);

  CHECK_THROWS_AS(build_cfg(disassemble(assemble("PUSH1 0x03\nJUMP\nSTOP"))), CfgError);
}

TEST_CASE("build_cfg: dynamic jump flagged with empty successors") {
  auto cfg = build_cfg(disassemble(assemble("CALLER\nJUMP")));
  bool flagged = false;
  for (const auto& [id, blk] : cfg.blocks) flagged = flagged || blk.unresolved_jump;
  CHECK(flagged);
  for (const auto& [id, blk] : cfg.blocks) CHECK(blk.successors.empty());
}

TEST_CASE("build_cfg: block partition covers the corpus instruction streams") {
  auto corpus = ingest::load_bundle(std::string(REVEX_CORPUS_DIR) + "/contracts");
  REQUIRE(corpus.contracts().size() >= 8);
  for (const auto& [id, loaded] : corpus.contracts()) {
    std::vector<Instruction> merged;
    for (const auto& [bid, blk] : loaded.cfg.blocks) {
      merged.insert(merged.end(), blk.instructions.begin(), blk.instructions.end());
    }
    REQUIRE(merged.size() == loaded.instructions.size());
    for (std::size_t i = 0; i < merged.size(); ++i) CHECK(merged[i] == loaded.instructions[i]);
    for (const auto& [bid, blk] : loaded.cfg.blocks) {
      CHECK_FALSE(blk.instructions.empty());
      CHECK(blk.first_pc == blk.instructions.front().pc);
      for (int succ : blk.successors) CHECK(loaded.cfg.blocks.count(succ));
    }
  }
}

TEST_CASE("build_cfg: withdraw guard branches into the paying side") {
  auto corpus = ingest::load_bundle(std::string(REVEX_CORPUS_DIR) + "/contracts");
  const auto* vault = corpus.find("vault");
  REQUIRE(vault);
  int entry = vault->cfg.function_entries.at(0x2e1a7d4d);
  const auto& guard = vault->cfg.block(entry);
  CHECK(guard.terminator == TerminatorKind::kJumpI);
  REQUIRE(guard.successors.size() == 2);
  // One side rolls back; the other reaches both the external call and the
  // balance write.
  bool revert_side = false, paying_side = false;
  for (int succ : guard.successors) {
    const auto& blk = vault->cfg.block(succ);
    if (blk.contains_opcode(Opcode::kRevert)) {
      revert_side = true;
      continue;
    }
    bool has_call = false, has_store = false;
    for (int id : vault->cfg.reachable_from(succ)) {
      has_call = has_call || vault->cfg.block(id).contains_opcode(Opcode::kCall);
      has_store = has_store || vault->cfg.block(id).contains_opcode(Opcode::kSStore);
    }
    paying_side = has_call && has_store;
  }
  CHECK(revert_side);
  CHECK(paying_side);
}

TEST_CASE("hex parsing accepts 0x and whitespace, rejects junk") {
  CHECK(parse_hex_bytes("0x60 2a\n00") == Bytes{0x60, 0x2a, 0x00});
  CHECK_THROWS_AS(parse_hex_bytes("60g1"), LoadError);
  CHECK_THROWS_AS(parse_hex_bytes("123"), LoadError);
}
