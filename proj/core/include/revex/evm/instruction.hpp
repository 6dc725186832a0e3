#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "revex/evm/opcode.hpp"
#include "revex/evm/word.hpp"

namespace revex::evm {

// Deployed-contract size cap, adopted as a sanity bound on inputs.
constexpr std::size_t kMaxCodeSize = 24576;

struct Instruction {
  std::uint64_t pc = 0;
  Opcode opcode = Opcode::kInvalid;
  // Present iff opcode is a PUSH; length equals the PUSH width.
  std::optional<Bytes> immediate;

  std::size_t encoded_size() const {
    return 1 + (immediate ? immediate->size() : 0);
  }
  u256 immediate_word() const {
    return immediate ? from_be_bytes(immediate->data(), immediate->size()) : u256(0);
  }
  bool operator==(const Instruction& other) const {
    return pc == other.pc && opcode == other.opcode && immediate == other.immediate;
  }
};

std::string to_string(const Instruction& instr);

// Decodes every byte exactly once. Unknown bytes become INVALID; a PUSH whose
// immediate runs past the end of code is truncated and marked INVALID.
std::vector<Instruction> disassemble(const Bytes& code);

}  // namespace revex::evm
