#pragma once

#include <string>
#include <vector>

#include "revex/evm/instruction.hpp"

namespace revex::evm {

// Assembles mnemonic text into bytecode.
//
// Grammar, one item per line:
//   MNEMONIC [operand]     e.g.  PUSH1 0x2a
//   label:                 marks the pc of the next instruction
//   ; comment              anywhere on a line
//
// PUSH operands are 0x-prefixed hex immediates or label references (any
// other token). A label reference encodes as a two-byte immediate unless the
// PUSH width is explicit. `PUSH` without a width picks the minimal width for
// hex immediates and two bytes for labels.
//
// Throws AsmError naming the offending line for unknown mnemonics, undefined
// or duplicate labels, and malformed operands.
Bytes assemble(const std::string& text);

// Renders instructions back to assembler-accepted text, one per line.
std::string render_program(const std::vector<Instruction>& instrs);

}  // namespace revex::evm
