#include <sstream>

#include "revex/errors.hpp"
#include "revex/evm/instruction.hpp"

namespace revex::evm {

std::string to_string(const Instruction& instr) {
  std::ostringstream os;
  os << opcode_name(instr.opcode);
  if (instr.immediate) os << " 0x" << hex_of_bytes(*instr.immediate);
  return os.str();
}

std::vector<Instruction> disassemble(const Bytes& code) {
  if (code.size() > kMaxCodeSize) {
    throw LoadError("code exceeds the " + std::to_string(kMaxCodeSize) + "-byte contract size cap");
  }
  std::vector<Instruction> out;
  std::size_t pos = 0;
  while (pos < code.size()) {
    Instruction instr;
    instr.pc = pos;
    std::uint8_t byte = code[pos];
    if (!is_supported_byte(byte)) {
      instr.opcode = Opcode::kInvalid;
      ++pos;
      out.push_back(std::move(instr));
      continue;
    }
    auto op = static_cast<Opcode>(byte);
    std::size_t width = push_width(op);
    if (width == 0) {
      instr.opcode = op;
      ++pos;
      out.push_back(std::move(instr));
      continue;
    }
    if (pos + 1 + width > code.size()) {
      // Truncated immediate: consume the tail, decode as INVALID.
      instr.opcode = Opcode::kInvalid;
      pos = code.size();
      out.push_back(std::move(instr));
      continue;
    }
    instr.opcode = op;
    instr.immediate = Bytes(code.begin() + static_cast<std::ptrdiff_t>(pos + 1),
                            code.begin() + static_cast<std::ptrdiff_t>(pos + 1 + width));
    pos += 1 + width;
    out.push_back(std::move(instr));
  }
  return out;
}

}  // namespace revex::evm
