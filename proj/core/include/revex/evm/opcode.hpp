#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace revex::evm {

// Supported subset of the 256-bit stack machine. Byte values follow the
// published opcode table; anything outside the subset decodes to kInvalid.
enum class Opcode : std::uint8_t {
  kStop = 0x00,
  kAdd = 0x01,
  kMul = 0x02,
  kSub = 0x03,
  kDiv = 0x04,
  kLt = 0x10,
  kGt = 0x11,
  kEq = 0x14,
  kIsZero = 0x15,
  kAnd = 0x16,
  kOr = 0x17,
  kNot = 0x19,
  kSha3 = 0x20,
  kCaller = 0x33,
  kCallValue = 0x34,
  kCallDataLoad = 0x35,
  kCallDataSize = 0x36,
  kPop = 0x50,
  kMLoad = 0x51,
  kMStore = 0x52,
  kSLoad = 0x54,
  kSStore = 0x55,
  kJump = 0x56,
  kJumpI = 0x57,
  kPc = 0x58,
  kJumpDest = 0x5b,
  kPush1 = 0x60,
  kPush32 = 0x7f,
  kDup1 = 0x80,
  kDup16 = 0x8f,
  kSwap1 = 0x90,
  kSwap16 = 0x9f,
  kCall = 0xf1,
  kCallCode = 0xf2,
  kReturn = 0xf3,
  kDelegateCall = 0xf4,
  kStaticCall = 0xfa,
  kRevert = 0xfd,
  kInvalid = 0xfe,
};

bool is_push(Opcode op);
bool is_dup(Opcode op);
bool is_swap(Opcode op);
// CALL, CALLCODE, DELEGATECALL, STATICCALL.
bool is_call_family(Opcode op);
// SSTORE, SLOAD, or any call-family opcode.
bool is_key_instruction(Opcode op);
// Instructions that end a basic block.
bool is_terminator(Opcode op);

// Width of the PUSH immediate, 0 for everything else.
std::size_t push_width(Opcode op);
// DUP depth (1..16) / SWAP depth (1..16).
int dup_index(Opcode op);
int swap_index(Opcode op);

// True if the raw byte is one of the supported opcodes.
bool is_supported_byte(std::uint8_t byte);

// Stack effect: words popped / pushed.
std::size_t stack_pops(Opcode op);
std::size_t stack_pushes(Opcode op);

const std::string& opcode_name(Opcode op);
// Mnemonic lookup for the assembler; nullopt for unknown names.
std::optional<Opcode> opcode_from_name(const std::string& name);

}  // namespace revex::evm
