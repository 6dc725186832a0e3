#include "revex/evm/opcode.hpp"

#include <map>
#include <vector>

namespace revex::evm {

bool is_push(Opcode op) {
  auto b = static_cast<std::uint8_t>(op);
  return b >= static_cast<std::uint8_t>(Opcode::kPush1) && b <= static_cast<std::uint8_t>(Opcode::kPush32);
}

bool is_dup(Opcode op) {
  auto b = static_cast<std::uint8_t>(op);
  return b >= static_cast<std::uint8_t>(Opcode::kDup1) && b <= static_cast<std::uint8_t>(Opcode::kDup16);
}

bool is_swap(Opcode op) {
  auto b = static_cast<std::uint8_t>(op);
  return b >= static_cast<std::uint8_t>(Opcode::kSwap1) && b <= static_cast<std::uint8_t>(Opcode::kSwap16);
}

bool is_call_family(Opcode op) {
  return op == Opcode::kCall || op == Opcode::kCallCode || op == Opcode::kDelegateCall ||
         op == Opcode::kStaticCall;
}

bool is_key_instruction(Opcode op) {
  return op == Opcode::kSStore || op == Opcode::kSLoad || is_call_family(op);
}

bool is_terminator(Opcode op) {
  return op == Opcode::kStop || op == Opcode::kJump || op == Opcode::kJumpI ||
         op == Opcode::kReturn || op == Opcode::kRevert || op == Opcode::kInvalid;
}

std::size_t push_width(Opcode op) {
  if (!is_push(op)) return 0;
  return static_cast<std::size_t>(static_cast<std::uint8_t>(op)) -
         static_cast<std::size_t>(static_cast<std::uint8_t>(Opcode::kPush1)) + 1;
}

int dup_index(Opcode op) {
  if (!is_dup(op)) return 0;
  return static_cast<int>(static_cast<std::uint8_t>(op)) -
         static_cast<int>(static_cast<std::uint8_t>(Opcode::kDup1)) + 1;
}

int swap_index(Opcode op) {
  if (!is_swap(op)) return 0;
  return static_cast<int>(static_cast<std::uint8_t>(op)) -
         static_cast<int>(static_cast<std::uint8_t>(Opcode::kSwap1)) + 1;
}

namespace {

const std::map<Opcode, std::string>& base_names() {
  static const std::map<Opcode, std::string> names = {
      {Opcode::kStop, "STOP"},
      {Opcode::kAdd, "ADD"},
      {Opcode::kMul, "MUL"},
      {Opcode::kSub, "SUB"},
      {Opcode::kDiv, "DIV"},
      {Opcode::kLt, "LT"},
      {Opcode::kGt, "GT"},
      {Opcode::kEq, "EQ"},
      {Opcode::kIsZero, "ISZERO"},
      {Opcode::kAnd, "AND"},
      {Opcode::kOr, "OR"},
      {Opcode::kNot, "NOT"},
      {Opcode::kSha3, "SHA3"},
      {Opcode::kCaller, "CALLER"},
      {Opcode::kCallValue, "CALLVALUE"},
      {Opcode::kCallDataLoad, "CALLDATALOAD"},
      {Opcode::kCallDataSize, "CALLDATASIZE"},
      {Opcode::kPop, "POP"},
      {Opcode::kMLoad, "MLOAD"},
      {Opcode::kMStore, "MSTORE"},
      {Opcode::kSLoad, "SLOAD"},
      {Opcode::kSStore, "SSTORE"},
      {Opcode::kJump, "JUMP"},
      {Opcode::kJumpI, "JUMPI"},
      {Opcode::kPc, "PC"},
      {Opcode::kJumpDest, "JUMPDEST"},
      {Opcode::kCall, "CALL"},
      {Opcode::kCallCode, "CALLCODE"},
      {Opcode::kReturn, "RETURN"},
      {Opcode::kDelegateCall, "DELEGATECALL"},
      {Opcode::kStaticCall, "STATICCALL"},
      {Opcode::kRevert, "REVERT"},
      {Opcode::kInvalid, "INVALID"},
  };
  return names;
}

std::map<Opcode, std::string> build_names() {
  std::map<Opcode, std::string> names = base_names();
  for (int i = 1; i <= 32; ++i) {
    auto op = static_cast<Opcode>(static_cast<std::uint8_t>(Opcode::kPush1) + i - 1);
    names[op] = "PUSH" + std::to_string(i);
  }
  for (int i = 1; i <= 16; ++i) {
    auto dup = static_cast<Opcode>(static_cast<std::uint8_t>(Opcode::kDup1) + i - 1);
    auto swp = static_cast<Opcode>(static_cast<std::uint8_t>(Opcode::kSwap1) + i - 1);
    names[dup] = "DUP" + std::to_string(i);
    names[swp] = "SWAP" + std::to_string(i);
  }
  return names;
}

}  // namespace

bool is_supported_byte(std::uint8_t byte) {
  static const auto names = build_names();
  return names.count(static_cast<Opcode>(byte)) != 0;
}

std::size_t stack_pops(Opcode op) {
  if (is_push(op)) return 0;
  if (is_dup(op)) return static_cast<std::size_t>(dup_index(op));
  if (is_swap(op)) return static_cast<std::size_t>(swap_index(op)) + 1;
  switch (op) {
    case Opcode::kStop:
    case Opcode::kJumpDest:
    case Opcode::kPc:
    case Opcode::kCaller:
    case Opcode::kCallValue:
    case Opcode::kCallDataSize:
    case Opcode::kInvalid:
      return 0;
    case Opcode::kIsZero:
    case Opcode::kNot:
    case Opcode::kCallDataLoad:
    case Opcode::kMLoad:
    case Opcode::kSLoad:
    case Opcode::kPop:
    case Opcode::kJump:
      return 1;
    case Opcode::kAdd:
    case Opcode::kMul:
    case Opcode::kSub:
    case Opcode::kDiv:
    case Opcode::kLt:
    case Opcode::kGt:
    case Opcode::kEq:
    case Opcode::kAnd:
    case Opcode::kOr:
    case Opcode::kSha3:
    case Opcode::kMStore:
    case Opcode::kSStore:
    case Opcode::kJumpI:
    case Opcode::kReturn:
    case Opcode::kRevert:
      return 2;
    case Opcode::kDelegateCall:
    case Opcode::kStaticCall:
      return 6;
    case Opcode::kCall:
    case Opcode::kCallCode:
      return 7;
    default:
      return 0;
  }
}

std::size_t stack_pushes(Opcode op) {
  if (is_push(op)) return 1;
  if (is_dup(op)) return static_cast<std::size_t>(dup_index(op)) + 1;
  if (is_swap(op)) return static_cast<std::size_t>(swap_index(op)) + 1;
  switch (op) {
    case Opcode::kAdd:
    case Opcode::kMul:
    case Opcode::kSub:
    case Opcode::kDiv:
    case Opcode::kLt:
    case Opcode::kGt:
    case Opcode::kEq:
    case Opcode::kIsZero:
    case Opcode::kAnd:
    case Opcode::kOr:
    case Opcode::kNot:
    case Opcode::kSha3:
    case Opcode::kCaller:
    case Opcode::kCallValue:
    case Opcode::kCallDataLoad:
    case Opcode::kCallDataSize:
    case Opcode::kMLoad:
    case Opcode::kSLoad:
    case Opcode::kPc:
    case Opcode::kCall:
    case Opcode::kCallCode:
    case Opcode::kDelegateCall:
    case Opcode::kStaticCall:
      return 1;
    default:
      return 0;
  }
}

const std::string& opcode_name(Opcode op) {
  static const auto names = build_names();
  auto it = names.find(op);
  if (it != names.end()) return it->second;
  static const std::string invalid = "INVALID";
  return invalid;
}

std::optional<Opcode> opcode_from_name(const std::string& name) {
  static const std::map<std::string, Opcode> lookup = [] {
    std::map<std::string, Opcode> m;
    for (const auto& [op, n] : build_names()) m[n] = op;
    return m;
  }();
  auto it = lookup.find(name);
  if (it == lookup.end()) return std::nullopt;
  return it->second;
}

}  // namespace revex::evm
