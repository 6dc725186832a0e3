#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "revex/evm/cfg.hpp"
#include "revex/evm/instruction.hpp"
#include "revex/evm/word.hpp"
#include "revex/ingest/report.hpp"

namespace revex::ingest {

// A storage slot named by constant index or by the base slot of a mapping
// (every key of one mapping is folded into its base).
struct SlotDesc {
  enum class Kind { kSlot, kMappingBase };
  Kind kind = Kind::kSlot;
  evm::u256 index;

  static SlotDesc slot(evm::u256 i) { return {Kind::kSlot, std::move(i)}; }
  static SlotDesc mapping_base(evm::u256 i) { return {Kind::kMappingBase, std::move(i)}; }

  bool operator<(const SlotDesc& other) const {
    if (kind != other.kind) return kind < other.kind;
    return index < other.index;
  }
  bool operator==(const SlotDesc& other) const { return kind == other.kind && index == other.index; }
  std::string to_string() const;
};

struct DeclaredFunction {
  std::uint32_t selector = 0;
  std::string name;
  std::vector<SlotDesc> state_vars;
};

struct ContractBundle {
  std::string contract_id;
  evm::Bytes code;
  evm::u256 address;  // 20-byte value
  std::optional<std::vector<DeclaredFunction>> declared_functions;
};

// A bundle plus everything derived from its code at load time.
struct LoadedContract {
  ContractBundle bundle;
  std::vector<evm::Instruction> instructions;
  evm::Cfg cfg;
};

class Corpus {
 public:
  void add(ContractBundle bundle);

  const LoadedContract* find(const std::string& contract_id) const;
  const LoadedContract* find_by_address(const evm::u256& address) const;
  const std::map<std::string, LoadedContract>& contracts() const { return contracts_; }
  std::vector<evm::u256> addresses() const;

 private:
  std::map<std::string, LoadedContract> contracts_;
  std::map<evm::u256, std::string> by_address_;
};

// Loads every contract in a directory: `<id>.hex` or `<id>.asm` plus optional
// `<id>.meta.json`. Throws LoadError for duplicate addresses or undecodable
// hex (naming the file).
Corpus load_bundle(const std::string& dir);

// Validates that every warned selector exists among the target contract's
// function entries. Throws SchemaError otherwise.
void bind_report(const WarningReport& report, const Corpus& corpus);

}  // namespace revex::ingest
