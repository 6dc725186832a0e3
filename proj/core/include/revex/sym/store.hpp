#pragma once

#include <map>
#include <string>

#include "revex/sym/expr.hpp"

namespace revex::sym {

// Storage address: one partition per contract, slots keyed by canonical
// expression. L = GOT(contract_id @ slot_id).
struct GotKey {
  std::string contract_id;
  SymWord slot;

  std::string canonical_slot() const { return slot.to_string(); }
};

// Cross-contract storage. Partitions never alias; reads of never-written
// slots are concrete zero; a read after a write of a structurally identical
// slot key returns the written word.
class GlobalStore {
 public:
  struct Entry {
    SymWord slot;  // original key expression, kept for diagnostics
    SymWord value;
  };

  SymWord read(const GotKey& key) const;
  void write(const GotKey& key, SymWord value);

  const std::map<std::string, std::map<std::string, Entry>>& partitions() const {
    return partitions_;
  }

 private:
  // contract_id -> canonical slot -> entry
  std::map<std::string, std::map<std::string, Entry>> partitions_;
};

SymWord got_read(const GlobalStore& store, const GotKey& key);
GlobalStore got_write(GlobalStore store, const GotKey& key, SymWord value);

}  // namespace revex::sym
