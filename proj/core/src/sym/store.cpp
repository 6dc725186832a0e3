#include "revex/sym/store.hpp"

namespace revex::sym {

SymWord GlobalStore::read(const GotKey& key) const {
  auto part = partitions_.find(key.contract_id);
  if (part != partitions_.end()) {
    auto it = part->second.find(key.canonical_slot());
    if (it != part->second.end()) return it->second.value;
  }
  return SymWord::constant(0);
}

void GlobalStore::write(const GotKey& key, SymWord value) {
  partitions_[key.contract_id][key.canonical_slot()] = Entry{key.slot, std::move(value)};
}

SymWord got_read(const GlobalStore& store, const GotKey& key) { return store.read(key); }

GlobalStore got_write(GlobalStore store, const GotKey& key, SymWord value) {
  store.write(key, std::move(value));
  return store;
}

}  // namespace revex::sym
