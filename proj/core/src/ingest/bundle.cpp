#include "revex/ingest/bundle.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "revex/errors.hpp"
#include "revex/evm/assembler.hpp"

namespace revex::ingest {

namespace fs = std::filesystem;
using nlohmann::json;

std::string SlotDesc::to_string() const {
  return (kind == Kind::kSlot ? "slot:" : "map:") + evm::to_hex(index);
}

void Corpus::add(ContractBundle bundle) {
  if (contracts_.count(bundle.contract_id)) {
    throw LoadError("duplicate contract id: " + bundle.contract_id);
  }
  if (by_address_.count(bundle.address)) {
    throw LoadError("duplicate contract address " + evm::to_hex(bundle.address) + " (" +
                    bundle.contract_id + " vs " + by_address_[bundle.address] + ")");
  }
  LoadedContract loaded;
  loaded.instructions = evm::disassemble(bundle.code);
  loaded.cfg = evm::build_cfg(loaded.instructions);
  by_address_[bundle.address] = bundle.contract_id;
  std::string id = bundle.contract_id;
  loaded.bundle = std::move(bundle);
  contracts_.emplace(std::move(id), std::move(loaded));
}

const LoadedContract* Corpus::find(const std::string& contract_id) const {
  auto it = contracts_.find(contract_id);
  return it == contracts_.end() ? nullptr : &it->second;
}

const LoadedContract* Corpus::find_by_address(const evm::u256& address) const {
  auto it = by_address_.find(address);
  return it == by_address_.end() ? nullptr : find(it->second);
}

std::vector<evm::u256> Corpus::addresses() const {
  std::vector<evm::u256> out;
  out.reserve(by_address_.size());
  for (const auto& [addr, id] : by_address_) out.push_back(addr);
  return out;
}

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open file: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<SlotDesc> parse_state_vars(const json& arr, const std::string& file) {
  std::vector<SlotDesc> out;
  for (const auto& sv : arr) {
    if (sv.contains("slot")) {
      out.push_back(SlotDesc::slot(evm::u256(sv["slot"].get<std::uint64_t>())));
    } else if (sv.contains("mapping_base")) {
      out.push_back(SlotDesc::mapping_base(evm::u256(sv["mapping_base"].get<std::uint64_t>())));
    } else {
      throw SchemaError("state_vars entries need slot or mapping_base in " + file);
    }
  }
  return out;
}

void apply_metadata(ContractBundle& bundle, const fs::path& meta_path) {
  json doc;
  try {
    doc = json::parse(read_file(meta_path));
  } catch (const json::parse_error& e) {
    throw SchemaError("metadata is not valid JSON (" + meta_path.string() + "): " + e.what());
  }
  if (doc.contains("address")) {
    std::string addr = doc["address"].get<std::string>();
    std::string digits = addr;
    if (digits.rfind("0x", 0) == 0) digits = digits.substr(2);
    if (digits.size() != 40) {
      throw SchemaError("address must be 20 bytes in " + meta_path.string());
    }
    bundle.address = evm::parse_u256(addr);
  }
  if (doc.contains("functions")) {
    std::vector<DeclaredFunction> fns;
    for (const auto& f : doc["functions"]) {
      DeclaredFunction fn;
      fn.selector = parse_selector(f["selector"].get<std::string>());
      fn.name = f.value("name", std::string());
      if (f.contains("state_vars")) fn.state_vars = parse_state_vars(f["state_vars"], meta_path.string());
      fns.push_back(std::move(fn));
    }
    bundle.declared_functions = std::move(fns);
  }
}

// Deterministic default address when metadata does not pin one: low 20 bytes
// of the id hash would pull in keccak here; a simple increment keeps load
// order-independent instead because ids are sorted first.
evm::u256 default_address(std::size_t ordinal) {
  return evm::u256(0x1000) + ordinal;
}

}  // namespace

Corpus load_bundle(const std::string& dir) {
  if (!fs::exists(dir) || !fs::is_directory(dir)) {
    throw LoadError("corpus directory does not exist: " + dir);
  }
  std::vector<fs::path> code_files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    auto ext = entry.path().extension().string();
    if (ext == ".hex" || ext == ".asm") code_files.push_back(entry.path());
  }
  std::sort(code_files.begin(), code_files.end());

  Corpus corpus;
  std::size_t ordinal = 0;
  for (const auto& path : code_files) {
    ContractBundle bundle;
    bundle.contract_id = path.stem().string();
    std::string text = read_file(path);
    if (path.extension() == ".hex") {
      try {
        bundle.code = evm::parse_hex_bytes(text);
      } catch (const LoadError& e) {
        throw LoadError(std::string(e.what()) + " in " + path.string());
      }
    } else {
      try {
        bundle.code = evm::assemble(text);
      } catch (const AsmError& e) {
        throw LoadError(std::string(e.what()) + " in " + path.string());
      }
    }
    bundle.address = default_address(ordinal++);
    fs::path meta = path;
    meta.replace_extension(".meta.json");
    if (fs::exists(meta)) apply_metadata(bundle, meta);
    corpus.add(std::move(bundle));
  }
  return corpus;
}

void bind_report(const WarningReport& report, const Corpus& corpus) {
  for (const auto& w : report.warnings) {
    const LoadedContract* contract = corpus.find(w.contract_id);
    if (!contract) {
      throw SchemaError("warning names unknown contract: " + w.contract_id);
    }
    if (!contract->cfg.function_entries.count(w.selector)) {
      throw SchemaError("warning selector " + selector_hex(w.selector) +
                        " is not a function entry of " + w.contract_id);
    }
  }
}

}  // namespace revex::ingest
