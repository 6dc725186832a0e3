#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace revex::ingest {

struct Warning {
  std::string contract_id;
  std::uint32_t selector = 0;
  std::optional<std::uint64_t> pc_hint;  // advisory only
  std::string kind;

  bool operator<(const Warning& other) const {
    if (contract_id != other.contract_id) return contract_id < other.contract_id;
    return selector < other.selector;
  }
};

// Normalized upstream-tool output. One report file covers one contract; a
// merged report (tool_name "a+b") may span several, so each warning carries
// its contract id.
struct WarningReport {
  std::string tool_name;
  std::vector<Warning> warnings;  // deduplicated on (contract_id, selector)
};

// Parses a report document. Unknown extra fields are ignored; duplicate
// (contract_id, selector) entries collapse to the first occurrence.
// Throws SchemaError for missing tool_name/contract_id or a selector that is
// not exactly four bytes.
WarningReport parse_report(const std::string& json_text);
WarningReport ingest_report(const std::string& path);

std::string report_to_json(const WarningReport& report);

std::string selector_hex(std::uint32_t selector);
std::uint32_t parse_selector(const std::string& text);

}  // namespace revex::ingest
