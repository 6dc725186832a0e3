#include "revex/ingest/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "revex/errors.hpp"

namespace revex::ingest {

using nlohmann::json;

std::string selector_hex(std::uint32_t selector) {
  static const char* digits = "0123456789abcdef";
  std::string out = "0x";
  for (int shift = 28; shift >= 0; shift -= 4) out.push_back(digits[(selector >> shift) & 0xf]);
  return out;
}

std::uint32_t parse_selector(const std::string& text) {
  std::string t = text;
  if (t.rfind("0x", 0) == 0 || t.rfind("0X", 0) == 0) t = t.substr(2);
  if (t.size() != 8) throw SchemaError("selector must be exactly 4 bytes: " + text);
  std::uint32_t v = 0;
  for (char c : t) {
    int n;
    if (c >= '0' && c <= '9') n = c - '0';
    else if (c >= 'a' && c <= 'f') n = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') n = c - 'A' + 10;
    else throw SchemaError("bad hex digit in selector: " + text);
    v = (v << 4) | static_cast<std::uint32_t>(n);
  }
  return v;
}

WarningReport parse_report(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("report is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("report root must be an object");
  if (!doc.contains("tool_name") || !doc["tool_name"].is_string()) {
    throw SchemaError("report missing tool_name");
  }

  WarningReport report;
  report.tool_name = doc["tool_name"].get<std::string>();

  std::string default_contract;
  if (doc.contains("contract_id") && doc["contract_id"].is_string()) {
    default_contract = doc["contract_id"].get<std::string>();
  }

  std::set<std::pair<std::string, std::uint32_t>> seen;
  for (const auto& w : doc.value("warnings", json::array())) {
    if (!w.is_object()) throw SchemaError("warning entries must be objects");
    Warning warning;
    if (w.contains("contract_id")) {
      warning.contract_id = w["contract_id"].get<std::string>();
    } else {
      warning.contract_id = default_contract;
    }
    if (warning.contract_id.empty()) throw SchemaError("report missing contract_id");
    if (!w.contains("selector")) throw SchemaError("warning missing selector");
    warning.selector = parse_selector(w["selector"].get<std::string>());
    if (w.contains("pc") && !w["pc"].is_null()) warning.pc_hint = w["pc"].get<std::uint64_t>();
    warning.kind = w.value("kind", std::string("reentrancy"));
    if (seen.insert({warning.contract_id, warning.selector}).second) {
      report.warnings.push_back(std::move(warning));
    }
  }
  if (report.warnings.empty() && !doc.contains("contract_id")) {
    // An empty report is valid but must still name its subject.
    throw SchemaError("report missing contract_id");
  }
  std::sort(report.warnings.begin(), report.warnings.end());
  return report;
}

WarningReport ingest_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open report file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_report(buf.str());
}

std::string report_to_json(const WarningReport& report) {
  json doc;
  doc["tool_name"] = report.tool_name;
  doc["warnings"] = json::array();
  for (const auto& w : report.warnings) {
    json entry;
    entry["contract_id"] = w.contract_id;
    entry["selector"] = selector_hex(w.selector);
    if (w.pc_hint) entry["pc"] = *w.pc_hint;
    entry["kind"] = w.kind;
    doc["warnings"].push_back(entry);
  }
  return doc.dump(2);
}

}  // namespace revex::ingest
