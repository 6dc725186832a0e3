#include "revex/harness/metrics.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

#include "revex/errors.hpp"

namespace revex::harness {

using verify::Outcome;
using verify::Verdict;

GroundTruth parse_truth(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("truth file is not valid JSON: ") + e.what());
  }
  GroundTruth truth;
  for (const auto& [key, value] : doc.items()) {
    if (!value.is_boolean()) throw SchemaError("truth entries must be booleans: " + key);
    truth.vulnerable[key] = value.get<bool>();
  }
  return truth;
}

GroundTruth load_truth(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open truth file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_truth(buf.str());
}

Metrics metrics_from_counts(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn, std::uint64_t tn) {
  Metrics m;
  m.tp = tp;
  m.fp = fp;
  m.fn = fn;
  m.tn = tn;
  if (tp + fp > 0) m.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  if (tp + fn > 0) m.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  if (m.precision && m.recall && (*m.precision + *m.recall) > 0) {
    m.f1 = 2.0 * *m.precision * *m.recall / (*m.precision + *m.recall);
  }
  return m;
}

Metrics score(const std::vector<Verdict>& verdicts, const GroundTruth& truth) {
  // Contract-level outcome: confirmed dominates, then unknown.
  std::map<std::string, Outcome> per_contract;
  for (const auto& v : verdicts) {
    if (!truth.vulnerable.count(v.contract_id)) {
      throw Error("verdict for unlabeled contract: " + v.contract_id);
    }
    auto it = per_contract.find(v.contract_id);
    if (it == per_contract.end()) {
      per_contract[v.contract_id] = v.outcome;
      continue;
    }
    if (v.outcome == Outcome::kConfirmed || (v.outcome == Outcome::kUnknown && it->second == Outcome::kRefuted)) {
      it->second = v.outcome;
    }
  }

  std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0, unknown = 0;
  for (const auto& [contract, vulnerable] : truth.vulnerable) {
    auto it = per_contract.find(contract);
    bool confirmed = it != per_contract.end() && it->second == Outcome::kConfirmed;
    if (it != per_contract.end() && it->second == Outcome::kUnknown) ++unknown;
    if (confirmed) {
      (vulnerable ? tp : fp) += 1;
    } else {
      (vulnerable ? fn : tn) += 1;
    }
  }
  Metrics m = metrics_from_counts(tp, fp, fn, tn);
  m.unknown = unknown;
  return m;
}

std::string format_percent(double fraction) {
  double pct = fraction * 100.0;
  double rounded = std::floor(pct * 10.0 + 0.5) / 10.0;
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(1);
  os << rounded << "%";
  return os.str();
}

std::string metrics_to_json(const Metrics& m) {
  nlohmann::json doc;
  doc["tp"] = m.tp;
  doc["fp"] = m.fp;
  doc["fn"] = m.fn;
  doc["tn"] = m.tn;
  doc["unknown"] = m.unknown;
  doc["precision"] = m.precision ? nlohmann::json(*m.precision) : nlohmann::json();
  doc["recall"] = m.recall ? nlohmann::json(*m.recall) : nlohmann::json();
  doc["f1"] = m.f1 ? nlohmann::json(*m.f1) : nlohmann::json();
  if (m.precision) doc["precision_pct"] = format_percent(*m.precision);
  if (m.recall) doc["recall_pct"] = format_percent(*m.recall);
  if (m.f1) doc["f1_pct"] = format_percent(*m.f1);
  return doc.dump(2);
}

std::string metrics_table(const Metrics& m) {
  std::ostringstream os;
  auto cell = [](const std::optional<double>& v) {
    return v ? format_percent(*v) : std::string("n/a");
  };
  os << "  TP " << m.tp << "  FP " << m.fp << "  FN " << m.fn << "  TN " << m.tn << "  unknown "
     << m.unknown << "\n";
  os << "  precision " << cell(m.precision) << "  recall " << cell(m.recall) << "  f1 "
     << cell(m.f1) << "\n";
  return os.str();
}

}  // namespace revex::harness
