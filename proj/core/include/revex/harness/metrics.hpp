#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "revex/verify/verifier.hpp"

namespace revex::harness {

// Per-contract labels for the evaluated corpus.
struct GroundTruth {
  std::map<std::string, bool> vulnerable;
};

GroundTruth load_truth(const std::string& path);
GroundTruth parse_truth(const std::string& json_text);

struct Metrics {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;
  std::uint64_t unknown = 0;  // tallied separately, never counted as confirmed
  // Fractions in [0,1]; empty when the denominator is zero.
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
};

// Derives the ratios from raw counts.
Metrics metrics_from_counts(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn, std::uint64_t tn);

// Contract-level scoring: a contract counts confirmed when any of its
// warnings confirmed; contracts in the truth map without any verdict count on
// the unwarned side. Throws Error for a verdict naming an unlabeled contract.
Metrics score(const std::vector<verify::Verdict>& verdicts, const GroundTruth& truth);

// Percentage with one decimal, round half-up: 26/15500 -> "0.2%".
std::string format_percent(double fraction);
std::string metrics_to_json(const Metrics& m);
std::string metrics_table(const Metrics& m);

}  // namespace revex::harness
