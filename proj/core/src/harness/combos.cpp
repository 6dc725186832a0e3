#include "revex/harness/combos.hpp"

#include <algorithm>

#include "revex/errors.hpp"

namespace revex::harness {

namespace {

void choose(const std::vector<std::string>& tools, std::size_t k, std::size_t from,
            std::vector<std::string>& current, std::vector<std::set<std::string>>& out) {
  if (current.size() == k) {
    out.emplace_back(current.begin(), current.end());
    return;
  }
  for (std::size_t i = from; i < tools.size(); ++i) {
    if (tools.size() - i < k - current.size()) break;
    current.push_back(tools[i]);
    choose(tools, k, i + 1, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<std::set<std::string>> enumerate_combos(const std::vector<std::string>& tools,
                                                    const std::set<std::size_t>& sizes) {
  std::vector<std::string> sorted = tools;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error("duplicate tool names");
  }
  std::vector<std::set<std::string>> out;
  for (std::size_t k : sizes) {
    if (k == 0 || k > sorted.size()) continue;
    std::vector<std::string> current;
    choose(sorted, k, 0, current, out);
  }
  return out;
}

}  // namespace revex::harness
