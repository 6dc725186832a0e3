#pragma once

#include <set>
#include <string>
#include <vector>

namespace revex::harness {

// All subsets of the given sizes, in deterministic order: sizes ascending,
// then lexicographic over the sorted tool list. Eight tools with sizes
// {2,4,6,8} yield 28+70+28+1 = 127 combinations. Throws Error on duplicate
// tool names.
std::vector<std::set<std::string>> enumerate_combos(const std::vector<std::string>& tools,
                                                    const std::set<std::size_t>& sizes = {2, 4, 6, 8});

}  // namespace revex::harness
