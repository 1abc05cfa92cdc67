#pragma once

#include <optional>
#include <vector>

#include "alignmatch/instance.hpp"

namespace fixtures {

using namespace alignmatch;

// u_ij > u_ij' > u_i'j > u_i'j': student 0 = i, school 0 = j.
inline Instance two_by_two() {
  return build_instance(2, 2, {1, 1}, {{4, 3}, {2, 1}});
}

inline Instance one_by_one() { return build_instance(1, 1, {1}, {{1}}); }

inline Instance three_by_one() {
  return build_instance(3, 1, {2}, {{5}, {3}, {1}});
}

inline Allocation make(const Instance& inst,
                       std::vector<std::optional<std::size_t>> schools) {
  std::vector<std::optional<SchoolId>> a;
  for (auto j : schools) a.push_back(j ? std::optional(SchoolId{*j}) : std::nullopt);
  return Allocation::from_assignment(inst, a);
}

}  // namespace fixtures
