#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "alignmatch/instance.hpp"

namespace alignmatch::detail {

/// Flat pair indices p = i * n_schools + j ordered best first: higher utility
/// wins, equal utilities fall back to lower (student, school) index. On strict
/// instances this is plain descending utility.
inline std::vector<std::size_t> pairs_best_first(const Instance& instance) {
  auto u = instance.utilities();
  std::vector<std::size_t> order(u.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (u[a] != u[b]) return u[a] > u[b];
    return a < b;
  });
  return order;
}

}  // namespace alignmatch::detail
