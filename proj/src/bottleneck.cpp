#include <algorithm>
#include <functional>
#include <queue>

#include "alignmatch/solvers.hpp"
#include "capacitated_matcher.hpp"
#include "pair_order.hpp"

namespace alignmatch {

namespace {

using detail::CapacitatedMatcher;

// Maximum matching over the edges accepted by `admissible`: a greedy pass
// over the edge order fills seats, then one augmenting search per student
// left over.
template <typename Admissible>
CapacitatedMatcher maximum_matching(const Instance& instance,
                                    const std::vector<std::size_t>& order,
                                    Admissible&& admissible) {
  const std::size_t m = instance.n_schools();
  CapacitatedMatcher matcher(instance.n_students(), instance.capacities());
  for (std::size_t p : order) {
    std::size_t i = p / m;
    std::size_t j = p % m;
    if (matcher.school_of(i) == CapacitatedMatcher::kNone &&
        matcher.has_spare(j) && admissible(i, j))
      matcher.assign(i, j);
  }
  for (std::size_t i = 0; i < instance.n_students(); ++i) {
    if (matcher.size() == instance.max_cardinality()) break;
    if (matcher.school_of(i) != CapacitatedMatcher::kNone) continue;
    std::size_t source = i;
    matcher.augment(std::span<const std::size_t>(&source, 1), admissible);
  }
  return matcher;
}

}  // namespace

bool feasible_above(const Instance& instance, Threshold threshold) {
  auto admissible = [&](std::size_t i, std::size_t j) {
    return UtilityLevel::finite(instance.utility(StudentId{i}, SchoolId{j})) >=
           threshold;
  };
  auto matcher =
      maximum_matching(instance, detail::pairs_best_first(instance), admissible);
  return matcher.size() == instance.max_cardinality();
}

// Binary search over the sorted distinct matrix values, pivoting on the
// median of the candidates still open. The smallest value admits every edge,
// so it is always feasible and the search always has an answer.
Threshold bottleneck_value(const Instance& instance) {
  std::vector<double> values(instance.utilities().begin(),
                             instance.utilities().end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  std::size_t best = 0;
  std::size_t lo = 1;
  std::size_t hi = values.size();  // open candidates: [lo, hi)
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (feasible_above(instance, Threshold::finite(values[mid]))) {
      best = mid;
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return Threshold::finite(values[best]);
}

// Iterated bottleneck, run incrementally on one matcher. Edges are ranked by
// goodness (0 = worst pair). The matcher always holds a maximum matching of
// the residual economy that uses only edges above `floor`. Each step drops
// the worst unfixed matched edge and tries to repair cardinality with one
// augmenting path; when repair fails, that edge is the bottleneck of the
// residual economy and gets fixed.
SolveResult max_min_lex(const Instance& instance) {
  const std::size_t n = instance.n_students();
  const std::size_t m = instance.n_schools();
  const auto order = detail::pairs_best_first(instance);
  const std::size_t n_pairs = order.size();

  std::vector<std::size_t> goodness(n_pairs);
  for (std::size_t pos = 0; pos < n_pairs; ++pos)
    goodness[order[pos]] = n_pairs - 1 - pos;

  std::size_t floor = 0;
  bool any_floor = false;
  auto admissible = [&](std::size_t i, std::size_t j) {
    return !any_floor || goodness[i * m + j] > floor;
  };
  auto matcher = maximum_matching(instance, order, admissible);

  using Entry = std::pair<std::size_t, std::size_t>;  // (goodness, student)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  auto push = [&](std::size_t i) {
    std::size_t j = matcher.school_of(i);
    if (j != CapacitatedMatcher::kNone) heap.emplace(goodness[i * m + j], i);
  };
  for (std::size_t i = 0; i < n; ++i) push(i);

  SolverTrace trace;
  std::size_t level = 0;
  std::vector<std::size_t> sources;
  std::vector<std::size_t> moved;
  while (!heap.empty()) {
    auto [g, s] = heap.top();
    heap.pop();
    std::size_t j = matcher.school_of(s);
    if (matcher.frozen(s) || j == CapacitatedMatcher::kNone ||
        goodness[s * m + j] != g)
      continue;  // stale entry

    floor = g;
    any_floor = true;
    matcher.unassign(s);
    sources.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (!matcher.frozen(i) && matcher.school_of(i) == CapacitatedMatcher::kNone)
        sources.push_back(i);
    moved.clear();
    bool repaired = matcher.augment(sources, admissible, &moved);
    if (g + 1 < n_pairs) {
      double next_level = instance.utilities()[order[n_pairs - 2 - g]];
      trace.events.emplace_back(
          ThresholdTest{Threshold::finite(next_level), repaired});
    }
    if (repaired) {
      for (std::size_t i : moved) push(i);
      continue;
    }
    matcher.assign(s, j);
    matcher.freeze(s);
    trace.events.emplace_back(LevelFix{level++, StudentId{s}, SchoolId{j},
                                       instance.utility(StudentId{s}, SchoolId{j})});
  }

  SolveResult result{Allocation(n, m), std::move(trace)};
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = matcher.school_of(i);
    if (j != CapacitatedMatcher::kNone)
      result.allocation.assign(StudentId{i}, SchoolId{j});
  }
  return result;
}

}  // namespace alignmatch
