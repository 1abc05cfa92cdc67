#include <algorithm>

#include "alignmatch/solvers.hpp"
#include "pair_order.hpp"

namespace alignmatch {

std::string_view algorithm_name(Algorithm algorithm) noexcept {
  switch (algorithm) {
    case Algorithm::MaxMaxLex: return "max-max-lex";
    case Algorithm::DeferredAcceptance: return "da";
    case Algorithm::MaxMinLex: return "max-min-lex";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept {
  if (name == "max-max-lex") return Algorithm::MaxMaxLex;
  if (name == "da" || name == "deferred-acceptance")
    return Algorithm::DeferredAcceptance;
  if (name == "max-min-lex") return Algorithm::MaxMinLex;
  return std::nullopt;
}

// Sorting every pair once and sweeping it is the same as taking the argmax
// over available students and schools at every step.
SolveResult max_max_lex(const Instance& instance) {
  const std::size_t m = instance.n_schools();
  SolveResult result{Allocation(instance.n_students(), m), {}};
  std::vector<std::int64_t> residual(instance.capacities().begin(),
                                     instance.capacities().end());
  const std::size_t target = instance.max_cardinality();
  std::size_t step = 0;
  for (std::size_t p : detail::pairs_best_first(instance)) {
    if (step == target) break;
    StudentId i{p / m};
    SchoolId j{p % m};
    if (residual[j.index] == 0 || result.allocation.school_of(i)) continue;
    result.allocation.assign(i, j);
    --residual[j.index];
    result.trace.events.emplace_back(
        GreedyMatch{step++, i, j, instance.utility(i, j)});
  }
  return result;
}

SolveResult solve(const Instance& instance, Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::MaxMaxLex: return max_max_lex(instance);
    case Algorithm::DeferredAcceptance: return deferred_acceptance(instance);
    case Algorithm::MaxMinLex: return max_min_lex(instance);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown algorithm");
}

Allocation replay_trace(const Instance& instance, const SolverTrace& trace) {
  Allocation alloc(instance.n_students(), instance.n_schools());
  for (const auto& event : trace.events) {
    if (const auto* g = std::get_if<GreedyMatch>(&event)) {
      alloc.assign(g->student, g->school);
    } else if (const auto* f = std::get_if<LevelFix>(&event)) {
      alloc.assign(f->student, f->school);
    }
  }
  require_feasible(instance, alloc);
  return alloc;
}

}  // namespace alignmatch
