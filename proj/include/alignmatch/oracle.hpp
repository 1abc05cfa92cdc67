#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "alignmatch/instance.hpp"

// Brute-force ground truth for tiny economies. Nothing here calls into the
// solvers; the verification report at the bottom is what ties the two
// together.
namespace alignmatch::oracle {

struct EnumerationBudget {
  std::size_t max_students = 7;
  std::uint64_t max_allocations = 10'000'000;
};

/// Calls `visit` once per feasible allocation, partial ones included, in a
/// fixed order (student 0 first; "unassigned" before school 0, 1, ...).
/// Returns the number of allocations visited. Throws BudgetExceeded.
std::uint64_t enumerate_feasible(
    const Instance& instance, const EnumerationBudget& budget,
    const std::function<void(const Allocation&)>& visit);

std::vector<Allocation> brute_force_stable(const Instance& instance,
                                           const EnumerationBudget& budget);

/// Best allocation from the top over all feasible allocations.
Allocation brute_force_lex_top(const Instance& instance,
                               const EnumerationBudget& budget);

/// Best allocation from the bottom over maximum-cardinality allocations.
Allocation brute_force_lex_bottom(const Instance& instance,
                                  const EnumerationBudget& budget);

/// Max over maximum-cardinality allocations of the minimum assigned utility.
double brute_force_bottleneck(const Instance& instance,
                              const EnumerationBudget& budget);

/// Definition-level stability check, written as a plain double loop over
/// (student, school). Returns the blocking (student, school) index pairs.
std::vector<std::pair<std::size_t, std::size_t>> blocking_pairs_direct(
    const Instance& instance, const Allocation& allocation);

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

/// Runs every oracle cross-check against the solvers on one instance:
/// uniqueness of the stable allocation, equality with max-max-lex, deferred
/// acceptance and the top-lex optimum, bottom-lex optimality of max-min-lex,
/// and the bottleneck value.
VerifyReport verify_instance(const Instance& instance,
                             const EnumerationBudget& budget);

}  // namespace alignmatch::oracle
