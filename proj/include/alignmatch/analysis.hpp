#pragma once

#include <compare>
#include <cstddef>
#include <variant>
#include <vector>

#include "alignmatch/instance.hpp"

namespace alignmatch {

struct SpareCapacity {
  friend bool operator==(SpareCapacity, SpareCapacity) = default;
};

struct DisplacesStudent {
  StudentId displaced;
  friend bool operator==(DisplacesStudent, DisplacesStudent) = default;
};

using BlockingReason = std::variant<SpareCapacity, DisplacesStudent>;

/// (student, school) witnessing instability. For DisplacesStudent the
/// displaced student is the one the school values least in its roster.
/// student_gain is +infinity for an unassigned student.
struct BlockingPair {
  StudentId student;
  SchoolId school;
  BlockingReason reason;
  double student_gain;

  friend bool operator==(const BlockingPair&, const BlockingPair&) = default;
};

/// Every blocking pair, sorted by (student, school). Empty iff stable.
std::vector<BlockingPair> find_blocking_pairs(const Instance& instance,
                                              const Allocation& allocation);

bool is_stable(const Instance& instance, const Allocation& allocation);

// Compare sorted copies; the greater vector wins at the first difference.
// _top sorts descending, _bottom ascending. Throws LengthMismatch.
std::strong_ordering lex_compare_top(const UtilityVector& a,
                                     const UtilityVector& b);
std::strong_ordering lex_compare_bottom(const UtilityVector& a,
                                        const UtilityVector& b);

/// Dispersion of assigned utilities. Variance is the population variance;
/// gini = sum_i sum_k |x_i - x_k| / (2 n^2 mean). Unassigned students are only
/// counted in n_unassigned.
struct MetricsReport {
  double min_utility;
  double max_utility;
  double range;
  double mean;
  double variance;
  double gini;
  std::size_t n_unassigned;
};

MetricsReport metrics(const UtilityVector& utilities);
MetricsReport metrics(const Instance& instance, const Allocation& allocation);

}  // namespace alignmatch
