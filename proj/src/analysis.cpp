#include "alignmatch/analysis.hpp"

#include <algorithm>
#include <limits>

namespace alignmatch {

std::vector<BlockingPair> find_blocking_pairs(const Instance& instance,
                                              const Allocation& allocation) {
  require_feasible(instance, allocation);
  const std::size_t m = instance.n_schools();

  // Least-valued roster member per full school; the only one a blocking
  // student would need to displace.
  std::vector<std::optional<StudentId>> weakest(m);
  std::vector<bool> spare(m);
  for (std::size_t j = 0; j < m; ++j) {
    SchoolId school{j};
    auto roster = allocation.roster(school);
    spare[j] = static_cast<std::int64_t>(roster.size()) < instance.capacity(school);
    for (StudentId i : roster) {
      if (!weakest[j] ||
          instance.utility(i, school) < instance.utility(*weakest[j], school))
        weakest[j] = i;
    }
  }

  std::vector<BlockingPair> out;
  for (std::size_t i = 0; i < instance.n_students(); ++i) {
    StudentId student{i};
    auto current = allocation.school_of(student);
    UtilityLevel have = current ? UtilityLevel::finite(
                                      instance.utility(student, *current))
                                : UtilityLevel::neg_inf();
    for (std::size_t j = 0; j < m; ++j) {
      SchoolId school{j};
      double u = instance.utility(student, school);
      if (!(UtilityLevel::finite(u) > have)) continue;
      double gain = have.is_finite()
                        ? u - have.value()
                        : std::numeric_limits<double>::infinity();
      if (spare[j]) {
        out.push_back({student, school, SpareCapacity{}, gain});
      } else if (weakest[j] && instance.utility(*weakest[j], school) < u) {
        out.push_back({student, school, DisplacesStudent{*weakest[j]}, gain});
      }
    }
  }
  return out;
}

bool is_stable(const Instance& instance, const Allocation& allocation) {
  return find_blocking_pairs(instance, allocation).empty();
}

namespace {

std::strong_ordering compare_sorted(const std::vector<UtilityLevel>& a,
                                    const std::vector<UtilityLevel>& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (auto c = a[k] <=> b[k]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

void require_same_length(const UtilityVector& a, const UtilityVector& b) {
  if (a.size() != b.size())
    throw Error(ErrorCode::LengthMismatch,
                "utility vectors of length " + std::to_string(a.size()) +
                    " and " + std::to_string(b.size()));
}

}  // namespace

std::strong_ordering lex_compare_top(const UtilityVector& a,
                                     const UtilityVector& b) {
  require_same_length(a, b);
  return compare_sorted(a.sorted_descending(), b.sorted_descending());
}

std::strong_ordering lex_compare_bottom(const UtilityVector& a,
                                        const UtilityVector& b) {
  require_same_length(a, b);
  return compare_sorted(a.sorted_ascending(), b.sorted_ascending());
}

MetricsReport metrics(const UtilityVector& utilities) {
  std::vector<double> x;
  for (auto level : utilities.entries)
    if (level.is_finite()) x.push_back(level.value());
  if (x.empty())
    throw Error(ErrorCode::UndefinedGini, "no assigned students");
  std::sort(x.begin(), x.end());

  const double n = static_cast<double>(x.size());
  double sum = 0.0;
  for (double v : x) sum += v;
  const double mean = sum / n;
  double sq = 0.0;
  for (double v : x) sq += (v - mean) * (v - mean);

  // With x sorted ascending, sum_i sum_k |x_i - x_k| = 2 sum_k (2k - n + 1) x_k.
  double pairwise = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k)
    pairwise += (2.0 * static_cast<double>(k) - n + 1.0) * x[k];
  pairwise *= 2.0;

  MetricsReport r;
  r.min_utility = x.front();
  r.max_utility = x.back();
  r.range = r.max_utility - r.min_utility;
  r.mean = mean;
  r.variance = sq / n;
  r.gini = pairwise / (2.0 * n * n * mean);
  r.n_unassigned = utilities.size() - x.size();
  return r;
}

MetricsReport metrics(const Instance& instance, const Allocation& allocation) {
  return metrics(realized_utilities(instance, allocation));
}

}  // namespace alignmatch
