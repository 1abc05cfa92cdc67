#include <algorithm>
#include <numeric>

#include "alignmatch/solvers.hpp"

namespace alignmatch {

SolveResult deferred_acceptance(const Instance& instance) {
  const std::size_t n = instance.n_students();
  const std::size_t m = instance.n_schools();

  // Students rank schools by u_ij, ties to the lower school index.
  std::vector<std::vector<std::size_t>> prefs(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = instance.row(StudentId{i});
    auto& p = prefs[i];
    p.resize(m);
    std::iota(p.begin(), p.end(), std::size_t{0});
    std::stable_sort(p.begin(), p.end(), [&](std::size_t a, std::size_t b) {
      return row[a] > row[b];
    });
  }
  // Aligned preferences: school j ranks students by the same u_ij.
  auto school_prefers = [&](std::size_t j) {
    return [&instance, j](std::size_t a, std::size_t b) {
      double ua = instance.utility(StudentId{a}, SchoolId{j});
      double ub = instance.utility(StudentId{b}, SchoolId{j});
      if (ua != ub) return ua > ub;
      return a < b;
    };
  };

  std::vector<std::size_t> next(n, 0);
  std::vector<std::vector<std::size_t>> held(m);
  std::vector<std::vector<std::size_t>> proposals(m);
  std::vector<std::size_t> free_students(n);
  std::iota(free_students.begin(), free_students.end(), std::size_t{0});

  SolverTrace trace;
  for (std::size_t round = 0;; ++round) {
    std::size_t n_proposals = 0;
    for (std::size_t i : free_students) {
      if (next[i] == m) continue;
      proposals[prefs[i][next[i]++]].push_back(i);
      ++n_proposals;
    }
    if (n_proposals == 0) break;

    std::vector<std::size_t> rejected;
    for (std::size_t j = 0; j < m; ++j) {
      if (proposals[j].empty()) continue;
      auto& pool = held[j];
      pool.insert(pool.end(), proposals[j].begin(), proposals[j].end());
      proposals[j].clear();
      std::sort(pool.begin(), pool.end(), school_prefers(j));
      auto keep = static_cast<std::size_t>(instance.capacity(SchoolId{j}));
      if (pool.size() > keep) {
        rejected.insert(rejected.end(), pool.begin() + keep, pool.end());
        pool.resize(keep);
      }
    }
    trace.events.emplace_back(
        ProposalRound{round, n_proposals, rejected.size()});
    std::sort(rejected.begin(), rejected.end());
    free_students = std::move(rejected);
  }

  SolveResult result{Allocation(n, m), std::move(trace)};
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i : held[j]) result.allocation.assign(StudentId{i}, SchoolId{j});
  return result;
}

}  // namespace alignmatch
