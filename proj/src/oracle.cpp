#include "alignmatch/oracle.hpp"

#include <algorithm>
#include <sstream>

#include "alignmatch/analysis.hpp"
#include "alignmatch/solvers.hpp"

namespace alignmatch::oracle {

namespace {

void check_student_budget(const Instance& instance,
                          const EnumerationBudget& budget) {
  if (instance.n_students() > budget.max_students)
    throw Error(ErrorCode::BudgetExceeded,
                std::to_string(instance.n_students()) +
                    " students exceed the enumeration budget of " +
                    std::to_string(budget.max_students));
}

struct Enumerator {
  const Instance& instance;
  const EnumerationBudget& budget;
  const std::function<void(const Allocation&)>& visit;
  Allocation current;
  std::vector<std::int64_t> load;
  std::uint64_t count = 0;

  void run(std::size_t student) {
    if (student == instance.n_students()) {
      if (++count > budget.max_allocations)
        throw Error(ErrorCode::BudgetExceeded,
                    "more than " + std::to_string(budget.max_allocations) +
                        " feasible allocations");
      visit(current);
      return;
    }
    run(student + 1);
    for (std::size_t j = 0; j < instance.n_schools(); ++j) {
      if (load[j] == instance.capacity(SchoolId{j})) continue;
      ++load[j];
      current.assign(StudentId{student}, SchoolId{j});
      run(student + 1);
      current.unassign(StudentId{student});
      --load[j];
    }
  }
};

std::vector<UtilityLevel> sorted_utilities(const Instance& instance,
                                           const Allocation& allocation,
                                           bool descending) {
  std::vector<UtilityLevel> v;
  for (std::size_t i = 0; i < instance.n_students(); ++i) {
    auto j = allocation.school_of(StudentId{i});
    v.push_back(j ? UtilityLevel::finite(instance.utility(StudentId{i}, *j))
                  : UtilityLevel::neg_inf());
  }
  if (descending)
    std::sort(v.begin(), v.end(), std::greater<>());
  else
    std::sort(v.begin(), v.end());
  return v;
}

std::string describe(const Allocation& allocation) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < allocation.n_students(); ++i) {
    if (i) out << ", ";
    auto j = allocation.school_of(StudentId{i});
    if (j)
      out << j->index;
    else
      out << "null";
  }
  out << "]";
  return out.str();
}

}  // namespace

std::uint64_t enumerate_feasible(
    const Instance& instance, const EnumerationBudget& budget,
    const std::function<void(const Allocation&)>& visit) {
  check_student_budget(instance, budget);
  Enumerator e{instance, budget, visit,
               Allocation(instance.n_students(), instance.n_schools()),
               std::vector<std::int64_t>(instance.n_schools(), 0)};
  e.run(0);
  return e.count;
}

std::vector<std::pair<std::size_t, std::size_t>> blocking_pairs_direct(
    const Instance& instance, const Allocation& allocation) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < instance.n_students(); ++i) {
    auto mine = allocation.school_of(StudentId{i});
    for (std::size_t j = 0; j < instance.n_schools(); ++j) {
      double u = instance.utility(StudentId{i}, SchoolId{j});
      bool prefers = !mine || u > instance.utility(StudentId{i}, *mine);
      if (!prefers) continue;
      auto roster = allocation.roster(SchoolId{j});
      bool has_room =
          static_cast<std::int64_t>(roster.size()) < instance.capacity(SchoolId{j});
      bool holds_worse = false;
      for (StudentId other : roster)
        if (instance.utility(other, SchoolId{j}) < u) holds_worse = true;
      if (has_room || holds_worse) out.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<Allocation> brute_force_stable(const Instance& instance,
                                           const EnumerationBudget& budget) {
  std::vector<Allocation> out;
  enumerate_feasible(instance, budget, [&](const Allocation& a) {
    if (blocking_pairs_direct(instance, a).empty()) out.push_back(a);
  });
  return out;
}

Allocation brute_force_lex_top(const Instance& instance,
                               const EnumerationBudget& budget) {
  std::optional<Allocation> best;
  std::vector<UtilityLevel> best_key;
  enumerate_feasible(instance, budget, [&](const Allocation& a) {
    auto key = sorted_utilities(instance, a, true);
    if (!best || best_key < key) {
      best = a;
      best_key = std::move(key);
    }
  });
  return *best;
}

Allocation brute_force_lex_bottom(const Instance& instance,
                                  const EnumerationBudget& budget) {
  std::optional<Allocation> best;
  std::vector<UtilityLevel> best_key;
  const std::size_t cardinality = instance.max_cardinality();
  enumerate_feasible(instance, budget, [&](const Allocation& a) {
    if (a.n_assigned() != cardinality) return;
    auto key = sorted_utilities(instance, a, false);
    if (!best || best_key < key) {
      best = a;
      best_key = std::move(key);
    }
  });
  return *best;
}

double brute_force_bottleneck(const Instance& instance,
                              const EnumerationBudget& budget) {
  const std::size_t cardinality = instance.max_cardinality();
  double best = 0.0;
  enumerate_feasible(instance, budget, [&](const Allocation& a) {
    if (a.n_assigned() != cardinality) return;
    double worst = 0.0;
    bool first = true;
    for (std::size_t i = 0; i < instance.n_students(); ++i) {
      auto j = a.school_of(StudentId{i});
      if (!j) continue;
      double u = instance.utility(StudentId{i}, *j);
      if (first || u < worst) worst = u;
      first = false;
    }
    best = std::max(best, worst);
  });
  return best;
}

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed; });
}

VerifyReport verify_instance(const Instance& instance,
                             const EnumerationBudget& budget) {
  VerifyReport report;
  auto add = [&](std::string name, bool passed, std::string detail) {
    report.checks.push_back({std::move(name), passed, std::move(detail)});
  };

  const auto stable = brute_force_stable(instance, budget);
  const auto top = brute_force_lex_top(instance, budget);
  const auto bottom = brute_force_lex_bottom(instance, budget);
  const double oracle_bottleneck = brute_force_bottleneck(instance, budget);
  const auto mml = max_max_lex(instance).allocation;
  const auto da = deferred_acceptance(instance).allocation;
  const auto mnl = max_min_lex(instance).allocation;

  add("stable_allocation_unique", stable.size() == 1,
      std::to_string(stable.size()) + " stable allocation(s) found");
  if (!stable.empty()) {
    add("stable_equals_max_max_lex", stable.front() == mml,
        "stable " + describe(stable.front()) + ", max-max-lex " + describe(mml));
  }
  add("max_max_lex_has_no_blocking_pairs",
      find_blocking_pairs(instance, mml).empty(), "max-max-lex " + describe(mml));
  add("deferred_acceptance_equals_max_max_lex", da == mml,
      "da " + describe(da) + ", max-max-lex " + describe(mml));
  add("lex_top_optimum_equals_max_max_lex", top == mml,
      "oracle " + describe(top) + ", max-max-lex " + describe(mml));
  add("max_min_lex_bottom_optimal",
      sorted_utilities(instance, mnl, false) ==
          sorted_utilities(instance, bottom, false),
      "oracle " + describe(bottom) + ", max-min-lex " + describe(mnl));

  const Threshold bottleneck = bottleneck_value(instance);
  add("bottleneck_matches_oracle",
      bottleneck == Threshold::finite(oracle_bottleneck),
      "oracle " + format_double(oracle_bottleneck) + ", bottleneck_value " +
          to_string(bottleneck));

  std::vector<double> values(instance.utilities().begin(),
                             instance.utilities().end());
  std::sort(values.begin(), values.end());
  bool monotone = true;
  bool consistent = true;
  bool seen_infeasible = false;
  for (double v : values) {
    bool ok = feasible_above(instance, Threshold::finite(v));
    if (ok && seen_infeasible) monotone = false;
    if (!ok) seen_infeasible = true;
    if (ok != (Threshold::finite(v) <= bottleneck)) consistent = false;
  }
  add("feasible_above_monotone", monotone, "checked every matrix value");
  add("feasible_above_consistent_with_bottleneck", consistent,
      "feasible exactly up to " + to_string(bottleneck));
  return report;
}

}  // namespace alignmatch::oracle
