#include <doctest.h>

#include <algorithm>

#include "alignmatch/analysis.hpp"
#include "alignmatch/oracle.hpp"
#include "alignmatch/random.hpp"
#include "alignmatch/solvers.hpp"
#include "fixtures.hpp"

using namespace alignmatch;

namespace {

std::vector<std::optional<std::size_t>> schools_of(const Allocation& a) {
  std::vector<std::optional<std::size_t>> out;
  for (auto j : a.assignment()) out.push_back(j ? std::optional(j->index) : std::nullopt);
  return out;
}

using Sched = std::vector<std::optional<std::size_t>>;

// Seeded small strict instances of assorted shapes, scarcity included.
std::vector<Instance> small_corpus(std::size_t count, std::size_t max_students,
                                   std::size_t max_schools, std::uint64_t salt) {
  std::vector<Instance> out;
  Rng rng(salt);
  for (std::size_t k = 0; k < count; ++k) {
    std::size_t n = 1 + rng.below(max_students);
    std::size_t m = 1 + rng.below(std::min(n, max_schools));
    out.push_back(random_instance(n, m, {}, rng.next()));
  }
  return out;
}

}  // namespace

TEST_CASE("max_max_lex on the fixtures") {
  auto inst = fixtures::two_by_two();
  auto r = max_max_lex(inst);
  CHECK(schools_of(r.allocation) == Sched{0, 1});
  REQUIRE(r.trace.events.size() == 2);
  auto first = std::get<GreedyMatch>(r.trace.events[0]);
  auto second = std::get<GreedyMatch>(r.trace.events[1]);
  CHECK(first.step == 0);
  CHECK(first.student.index == 0);
  CHECK(first.school.index == 0);
  CHECK(first.utility == 4.0);
  CHECK(second.step == 1);
  CHECK(second.student.index == 1);
  CHECK(second.school.index == 1);
  CHECK(second.utility == 1.0);

  CHECK(schools_of(max_max_lex(fixtures::one_by_one()).allocation) == Sched{0});
  CHECK(schools_of(max_max_lex(fixtures::three_by_one()).allocation) ==
        Sched{0, 0, std::nullopt});
}

TEST_CASE("three-student single school: max_max_lex is the top-lex optimum") {
  auto inst = fixtures::three_by_one();
  auto best = oracle::brute_force_lex_top(inst, {});
  CHECK(max_max_lex(inst).allocation == best);
}

TEST_CASE("deferred_acceptance on the fixtures") {
  CHECK(schools_of(deferred_acceptance(fixtures::two_by_two()).allocation) == Sched{0, 1});
  CHECK(schools_of(deferred_acceptance(fixtures::one_by_one()).allocation) == Sched{0});
  auto inst = random_instance(6, 3, {2, 2, 2}, 11);
  CHECK(deferred_acceptance(inst).allocation == max_max_lex(inst).allocation);
}

TEST_CASE("feasible_above on the 2x2 fixture") {
  auto inst = fixtures::two_by_two();
  CHECK(feasible_above(inst, Threshold::finite(2)));
  CHECK_FALSE(feasible_above(inst, Threshold::finite(3)));
  CHECK(feasible_above(inst, Threshold::neg_inf()));
  CHECK(feasible_above(fixtures::three_by_one(), Threshold::neg_inf()));
}

TEST_CASE("bottleneck_value on the fixtures") {
  CHECK(bottleneck_value(fixtures::two_by_two()) == Threshold::finite(2));
  CHECK(bottleneck_value(fixtures::one_by_one()) == Threshold::finite(1));
  CHECK(bottleneck_value(fixtures::three_by_one()) == Threshold::finite(3));
}

TEST_CASE("max_min_lex on the fixtures") {
  auto inst = fixtures::two_by_two();
  auto r = max_min_lex(inst);
  CHECK(schools_of(r.allocation) == Sched{1, 0});
  CHECK(realized_utilities(inst, r.allocation).entries ==
        std::vector{UtilityLevel::finite(3), UtilityLevel::finite(2)});
  CHECK(schools_of(max_min_lex(fixtures::one_by_one()).allocation) == Sched{0});
  CHECK(schools_of(max_min_lex(fixtures::three_by_one()).allocation) ==
        Sched{0, 0, std::nullopt});
}

TEST_CASE("max_min_lex on a random 5x2 matches the bottom-lex oracle") {
  auto inst = random_instance(5, 2, {2, 2}, 5);
  auto mine = realized_utilities(inst, max_min_lex(inst).allocation);
  auto best = realized_utilities(inst, oracle::brute_force_lex_bottom(inst, {}));
  CHECK(mine.sorted_ascending() == best.sorted_ascending());
}

TEST_CASE("stability and uniqueness properties on seeded instances") {
  for (const auto& inst : small_corpus(150, 12, 5, 1)) {
    auto mml = max_max_lex(inst);
    CHECK(find_blocking_pairs(inst, mml.allocation).empty());
    CHECK(deferred_acceptance(inst).allocation == mml.allocation);
    CHECK(mml.allocation.n_assigned() == inst.max_cardinality());

    // Greedy utilities strictly decrease along the trace.
    double previous = 1e300;
    for (const auto& e : mml.trace.events) {
      double u = std::get<GreedyMatch>(e).utility;
      CHECK(u < previous);
      previous = u;
    }
    CHECK(replay_trace(inst, mml.trace) == mml.allocation);
  }
}

TEST_CASE("top-lex maximality against the oracle (<= 7 students)") {
  for (const auto& inst : small_corpus(80, 7, 3, 2)) {
    auto mine = realized_utilities(inst, max_max_lex(inst).allocation);
    oracle::enumerate_feasible(inst, {}, [&](const Allocation& a) {
      CHECK(lex_compare_top(mine, realized_utilities(inst, a)) >= 0);
    });
  }
}

TEST_CASE("feasible_above is monotone and agrees with bottleneck_value") {
  for (const auto& inst : small_corpus(80, 9, 4, 3)) {
    Threshold b = bottleneck_value(inst);
    CHECK(feasible_above(inst, b));
    std::vector<double> values(inst.utilities().begin(), inst.utilities().end());
    std::sort(values.begin(), values.end());
    bool seen_false = false;
    for (double v : values) {
      bool ok = feasible_above(inst, Threshold::finite(v));
      if (seen_false) CHECK_FALSE(ok);
      if (!ok) seen_false = true;
      CHECK(ok == (Threshold::finite(v) <= b));
    }
  }
}

TEST_CASE("max_min_lex is bottom-lex optimal and fixes the bottleneck first") {
  for (const auto& inst : small_corpus(80, 7, 3, 4)) {
    auto r = max_min_lex(inst);
    CHECK(r.allocation.n_assigned() == inst.max_cardinality());
    auto mine = realized_utilities(inst, r.allocation);
    auto best = realized_utilities(inst, oracle::brute_force_lex_bottom(inst, {}));
    CHECK(mine.sorted_ascending() == best.sorted_ascending());

    auto first_fix = std::find_if(r.trace.events.begin(), r.trace.events.end(),
                                  [](const TraceEvent& e) {
                                    return std::holds_alternative<LevelFix>(e);
                                  });
    REQUIRE(first_fix != r.trace.events.end());
    CHECK(Threshold::finite(std::get<LevelFix>(*first_fix).utility) ==
          bottleneck_value(inst));
    CHECK(replay_trace(inst, r.trace) == r.allocation);
  }
}

TEST_CASE("max_min_lex is unstable whenever it differs from the stable allocation") {
  int differing = 0;
  for (const auto& inst : small_corpus(150, 10, 4, 5)) {
    auto stable = max_max_lex(inst).allocation;
    auto rawls = max_min_lex(inst).allocation;
    auto vr = realized_utilities(inst, rawls);
    auto vs = realized_utilities(inst, stable);
    CHECK(lex_compare_bottom(vr, vs) >= 0);
    if (rawls == stable) continue;
    ++differing;
    CHECK_FALSE(find_blocking_pairs(inst, rawls).empty());
  }
  CHECK(differing > 0);
}

TEST_CASE("solvers are deterministic") {
  for (const auto& inst : small_corpus(20, 30, 6, 6)) {
    for (auto alg : {Algorithm::MaxMaxLex, Algorithm::DeferredAcceptance,
                     Algorithm::MaxMinLex}) {
      auto a = solve(inst, alg);
      auto b = solve(inst, alg);
      CHECK(a.allocation == b.allocation);
      CHECK(a.trace.events.size() == b.trace.events.size());
    }
  }
}

TEST_CASE("lenient instances use the index tie-break") {
  // Every utility equal: the lowest (student, school) pairs win.
  auto inst = build_instance(3, 2, {1, 1}, {{1, 1}, {1, 1}, {1, 1}},
                             Strictness::Lenient);
  CHECK(schools_of(max_max_lex(inst).allocation) == Sched{0, 1, std::nullopt});
  auto rawls = max_min_lex(inst);
  CHECK(rawls.allocation.n_assigned() == 2);
  CHECK(bottleneck_value(inst) == Threshold::finite(1));
  CHECK(find_blocking_pairs(inst, max_max_lex(inst).allocation).empty());
}

TEST_CASE("algorithm names") {
  CHECK(parse_algorithm("max-max-lex") == Algorithm::MaxMaxLex);
  CHECK(parse_algorithm("da") == Algorithm::DeferredAcceptance);
  CHECK(parse_algorithm("max-min-lex") == Algorithm::MaxMinLex);
  CHECK_FALSE(parse_algorithm("greedy"));
  CHECK(algorithm_name(Algorithm::MaxMinLex) == "max-min-lex");
}
