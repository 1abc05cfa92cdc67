#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "alignmatch/random.hpp"
#include "fixtures.hpp"

using namespace alignmatch;

namespace {

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an alignmatch::Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("build_instance accepts the ordered 2x2 economy") {
  auto inst = fixtures::two_by_two();
  CHECK(inst.n_students() == 2);
  CHECK(inst.n_schools() == 2);
  CHECK(inst.utility(StudentId{0}, SchoolId{1}) == 3.0);
  CHECK(inst.total_capacity() == 2);
  CHECK(inst.max_cardinality() == 2);
}

TEST_CASE("build_instance accepts the smallest economy") {
  auto inst = fixtures::one_by_one();
  CHECK(inst.n_students() == 1);
  CHECK(inst.capacity(SchoolId{0}) == 1);
}

TEST_CASE("build_instance validation errors") {
  CHECK(code_of([] { build_instance(2, 2, {1, 1}, {{4, 4}, {2, 1}}); }) ==
        ErrorCode::IndifferenceViolation);
  CHECK(code_of([] { build_instance(2, 2, {1, 1}, {{4, 3}, {2}}); }) ==
        ErrorCode::DimensionMismatch);
  CHECK(code_of([] { build_instance(2, 2, {1}, {{4, 3}, {2, 1}}); }) ==
        ErrorCode::DimensionMismatch);
  CHECK(code_of([] { build_instance(2, 2, {1, 1}, {{4, 0}, {2, 1}}); }) ==
        ErrorCode::NonPositiveUtility);
  CHECK(code_of([] { build_instance(2, 2, {1, 1}, {{4, -3}, {2, 1}}); }) ==
        ErrorCode::NonPositiveUtility);
  CHECK(code_of([] { build_instance(2, 2, {0, 1}, {{4, 3}, {2, 1}}); }) ==
        ErrorCode::NonPositiveCapacity);
  CHECK(code_of([] {
          build_instance(2, 3, {1, 1, 1}, {{6, 5, 4}, {3, 2, 1}});
        }) == ErrorCode::TooManySchools);
}

TEST_CASE("strict mode rejects cross-pair ties, lenient mode keeps them") {
  // u[0][0] == u[1][1]: neither same row nor same column.
  std::vector<std::vector<double>> u{{4, 3}, {2, 4}};
  try {
    build_instance(2, 2, {1, 1}, u);
    FAIL("expected IndifferenceViolation");
  } catch (const IndifferenceViolation& e) {
    REQUIRE(e.collisions().size() == 1);
    const auto& c = e.collisions().front();
    CHECK(c.value == 4.0);
    CHECK(c.student_a == 0);
    CHECK(c.school_a == 0);
    CHECK(c.student_b == 1);
    CHECK(c.school_b == 1);
  }
  auto lenient = build_instance(2, 2, {1, 1}, u, Strictness::Lenient);
  CHECK_FALSE(lenient.strict());
}

TEST_CASE("realized_utilities") {
  auto inst = fixtures::two_by_two();
  auto top = realized_utilities(inst, fixtures::make(inst, {0, 1}));
  CHECK(top.entries == std::vector{UtilityLevel::finite(4), UtilityLevel::finite(1)});
  auto bottom = realized_utilities(inst, fixtures::make(inst, {1, 0}));
  CHECK(bottom.entries == std::vector{UtilityLevel::finite(3), UtilityLevel::finite(2)});

  auto one = fixtures::one_by_one();
  auto empty = realized_utilities(one, Allocation(1, 1));
  REQUIRE(empty.size() == 1);
  CHECK(empty.entries[0].is_neg_inf());
}

TEST_CASE("realized_utilities rejects an overfull roster") {
  auto inst = fixtures::two_by_two();
  Allocation a(2, 2);
  a.assign(StudentId{0}, SchoolId{0});
  a.assign(StudentId{1}, SchoolId{0});
  CHECK(code_of([&] { realized_utilities(inst, a); }) ==
        ErrorCode::InfeasibleAllocation);
  CHECK(code_of([&] { fixtures::make(inst, {0, 0}); }) ==
        ErrorCode::InfeasibleAllocation);
}

TEST_CASE("realized_utilities is permutation-equivariant") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto inst = random_instance(6, 3, {}, seed);
    Rng rng(seed + 1000);
    std::vector<std::size_t> perm(6);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    rng.shuffle(perm);

    // Student k of the relabeled economy is student perm[k] of the original.
    std::vector<double> u;
    for (std::size_t k = 0; k < 6; ++k) {
      auto row = inst.row(StudentId{perm[k]});
      u.insert(u.end(), row.begin(), row.end());
    }
    std::vector<std::int64_t> caps(inst.capacities().begin(), inst.capacities().end());
    auto relabeled = Instance::from_row_major(6, 3, caps, u);

    std::vector<std::optional<SchoolId>> original(6), moved(6);
    std::vector<std::int64_t> load(3, 0);
    for (std::size_t i = 0; i < 6; ++i) {
      std::size_t j = rng.below(4);
      if (j < 3 && load[j] < inst.capacity(SchoolId{j})) {
        ++load[j];
        original[i] = SchoolId{j};
      }
    }
    for (std::size_t k = 0; k < 6; ++k) moved[k] = original[perm[k]];

    auto v = realized_utilities(inst, Allocation::from_assignment(inst, original));
    auto w = realized_utilities(relabeled, Allocation::from_assignment(relabeled, moved));
    for (std::size_t k = 0; k < 6; ++k) CHECK(w.entries[k] == v.entries[perm[k]]);
  }
}

TEST_CASE("UtilityLevel ordering puts the sentinel below every finite value") {
  CHECK(UtilityLevel::neg_inf() < UtilityLevel::finite(-1e300));
  CHECK(UtilityLevel::neg_inf() == UtilityLevel::neg_inf());
  CHECK(UtilityLevel::finite(1) < UtilityLevel::finite(2));
  CHECK(to_string(UtilityLevel::neg_inf()) == "-inf");
}

TEST_CASE("instance file round trip and exact layout") {
  auto inst = fixtures::two_by_two();
  std::string text = serialize_instance(inst);
  CHECK(text ==
        "{\n"
        "  \"n_students\": 2,\n"
        "  \"n_schools\": 2,\n"
        "  \"capacities\": [1, 1],\n"
        "  \"utilities\": [\n"
        "    [4, 3],\n"
        "    [2, 1]\n"
        "  ]\n"
        "}\n");
  CHECK(parse_instance(text) == inst);
}

TEST_CASE("round trip preserves arbitrary doubles bit-for-bit") {
  Rng rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    std::size_t n = 1 + rng.below(8);
    std::size_t m = 1 + rng.below(n);
    std::vector<double> u(n * m);
    for (auto& x : u) x = 1e-3 + rng.uniform01() * std::pow(10.0, double(rng.below(12)) - 4);
    std::vector<std::int64_t> caps(m);
    for (auto& q : caps) q = 1 + static_cast<std::int64_t>(rng.below(5));
    auto inst = Instance::from_row_major(n, m, caps, u);
    auto back = parse_instance(serialize_instance(inst));
    CHECK(back == inst);
    CHECK(serialize_instance(back) == serialize_instance(inst));
  }
}

TEST_CASE("parse_instance errors") {
  CHECK(code_of([] {
          parse_instance(R"({"n_students": 2, "n_schools": 2, "capacities": [0, 1],
                             "utilities": [[4, 3], [2, 1]]})");
        }) == ErrorCode::NonPositiveCapacity);
  CHECK(code_of([] {
          parse_instance(R"({"n_students": 2, "n_schools": 3, "capacities": [1, 1, 1],
                             "utilities": [[6, 5, 4], [3, 2, 1]]})");
        }) == ErrorCode::TooManySchools);
  CHECK(code_of([] {
          parse_instance(R"({"n_students": 2, "n_schools": 2, "capacities": [1, 1],
                             "utilities": [[4, 3], [2, 1], [9, 8]]})");
        }) == ErrorCode::DimensionMismatch);
  CHECK(code_of([] { parse_instance(R"({"n_students": 2})"); }) ==
        ErrorCode::SyntaxError);

  try {
    parse_instance("{\n  \"n_students\": 2,\n  \"n_schools\" 2\n}");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() > 1);
  }
}

TEST_CASE("random_instance is strict and seed-deterministic") {
  auto a = random_instance(6, 2, {}, 1);
  auto b = random_instance(6, 2, {}, 1);
  auto c = random_instance(6, 2, {}, 2);
  CHECK(a == b);
  CHECK_FALSE(a == c);
  std::vector<double> u(a.utilities().begin(), a.utilities().end());
  std::sort(u.begin(), u.end());
  for (std::size_t k = 0; k < u.size(); ++k) CHECK(u[k] == double(k + 1));
  CHECK(code_of([] { random_instance(2, 3, {}, 0); }) == ErrorCode::TooManySchools);
}
