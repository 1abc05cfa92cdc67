#include <doctest.h>

#include <cmath>
#include <regex>
#include <set>

#include "alignmatch/analysis.hpp"
#include "alignmatch/solvers.hpp"
#include "alignmatch/spatial.hpp"

using namespace alignmatch;

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

SpatialInstance centered_school_2x2() {
  SpatialParams p;
  p.grid = 2;
  p.n_schools = 1;
  p.capacity_mode = CapacityMode::Explicit;
  p.capacities = {4};
  p.school_points = {{0.5, 0.5}};
  p.strictness = Strictness::Lenient;  // four equidistant students
  return generate_spatial(p);
}

SpatialInstance grid50_instance(std::uint64_t seed = 42) {
  SpatialParams p;
  p.grid = 50;
  p.n_schools = 15;
  p.seed = seed;
  return generate_spatial(p);
}

std::set<std::string> rect_fills(const std::string& svg) {
  std::set<std::string> fills;
  std::regex re("<rect [^>]*fill=\"(#[0-9a-f]{6})\"");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re);
       it != std::sregex_iterator(); ++it)
    fills.insert((*it)[1]);
  return fills;
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + 1))
    ++n;
  return n;
}

}  // namespace

TEST_CASE("one central school takes the whole 2x2 grid") {
  auto s = centered_school_2x2();
  REQUIRE(s.students.size() == 4);
  CHECK(s.students[0] == Point{0.25, 0.25});
  CHECK(s.students[3] == Point{0.75, 0.75});
  auto alloc = max_max_lex(s.instance).allocation;
  CHECK(alloc.n_assigned() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    double d = std::hypot(s.students[i].x - 0.5, s.students[i].y - 0.5);
    CHECK(s.instance.utility(StudentId{i}, SchoolId{0}) == kSqrt2 - d);
  }

  auto svg = render_territories_svg(s, alloc, 10);
  CHECK(count(svg, "<rect ") == 4);
  CHECK(rect_fills(svg).size() == 1);
  CHECK(count(svg, "fill=\"#000000\"") == 1);

  auto csv = export_territories_csv(s, alloc);
  CHECK(count(csv, "\n") == 1 + 4 + 1 + 1 + 1);
}

TEST_CASE("opposite corners are zero utility and rejected") {
  CHECK_THROWS_AS(spatial_from_points({{0, 0}}, {{1, 1}}, {1}, std::nullopt,
                                      Strictness::Strict),
                  Error);
}

TEST_CASE("a student on top of a school gets sqrt(2)") {
  auto s = spatial_from_points({{0.3, 0.7}, {0.9, 0.1}}, {{0.3, 0.7}}, {2},
                               std::nullopt, Strictness::Strict);
  CHECK(s.instance.utility(StudentId{0}, SchoolId{0}) == kSqrt2);
}

TEST_CASE("csv rows") {
  auto s = spatial_from_points({{0, 0}}, {{1, 0}}, {1}, std::nullopt, Strictness::Strict);
  auto alloc = max_max_lex(s.instance).allocation;
  CHECK(export_territories_csv(s, alloc) ==
        "x,y,school_index\n0,0,0\n\nschool_index,x,y,capacity\n0,1,0,1\n");
  CHECK(export_territories_csv(s, Allocation(1, 1)) ==
        "x,y,school_index\n0,0,\n\nschool_index,x,y,capacity\n0,1,0,1\n");
  CHECK_THROWS_AS(render_territories_svg(s, alloc, 8), Error);
}

TEST_CASE("two schools split a 2x2 grid into two colors") {
  SpatialParams p;
  p.grid = 2;
  p.n_schools = 2;
  p.capacity_mode = CapacityMode::Explicit;
  p.capacities = {2, 2};
  p.school_points = {{0.1, 0.2}, {0.85, 0.9}};
  auto s = generate_spatial(p);
  auto svg = render_territories_svg(s, max_max_lex(s.instance).allocation, 8);
  CHECK(rect_fills(svg).size() == 2);
  CHECK(count(svg, "<circle") == 2);
}

TEST_CASE("generator parameter errors") {
  SpatialParams p;
  p.grid = 2;
  p.n_schools = 5;
  try {
    generate_spatial(p);
    FAIL("expected TooManySchools");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooManySchools);
  }
  p.n_schools = 2;
  p.capacity_mode = CapacityMode::Explicit;
  p.capacities = {4};
  try {
    generate_spatial(p);
    FAIL("expected CapacityMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CapacityMismatch);
  }
}

TEST_CASE("random mode draws students in the unit square and cannot be tiled") {
  SpatialParams p;
  p.random_students = 40;
  p.n_schools = 4;
  p.capacity_mode = CapacityMode::Even;
  p.seed = 3;
  auto s = generate_spatial(p);
  CHECK_FALSE(s.grid);
  CHECK(s.capacities == std::vector<std::int64_t>{10, 10, 10, 10});
  for (const auto& pt : s.students) {
    CHECK(pt.x >= 0.0);
    CHECK(pt.x < 1.0);
  }
  try {
    render_territories_svg(s, max_max_lex(s.instance).allocation, 8);
    FAIL("expected NotAGrid");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAGrid);
  }
}

TEST_CASE("50x50 grid with 15 schools") {
  auto s = grid50_instance();
  CHECK(s.instance.n_students() == 2500);
  CHECK(s.instance.n_schools() == 15);
  CHECK(s.instance.strict());
  CHECK(s.instance.total_capacity() == 2500);
  std::set<std::int64_t> distinct(s.capacities.begin(), s.capacities.end());
  CHECK(distinct.size() > 1);

  auto stable = max_max_lex(s.instance).allocation;
  CHECK(find_blocking_pairs(s.instance, stable).empty());

  auto csv = export_territories_csv(s, stable);
  CHECK(count(csv, "\n") == 1 + 2500 + 1 + 1 + 15);

  auto svg = render_territories_svg(s, stable, 8);
  CHECK(count(svg, "<circle") == 15);
  CHECK(rect_fills(svg).size() <= 15);
}

TEST_CASE("distance and utility views give the same stable allocation") {
  auto s = grid50_instance(9);
  // Max-max-lex run directly on costs: repeatedly take the nearest free pair.
  const std::size_t n = s.students.size(), m = s.schools.size();
  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      pairs.emplace_back(std::hypot(s.students[i].x - s.schools[j].x,
                                    s.students[i].y - s.schools[j].y),
                         i, j);
  std::sort(pairs.begin(), pairs.end());
  Allocation by_distance(n, m);
  std::vector<std::int64_t> left = s.capacities;
  for (auto [d, i, j] : pairs) {
    if (by_distance.school_of(StudentId{i}) || left[j] == 0) continue;
    by_distance.assign(StudentId{i}, SchoolId{j});
    --left[j];
  }
  CHECK(by_distance == max_max_lex(s.instance).allocation);
}

TEST_CASE("seed determinism of instance, sidecar, csv and svg") {
  auto a = grid50_instance();
  auto b = grid50_instance();
  CHECK(serialize_instance(a.instance) == serialize_instance(b.instance));
  CHECK(serialize_spatial(a) == serialize_spatial(b));
  auto alloc = max_max_lex(a.instance).allocation;
  CHECK(export_territories_csv(a, alloc) == export_territories_csv(b, alloc));
  CHECK(render_territories_svg(a, alloc, 8) == render_territories_svg(b, alloc, 8));
  CHECK_FALSE(serialize_spatial(grid50_instance(43)) == serialize_spatial(a));
}

TEST_CASE("sidecar round trip rebuilds the identical instance") {
  auto s = grid50_instance();
  auto back = parse_spatial(serialize_spatial(s));
  CHECK(back.instance == s.instance);
  CHECK(back.grid == s.grid);
  CHECK(back.schools == s.schools);
}

TEST_CASE("max-min-lex on the 50x50 instance lifts the worst-off student") {
  auto s = grid50_instance();
  auto stable = max_max_lex(s.instance).allocation;
  auto rawls = max_min_lex(s.instance).allocation;
  REQUIRE_FALSE(rawls == stable);
  auto vs = realized_utilities(s.instance, stable);
  auto vr = realized_utilities(s.instance, rawls);
  CHECK(lex_compare_bottom(vr, vs) > 0);
  CHECK(metrics(vs).min_utility < metrics(vr).min_utility);
  CHECK(bottleneck_value(s.instance) == Threshold::finite(metrics(vr).min_utility));
}
