#include <doctest.h>

#include <json.hpp>

#include "alignmatch/reports.hpp"
#include "fixtures.hpp"

using namespace alignmatch;
using nlohmann::json;

TEST_CASE("allocation JSON layout and round trip") {
  auto inst = fixtures::three_by_one();
  auto alloc = max_max_lex(inst).allocation;
  auto doc = json::parse(allocation_to_json(inst, alloc, "max-max-lex"));
  CHECK(doc["assignment"] == json::parse("[0, 0, null]"));
  CHECK(doc["algorithm"] == "max-max-lex");
  CHECK(doc["utilities"] == json::parse(R"([5.0, 3.0, "-inf"])"));
  CHECK(parse_allocation(inst, allocation_to_json(inst, alloc, "x")) == alloc);

  auto text = allocation_to_json(inst, alloc, "max-max-lex");
  CHECK(text.find("\"assignment\"") < text.find("\"algorithm\""));
  CHECK(text.find("\"algorithm\"") < text.find("\"utilities\""));
}

TEST_CASE("parse_allocation errors") {
  auto inst = fixtures::two_by_two();
  auto code = [&](const char* text) {
    try {
      parse_allocation(inst, text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  CHECK(code(R"({"assignment": [0, 0]})") == ErrorCode::InfeasibleAllocation);
  CHECK(code(R"({"assignment": [0, 5]})") == ErrorCode::InfeasibleAllocation);
  CHECK(code(R"({"assignment": [0]})") == ErrorCode::InfeasibleAllocation);
  CHECK(code(R"({"assignment": [0, -1]})") == ErrorCode::InfeasibleAllocation);
  CHECK(code(R"({"assignment": ["a", 0]})") == ErrorCode::SyntaxError);
  CHECK(code(R"({"assignment": [0, 1)") == ErrorCode::SyntaxError);
}

TEST_CASE("metrics JSON uses the report field names") {
  auto inst = fixtures::two_by_two();
  auto doc = json::parse(metrics_to_json(metrics(inst, fixtures::make(inst, {1, 0}))));
  std::vector<std::string> keys;
  for (auto it = doc.begin(); it != doc.end(); ++it) keys.push_back(it.key());
  std::sort(keys.begin(), keys.end());
  CHECK(keys == std::vector<std::string>{"gini", "max_utility", "mean", "min_utility",
                                         "n_unassigned", "range", "variance"});
}

TEST_CASE("audit JSON for the unstable 2x2 allocation") {
  auto inst = fixtures::two_by_two();
  auto doc = json::parse(audit_to_json(inst, fixtures::make(inst, {1, 0})));
  CHECK(doc["stable"] == false);
  REQUIRE(doc["blocking_pairs"].size() == 1);
  const auto& bp = doc["blocking_pairs"][0];
  CHECK(bp["student"] == 0);
  CHECK(bp["school"] == 0);
  CHECK(bp["reason"] == "displaces_student");
  CHECK(bp["displaced"] == 1);
  CHECK(bp["student_gain"] == 1.0);

  auto empty = json::parse(audit_to_json(inst, Allocation(2, 2)));
  CHECK(empty["metrics"].is_null());
  CHECK(empty["blocking_pairs"][0]["student_gain"] == "inf");
}

TEST_CASE("trace JSON event kinds") {
  auto inst = fixtures::two_by_two();
  auto mml = json::parse(trace_to_json(max_max_lex(inst).trace));
  CHECK(mml[0]["event"] == "greedy_match");
  auto da = json::parse(trace_to_json(deferred_acceptance(inst).trace));
  CHECK(da[0]["event"] == "proposal_round");
  auto rawls = json::parse(trace_to_json(max_min_lex(inst).trace));
  bool saw_test = false, saw_fix = false;
  for (const auto& e : rawls) {
    saw_test |= e["event"] == "threshold_test";
    saw_fix |= e["event"] == "level_fix";
  }
  CHECK(saw_test);
  CHECK(saw_fix);
}
