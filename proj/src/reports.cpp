#include "alignmatch/reports.hpp"

#include <cmath>

#include <json.hpp>

#include "json_support.hpp"

namespace alignmatch {

using nlohmann::ordered_json;

namespace {

ordered_json level_json(UtilityLevel level) {
  if (level.is_neg_inf()) return "-inf";
  return level.value();
}

std::string dump(const ordered_json& doc) { return doc.dump(2) + "\n"; }

ordered_json metrics_object(const MetricsReport& r) {
  ordered_json doc;
  doc["min_utility"] = r.min_utility;
  doc["max_utility"] = r.max_utility;
  doc["range"] = r.range;
  doc["mean"] = r.mean;
  doc["variance"] = r.variance;
  doc["gini"] = r.gini;
  doc["n_unassigned"] = r.n_unassigned;
  return doc;
}

ordered_json blocking_pairs_array(const std::vector<BlockingPair>& pairs) {
  ordered_json arr = ordered_json::array();
  for (const auto& bp : pairs) {
    ordered_json item;
    item["student"] = bp.student.index;
    item["school"] = bp.school.index;
    if (const auto* d = std::get_if<DisplacesStudent>(&bp.reason)) {
      item["reason"] = "displaces_student";
      item["displaced"] = d->displaced.index;
    } else {
      item["reason"] = "spare_capacity";
    }
    if (std::isinf(bp.student_gain))
      item["student_gain"] = "inf";
    else
      item["student_gain"] = bp.student_gain;
    arr.push_back(std::move(item));
  }
  return arr;
}

}  // namespace

std::string allocation_to_json(const Instance& instance,
                               const Allocation& allocation,
                               std::string_view algorithm) {
  auto utilities = realized_utilities(instance, allocation);
  ordered_json doc;
  ordered_json assignment = ordered_json::array();
  for (const auto& j : allocation.assignment())
    assignment.push_back(j ? ordered_json(j->index) : ordered_json(nullptr));
  doc["assignment"] = std::move(assignment);
  doc["algorithm"] = std::string(algorithm);
  ordered_json values = ordered_json::array();
  for (auto level : utilities.entries) values.push_back(level_json(level));
  doc["utilities"] = std::move(values);
  return dump(doc);
}

Allocation parse_allocation(const Instance& instance, std::string_view text) {
  auto doc = detail::parse_json(text);
  if (!doc.is_object())
    throw SyntaxError("allocation file must hold a JSON object", 1, 1);
  auto it = doc.find("assignment");
  if (it == doc.end() || !it->is_array())
    throw SyntaxError("missing array \"assignment\"", 0, 0);
  std::vector<std::optional<SchoolId>> assignment;
  for (const auto& entry : *it) {
    if (entry.is_null()) {
      assignment.emplace_back();
    } else if (entry.is_number_integer()) {
      auto j = entry.get<std::int64_t>();
      if (j < 0)
        throw Error(ErrorCode::InfeasibleAllocation,
                    "negative school index " + std::to_string(j));
      assignment.emplace_back(SchoolId{static_cast<std::size_t>(j)});
    } else {
      throw SyntaxError("assignment entries must be integers or null", 0, 0);
    }
  }
  return Allocation::from_assignment(instance, assignment);
}

std::string trace_to_json(const SolverTrace& trace) {
  ordered_json arr = ordered_json::array();
  for (const auto& event : trace.events) {
    ordered_json item;
    if (const auto* g = std::get_if<GreedyMatch>(&event)) {
      item["event"] = "greedy_match";
      item["step"] = g->step;
      item["student"] = g->student.index;
      item["school"] = g->school.index;
      item["utility"] = g->utility;
    } else if (const auto* t = std::get_if<ThresholdTest>(&event)) {
      item["event"] = "threshold_test";
      item["threshold"] = level_json(t->threshold);
      item["feasible"] = t->feasible;
    } else if (const auto* f = std::get_if<LevelFix>(&event)) {
      item["event"] = "level_fix";
      item["level"] = f->level;
      item["student"] = f->student.index;
      item["school"] = f->school.index;
      item["utility"] = f->utility;
    } else if (const auto* r = std::get_if<ProposalRound>(&event)) {
      item["event"] = "proposal_round";
      item["round"] = r->round;
      item["proposals"] = r->proposals;
      item["rejections"] = r->rejections;
    }
    arr.push_back(std::move(item));
  }
  return dump(arr);
}

std::string metrics_to_json(const MetricsReport& report) {
  return dump(metrics_object(report));
}

std::string blocking_pairs_to_json(const std::vector<BlockingPair>& pairs) {
  return dump(blocking_pairs_array(pairs));
}

std::string audit_to_json(const Instance& instance,
                          const Allocation& allocation) {
  auto pairs = find_blocking_pairs(instance, allocation);
  ordered_json doc;
  doc["stable"] = pairs.empty();
  doc["blocking_pairs"] = blocking_pairs_array(pairs);
  if (allocation.n_assigned() == 0)
    doc["metrics"] = nullptr;
  else
    doc["metrics"] = metrics_object(metrics(instance, allocation));
  doc["metrics_conventions"] = {
      {"population", "assigned students only"},
      {"variance", "population (divide by n)"},
      {"gini", "sum_i sum_k |x_i - x_k| / (2 n^2 mean)"},
  };
  return dump(doc);
}

std::string verify_to_json(const oracle::VerifyReport& report) {
  ordered_json doc;
  doc["all_passed"] = report.all_passed();
  ordered_json checks = ordered_json::array();
  for (const auto& c : report.checks) {
    ordered_json item;
    item["name"] = c.name;
    item["passed"] = c.passed;
    item["detail"] = c.detail;
    checks.push_back(std::move(item));
  }
  doc["checks"] = std::move(checks);
  return dump(doc);
}

}  // namespace alignmatch
