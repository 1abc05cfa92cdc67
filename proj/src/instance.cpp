#include "alignmatch/instance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

namespace alignmatch {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonPositiveUtility: return "NonPositiveUtility";
    case ErrorCode::NonPositiveCapacity: return "NonPositiveCapacity";
    case ErrorCode::TooManySchools: return "TooManySchools";
    case ErrorCode::IndifferenceViolation: return "IndifferenceViolation";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::InfeasibleAllocation: return "InfeasibleAllocation";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::UndefinedGini: return "UndefinedGini";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::CapacityMismatch: return "CapacityMismatch";
    case ErrorCode::NotAGrid: return "NotAGrid";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

std::string to_string(UtilityLevel level) {
  return level.is_neg_inf() ? std::string("-inf") : format_double(level.value());
}

namespace {

// Reports every group of equal values, capped so a pathological matrix does
// not produce a megabyte-long message.
void check_distinct(std::size_t n_schools, const std::vector<double>& u) {
  std::vector<std::size_t> order(u.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return u[a] < u[b]; });
  std::vector<UtilityCollision> collisions;
  for (std::size_t k = 1; k < order.size(); ++k) {
    std::size_t a = order[k - 1];
    std::size_t b = order[k];
    if (u[a] == u[b]) {
      collisions.push_back({a / n_schools, a % n_schools, b / n_schools,
                            b % n_schools, u[a]});
    }
  }
  if (collisions.empty()) return;
  std::ostringstream msg;
  msg << "duplicate utility values (no indifferences allowed):";
  std::size_t shown = std::min<std::size_t>(collisions.size(), 8);
  for (std::size_t k = 0; k < shown; ++k) {
    const auto& c = collisions[k];
    msg << " u[" << c.student_a << "][" << c.school_a << "] = u["
        << c.student_b << "][" << c.school_b
        << "] = " << format_double(c.value) << ";";
  }
  if (collisions.size() > shown)
    msg << " ... " << collisions.size() - shown << " more";
  throw IndifferenceViolation(msg.str(), std::move(collisions));
}

}  // namespace

Instance Instance::from_row_major(std::size_t n_students,
                                  std::size_t n_schools,
                                  std::vector<std::int64_t> capacities,
                                  std::vector<double> utilities,
                                  Strictness strictness) {
  if (n_students == 0 || n_schools == 0)
    throw Error(ErrorCode::DimensionMismatch,
                "an instance needs at least one student and one school");
  if (capacities.size() != n_schools)
    throw Error(ErrorCode::DimensionMismatch,
                "expected " + std::to_string(n_schools) + " capacities, got " +
                    std::to_string(capacities.size()));
  if (utilities.size() != n_students * n_schools)
    throw Error(ErrorCode::DimensionMismatch,
                "utility matrix must be " + std::to_string(n_students) + " x " +
                    std::to_string(n_schools));
  if (n_schools > n_students)
    throw Error(ErrorCode::TooManySchools,
                std::to_string(n_schools) + " schools but only " +
                    std::to_string(n_students) + " students");
  for (std::size_t j = 0; j < n_schools; ++j) {
    if (capacities[j] < 1)
      throw Error(ErrorCode::NonPositiveCapacity,
                  "capacity of school " + std::to_string(j) + " is " +
                      std::to_string(capacities[j]));
  }
  for (std::size_t k = 0; k < utilities.size(); ++k) {
    double u = utilities[k];
    if (!(u > 0.0) || !std::isfinite(u))
      throw Error(ErrorCode::NonPositiveUtility,
                  "u[" + std::to_string(k / n_schools) + "][" +
                      std::to_string(k % n_schools) +
                      "] is not a finite positive value");
  }
  if (strictness == Strictness::Strict) check_distinct(n_schools, utilities);

  Instance inst;
  inst.n_students_ = n_students;
  inst.n_schools_ = n_schools;
  inst.total_capacity_ =
      std::accumulate(capacities.begin(), capacities.end(), std::int64_t{0});
  inst.capacities_ = std::move(capacities);
  inst.utilities_ = std::move(utilities);
  inst.strictness_ = strictness;
  return inst;
}

std::size_t Instance::max_cardinality() const noexcept {
  return std::min<std::size_t>(n_students_,
                               static_cast<std::size_t>(total_capacity_));
}

Instance build_instance(std::size_t n_students, std::size_t n_schools,
                        std::vector<std::int64_t> capacities,
                        const std::vector<std::vector<double>>& utilities,
                        Strictness strictness) {
  if (utilities.size() != n_students)
    throw Error(ErrorCode::DimensionMismatch,
                "expected " + std::to_string(n_students) +
                    " utility rows, got " + std::to_string(utilities.size()));
  std::vector<double> flat;
  flat.reserve(n_students * n_schools);
  for (std::size_t i = 0; i < utilities.size(); ++i) {
    if (utilities[i].size() != n_schools)
      throw Error(ErrorCode::DimensionMismatch,
                  "utility row " + std::to_string(i) + " has " +
                      std::to_string(utilities[i].size()) + " entries, expected " +
                      std::to_string(n_schools));
    flat.insert(flat.end(), utilities[i].begin(), utilities[i].end());
  }
  return Instance::from_row_major(n_students, n_schools, std::move(capacities),
                                  std::move(flat), strictness);
}

Allocation::Allocation(std::size_t n_students, std::size_t n_schools)
    : assignment_(n_students), rosters_(n_schools) {}

Allocation Allocation::from_assignment(
    const Instance& instance,
    const std::vector<std::optional<SchoolId>>& assignment) {
  if (assignment.size() != instance.n_students())
    throw Error(ErrorCode::InfeasibleAllocation,
                "assignment lists " + std::to_string(assignment.size()) +
                    " students, instance has " +
                    std::to_string(instance.n_students()));
  Allocation alloc(instance.n_students(), instance.n_schools());
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (!assignment[i]) continue;
    if (assignment[i]->index >= instance.n_schools())
      throw Error(ErrorCode::InfeasibleAllocation,
                  "student " + std::to_string(i) + " assigned to unknown school " +
                      std::to_string(assignment[i]->index));
    alloc.assign(StudentId{i}, *assignment[i]);
  }
  require_feasible(instance, alloc);
  return alloc;
}

void Allocation::assign(StudentId i, SchoolId j) {
  if (assignment_[i.index]) unassign(i);
  assignment_[i.index] = j;
  auto& roster = rosters_[j.index];
  roster.insert(std::upper_bound(roster.begin(), roster.end(), i), i);
  ++n_assigned_;
}

void Allocation::unassign(StudentId i) {
  auto current = assignment_[i.index];
  if (!current) return;
  auto& roster = rosters_[current->index];
  roster.erase(std::lower_bound(roster.begin(), roster.end(), i));
  assignment_[i.index].reset();
  --n_assigned_;
}

void require_feasible(const Instance& instance, const Allocation& allocation) {
  if (allocation.n_students() != instance.n_students() ||
      allocation.n_schools() != instance.n_schools())
    throw Error(ErrorCode::InfeasibleAllocation,
                "allocation shape does not match the instance");
  for (std::size_t j = 0; j < instance.n_schools(); ++j) {
    auto size = static_cast<std::int64_t>(allocation.roster(SchoolId{j}).size());
    if (size > instance.capacity(SchoolId{j}))
      throw Error(ErrorCode::InfeasibleAllocation,
                  "school " + std::to_string(j) + " holds " +
                      std::to_string(size) + " students, capacity " +
                      std::to_string(instance.capacity(SchoolId{j})));
  }
}

std::vector<UtilityLevel> UtilityVector::sorted_descending() const {
  auto v = entries;
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

std::vector<UtilityLevel> UtilityVector::sorted_ascending() const {
  auto v = entries;
  std::sort(v.begin(), v.end());
  return v;
}

UtilityVector realized_utilities(const Instance& instance,
                                 const Allocation& allocation) {
  require_feasible(instance, allocation);
  UtilityVector out;
  out.entries.reserve(instance.n_students());
  for (std::size_t i = 0; i < instance.n_students(); ++i) {
    auto j = allocation.school_of(StudentId{i});
    out.entries.push_back(j ? UtilityLevel::finite(
                                  instance.utility(StudentId{i}, *j))
                            : UtilityLevel::neg_inf());
  }
  return out;
}

}  // namespace alignmatch
