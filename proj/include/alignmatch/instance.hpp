#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "alignmatch/error.hpp"

namespace alignmatch {

struct StudentId {
  std::size_t index = 0;
  friend auto operator<=>(StudentId, StudentId) = default;
};

struct SchoolId {
  std::size_t index = 0;
  friend auto operator<=>(SchoolId, SchoolId) = default;
};

/// A realized utility: either a finite value or the unassigned sentinel,
/// which orders below every finite value.
class UtilityLevel {
 public:
  constexpr UtilityLevel() noexcept = default;

  static constexpr UtilityLevel neg_inf() noexcept { return UtilityLevel(); }
  static constexpr UtilityLevel finite(double v) noexcept {
    UtilityLevel u;
    u.finite_ = true;
    u.value_ = v;
    return u;
  }

  constexpr bool is_neg_inf() const noexcept { return !finite_; }
  constexpr bool is_finite() const noexcept { return finite_; }
  // Only meaningful when is_finite().
  constexpr double value() const noexcept { return value_; }

  friend constexpr std::strong_ordering operator<=>(UtilityLevel a,
                                                    UtilityLevel b) noexcept {
    if (a.finite_ != b.finite_)
      return a.finite_ ? std::strong_ordering::greater
                       : std::strong_ordering::less;
    if (!a.finite_) return std::strong_ordering::equal;
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  friend constexpr bool operator==(UtilityLevel a, UtilityLevel b) noexcept {
    return (a <=> b) == 0;
  }

 private:
  bool finite_ = false;
  double value_ = 0.0;
};

using Threshold = UtilityLevel;

std::string to_string(UtilityLevel level);

enum class Strictness { Strict, Lenient };

/// The economy: students, schools with capacities and a dense utility matrix
/// (row = student, column = school). Immutable once built.
class Instance {
 public:
  /// Validates and builds. `utilities` is row-major, n_students * n_schools.
  static Instance from_row_major(std::size_t n_students, std::size_t n_schools,
                                 std::vector<std::int64_t> capacities,
                                 std::vector<double> utilities,
                                 Strictness strictness = Strictness::Strict);

  std::size_t n_students() const noexcept { return n_students_; }
  std::size_t n_schools() const noexcept { return n_schools_; }
  std::int64_t capacity(SchoolId j) const { return capacities_[j.index]; }
  std::span<const std::int64_t> capacities() const noexcept {
    return capacities_;
  }
  std::int64_t total_capacity() const noexcept { return total_capacity_; }
  double utility(StudentId i, SchoolId j) const {
    return utilities_[i.index * n_schools_ + j.index];
  }
  std::span<const double> row(StudentId i) const {
    return std::span<const double>(utilities_).subspan(i.index * n_schools_,
                                                       n_schools_);
  }
  std::span<const double> utilities() const noexcept { return utilities_; }
  Strictness strictness() const noexcept { return strictness_; }
  bool strict() const noexcept { return strictness_ == Strictness::Strict; }
  /// min(|I|, sum of capacities): the size of every maximum-cardinality
  /// feasible allocation.
  std::size_t max_cardinality() const noexcept;

  /// Structural equality of the economy; the strictness mode is not part of
  /// the data and is ignored.
  friend bool operator==(const Instance& a, const Instance& b) {
    return a.n_students_ == b.n_students_ && a.n_schools_ == b.n_schools_ &&
           a.capacities_ == b.capacities_ && a.utilities_ == b.utilities_;
  }

 private:
  Instance() = default;

  std::size_t n_students_ = 0;
  std::size_t n_schools_ = 0;
  std::vector<std::int64_t> capacities_;
  std::vector<double> utilities_;
  std::int64_t total_capacity_ = 0;
  Strictness strictness_ = Strictness::Strict;
};

Instance build_instance(std::size_t n_students, std::size_t n_schools,
                        std::vector<std::int64_t> capacities,
                        const std::vector<std::vector<double>>& utilities,
                        Strictness strictness = Strictness::Strict);

/// Student-to-school assignment plus per-school rosters kept sorted by
/// student index. Capacities are not known here; see require_feasible().
class Allocation {
 public:
  Allocation(std::size_t n_students, std::size_t n_schools);

  /// Builds from a per-student assignment and checks it against `instance`.
  static Allocation from_assignment(
      const Instance& instance,
      const std::vector<std::optional<SchoolId>>& assignment);

  std::size_t n_students() const noexcept { return assignment_.size(); }
  std::size_t n_schools() const noexcept { return rosters_.size(); }
  std::optional<SchoolId> school_of(StudentId i) const {
    return assignment_[i.index];
  }
  const std::vector<std::optional<SchoolId>>& assignment() const noexcept {
    return assignment_;
  }
  std::span<const StudentId> roster(SchoolId j) const {
    return rosters_[j.index];
  }
  std::size_t n_assigned() const noexcept { return n_assigned_; }

  void assign(StudentId i, SchoolId j);
  void unassign(StudentId i);

  friend bool operator==(const Allocation& a, const Allocation& b) {
    return a.assignment_ == b.assignment_ && a.rosters_ == b.rosters_;
  }

 private:
  std::vector<std::optional<SchoolId>> assignment_;
  std::vector<std::vector<StudentId>> rosters_;
  std::size_t n_assigned_ = 0;
};

/// Throws InfeasibleAllocation if the shapes disagree or a roster exceeds
/// its school's capacity.
void require_feasible(const Instance& instance, const Allocation& allocation);

/// One entry per student: u_{i,mu(i)} or the unassigned sentinel.
struct UtilityVector {
  std::vector<UtilityLevel> entries;

  std::size_t size() const noexcept { return entries.size(); }
  std::vector<UtilityLevel> sorted_descending() const;
  std::vector<UtilityLevel> sorted_ascending() const;

  friend bool operator==(const UtilityVector&, const UtilityVector&) = default;
};

UtilityVector realized_utilities(const Instance& instance,
                                 const Allocation& allocation);

/// Instance file I/O (JSON). serialize_instance is byte-deterministic.
Instance parse_instance(std::string_view text,
                        Strictness strictness = Strictness::Strict);
std::string serialize_instance(const Instance& instance);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace alignmatch
