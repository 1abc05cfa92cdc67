#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace alignmatch::detail {

/// Many-to-one matching on a student/school bipartite graph with school
/// capacities, grown by augmenting paths. This is unit-capacity max-flow
/// (source -> student -> school -> sink) with the residual graph implicit in
/// the rosters. Which edges exist is decided per call by a predicate, so
/// callers can raise a utility threshold without rebuilding anything.
class CapacitatedMatcher {
 public:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  CapacitatedMatcher(std::size_t n_students,
                     std::span<const std::int64_t> capacities)
      : school_(n_students, kNone),
        slot_(n_students, 0),
        frozen_(n_students, false),
        capacity_(capacities.begin(), capacities.end()),
        roster_(capacities.size()),
        seen_student_(n_students, 0),
        seen_school_(capacities.size(), 0),
        parent_(n_students, kNone) {}

  std::size_t n_students() const noexcept { return school_.size(); }
  std::size_t n_schools() const noexcept { return capacity_.size(); }
  std::size_t size() const noexcept { return size_; }
  std::size_t school_of(std::size_t i) const noexcept { return school_[i]; }
  bool has_spare(std::size_t j) const noexcept {
    return static_cast<std::int64_t>(roster_[j].size()) < capacity_[j];
  }
  bool frozen(std::size_t i) const noexcept { return frozen_[i]; }
  // Frozen students keep their seat and are never moved by augment().
  void freeze(std::size_t i) { frozen_[i] = true; }

  void assign(std::size_t i, std::size_t j) {
    if (school_[i] != kNone) unassign(i);
    school_[i] = j;
    slot_[i] = roster_[j].size();
    roster_[j].push_back(i);
    ++size_;
  }

  void unassign(std::size_t i) {
    std::size_t j = school_[i];
    if (j == kNone) return;
    auto& r = roster_[j];
    std::size_t last = r.back();
    r[slot_[i]] = last;
    slot_[last] = slot_[i];
    r.pop_back();
    school_[i] = kNone;
    --size_;
  }

  /// Breadth-first search for an alternating path from any student in
  /// `sources` to a school with a free seat, using only edges with
  /// admissible(i, j). Applies the path and returns true when one exists;
  /// `moved` receives every student whose school changed.
  template <typename Admissible>
  bool augment(std::span<const std::size_t> sources, Admissible&& admissible,
               std::vector<std::size_t>* moved = nullptr) {
    ++stamp_;
    queue_.clear();
    for (std::size_t s : sources) {
      if (seen_student_[s] == stamp_) continue;
      seen_student_[s] = stamp_;
      parent_[s] = kNone;
      queue_.push_back(s);
    }
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      std::size_t s = queue_[head];
      for (std::size_t j = 0; j < capacity_.size(); ++j) {
        if (j == school_[s] || !admissible(s, j)) continue;
        if (has_spare(j)) {
          apply_path(s, j, moved);
          return true;
        }
        if (seen_school_[j] == stamp_) continue;
        seen_school_[j] = stamp_;
        for (std::size_t t : roster_[j]) {
          if (frozen_[t] || seen_student_[t] == stamp_) continue;
          seen_student_[t] = stamp_;
          parent_[t] = s;
          queue_.push_back(t);
        }
      }
    }
    return false;
  }

 private:
  // parent_[t] = s means s takes the seat t currently holds.
  void apply_path(std::size_t s, std::size_t target,
                  std::vector<std::size_t>* moved) {
    std::size_t cur = s;
    for (;;) {
      std::size_t previous = school_[cur];
      assign(cur, target);
      if (moved) moved->push_back(cur);
      if (parent_[cur] == kNone) break;
      target = previous;
      cur = parent_[cur];
    }
  }

  std::vector<std::size_t> school_;
  std::vector<std::size_t> slot_;
  std::vector<bool> frozen_;
  std::vector<std::int64_t> capacity_;
  std::vector<std::vector<std::size_t>> roster_;
  std::size_t size_ = 0;

  std::uint64_t stamp_ = 0;
  std::vector<std::uint64_t> seen_student_;
  std::vector<std::uint64_t> seen_school_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> queue_;
};

}  // namespace alignmatch::detail
