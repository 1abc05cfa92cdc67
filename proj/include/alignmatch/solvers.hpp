#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "alignmatch/instance.hpp"

namespace alignmatch {

/// One greedy match of max-max-lex.
struct GreedyMatch {
  std::size_t step;
  StudentId student;
  SchoolId school;
  double utility;
};

/// One feasibility test of max-min-lex: can every still-free seat be filled
/// to maximum cardinality with no assigned pair below `threshold`?
struct ThresholdTest {
  Threshold threshold;
  bool feasible;
};

/// Max-min-lex fixes the bottleneck pair of the residual economy.
struct LevelFix {
  std::size_t level;
  StudentId student;
  SchoolId school;
  double utility;
};

/// One simultaneous proposal round of deferred acceptance.
struct ProposalRound {
  std::size_t round;
  std::size_t proposals;
  std::size_t rejections;
};

using TraceEvent =
    std::variant<GreedyMatch, ThresholdTest, LevelFix, ProposalRound>;

struct SolverTrace {
  std::vector<TraceEvent> events;
};

struct SolveResult {
  Allocation allocation;
  SolverTrace trace;
};

enum class Algorithm { MaxMaxLex, DeferredAcceptance, MaxMinLex };

std::string_view algorithm_name(Algorithm algorithm) noexcept;
/// Accepts "max-max-lex", "da" (or "deferred-acceptance"), "max-min-lex".
std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept;

/// Greedy top-down matching: repeatedly pair the highest-utility student and
/// school that are still available. Produces the stable allocation.
SolveResult max_max_lex(const Instance& instance);

/// Student-proposing deferred acceptance; schools rank proposers by u_ij.
SolveResult deferred_acceptance(const Instance& instance);

/// True iff a maximum-cardinality feasible allocation exists that uses only
/// pairs with u_ij >= threshold.
bool feasible_above(const Instance& instance, Threshold threshold);

/// Largest matrix value v with feasible_above(v): the best achievable
/// minimum utility among maximum-cardinality allocations.
Threshold bottleneck_value(const Instance& instance);

/// Lexicographic max-min: among maximum-cardinality allocations, maximizes
/// the ascending-sorted utility vector, by repeatedly fixing the bottleneck
/// pair of the residual economy.
SolveResult max_min_lex(const Instance& instance);

SolveResult solve(const Instance& instance, Algorithm algorithm);

/// Rebuilds the allocation recorded by a max-max-lex or max-min-lex trace.
Allocation replay_trace(const Instance& instance, const SolverTrace& trace);

}  // namespace alignmatch
