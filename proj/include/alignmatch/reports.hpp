#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "alignmatch/analysis.hpp"
#include "alignmatch/instance.hpp"
#include "alignmatch/oracle.hpp"
#include "alignmatch/solvers.hpp"

// JSON renderings of library results. All output is two-space indented and
// deterministic.
namespace alignmatch {

/// {"assignment": [...], "algorithm": name, "utilities": [... | "-inf"]}
std::string allocation_to_json(const Instance& instance,
                               const Allocation& allocation,
                               std::string_view algorithm);

/// Reads "assignment" (integers or null); other keys are ignored. Throws
/// SyntaxError or InfeasibleAllocation.
Allocation parse_allocation(const Instance& instance, std::string_view text);

std::string trace_to_json(const SolverTrace& trace);
std::string metrics_to_json(const MetricsReport& report);
std::string blocking_pairs_to_json(const std::vector<BlockingPair>& pairs);

/// {"stable": bool, "blocking_pairs": [...], "metrics": {...} | null}
std::string audit_to_json(const Instance& instance,
                          const Allocation& allocation);

std::string verify_to_json(const oracle::VerifyReport& report);

}  // namespace alignmatch
