#include "alignmatch/alignmatch.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "alignmatch/analysis.hpp"
#include "alignmatch/instance.hpp"
#include "alignmatch/oracle.hpp"
#include "alignmatch/random.hpp"
#include "alignmatch/reports.hpp"
#include "alignmatch/solvers.hpp"
#include "alignmatch/spatial.hpp"

namespace am = alignmatch;

struct am_instance {
  am::Instance value;
};

struct am_allocation {
  am::Allocation value;
};

struct am_spatial {
  am::SpatialInstance value;
};

namespace {

thread_local std::string g_last_error;

am_status status_of(am::ErrorCode code) {
  switch (code) {
    case am::ErrorCode::DimensionMismatch: return AM_ERR_DIMENSION_MISMATCH;
    case am::ErrorCode::NonPositiveUtility: return AM_ERR_NON_POSITIVE_UTILITY;
    case am::ErrorCode::NonPositiveCapacity: return AM_ERR_NON_POSITIVE_CAPACITY;
    case am::ErrorCode::TooManySchools: return AM_ERR_TOO_MANY_SCHOOLS;
    case am::ErrorCode::IndifferenceViolation: return AM_ERR_INDIFFERENCE_VIOLATION;
    case am::ErrorCode::SyntaxError: return AM_ERR_SYNTAX;
    case am::ErrorCode::InfeasibleAllocation: return AM_ERR_INFEASIBLE_ALLOCATION;
    case am::ErrorCode::LengthMismatch: return AM_ERR_LENGTH_MISMATCH;
    case am::ErrorCode::UndefinedGini: return AM_ERR_UNDEFINED_GINI;
    case am::ErrorCode::BudgetExceeded: return AM_ERR_BUDGET_EXCEEDED;
    case am::ErrorCode::CapacityMismatch: return AM_ERR_CAPACITY_MISMATCH;
    case am::ErrorCode::NotAGrid: return AM_ERR_NOT_A_GRID;
    case am::ErrorCode::InvalidArgument: return AM_ERR_INVALID_ARGUMENT;
  }
  return AM_ERR_INTERNAL;
}

am_status fail(am_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename Body>
am_status guarded(Body&& body) {
  try {
    body();
    return AM_OK;
  } catch (const am::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(AM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(AM_ERR_INTERNAL, e.what());
  }
}

char* copy_string(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

void require(bool condition, const char* message) {
  if (!condition) throw am::Error(am::ErrorCode::InvalidArgument, message);
}

am::Strictness strictness_of(int strict) {
  return strict ? am::Strictness::Strict : am::Strictness::Lenient;
}

am::Algorithm to_algorithm(am_algorithm algorithm) {
  switch (algorithm) {
    case AM_MAX_MAX_LEX: return am::Algorithm::MaxMaxLex;
    case AM_DEFERRED_ACCEPTANCE: return am::Algorithm::DeferredAcceptance;
    case AM_MAX_MIN_LEX: return am::Algorithm::MaxMinLex;
  }
  throw am::Error(am::ErrorCode::InvalidArgument, "unknown algorithm");
}

int sign_of(std::strong_ordering c) { return c < 0 ? -1 : (c > 0 ? 1 : 0); }

}  // namespace

extern "C" {

const char* am_last_error(void) { return g_last_error.c_str(); }

const char* am_status_name(am_status status) {
  switch (status) {
    case AM_OK: return "OK";
    case AM_ERR_DIMENSION_MISMATCH: return "DimensionMismatch";
    case AM_ERR_NON_POSITIVE_UTILITY: return "NonPositiveUtility";
    case AM_ERR_NON_POSITIVE_CAPACITY: return "NonPositiveCapacity";
    case AM_ERR_TOO_MANY_SCHOOLS: return "TooManySchools";
    case AM_ERR_INDIFFERENCE_VIOLATION: return "IndifferenceViolation";
    case AM_ERR_SYNTAX: return "SyntaxError";
    case AM_ERR_INFEASIBLE_ALLOCATION: return "InfeasibleAllocation";
    case AM_ERR_LENGTH_MISMATCH: return "LengthMismatch";
    case AM_ERR_UNDEFINED_GINI: return "UndefinedGini";
    case AM_ERR_BUDGET_EXCEEDED: return "BudgetExceeded";
    case AM_ERR_CAPACITY_MISMATCH: return "CapacityMismatch";
    case AM_ERR_NOT_A_GRID: return "NotAGrid";
    case AM_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case AM_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

void am_string_free(char* text) { std::free(text); }

am_status am_instance_create(size_t n_students, size_t n_schools,
                             const int64_t* capacities, const double* utilities,
                             int strict, am_instance** out) {
  return guarded([&] {
    require(out && capacities && utilities, "null argument");
    std::vector<std::int64_t> caps(capacities, capacities + n_schools);
    std::vector<double> u(utilities, utilities + n_students * n_schools);
    *out = new am_instance{am::Instance::from_row_major(
        n_students, n_schools, std::move(caps), std::move(u),
        strictness_of(strict))};
  });
}

am_status am_instance_parse(const char* text, int strict, am_instance** out) {
  return guarded([&] {
    require(out && text, "null argument");
    *out = new am_instance{am::parse_instance(text, strictness_of(strict))};
  });
}

am_status am_instance_serialize(const am_instance* instance, char** out_text) {
  return guarded([&] {
    require(instance && out_text, "null argument");
    *out_text = copy_string(am::serialize_instance(instance->value));
  });
}

am_status am_instance_random(size_t n_students, size_t n_schools,
                             const int64_t* capacities, uint64_t seed,
                             am_instance** out) {
  return guarded([&] {
    require(out, "null argument");
    std::vector<std::int64_t> caps;
    if (capacities) caps.assign(capacities, capacities + n_schools);
    *out = new am_instance{
        am::random_instance(n_students, n_schools, std::move(caps), seed)};
  });
}

size_t am_instance_num_students(const am_instance* instance) {
  return instance ? instance->value.n_students() : 0;
}

size_t am_instance_num_schools(const am_instance* instance) {
  return instance ? instance->value.n_schools() : 0;
}

double am_instance_utility(const am_instance* instance, size_t student,
                           size_t school) {
  if (!instance || student >= instance->value.n_students() ||
      school >= instance->value.n_schools())
    return NAN;
  return instance->value.utility(am::StudentId{student}, am::SchoolId{school});
}

int64_t am_instance_capacity(const am_instance* instance, size_t school) {
  if (!instance || school >= instance->value.n_schools()) return 0;
  return instance->value.capacity(am::SchoolId{school});
}

int am_instance_equal(const am_instance* a, const am_instance* b) {
  return a && b && a->value == b->value;
}

void am_instance_free(am_instance* instance) { delete instance; }

am_status am_algorithm_from_name(const char* name, am_algorithm* out) {
  return guarded([&] {
    require(name && out, "null argument");
    auto algorithm = am::parse_algorithm(name);
    if (!algorithm)
      throw am::Error(am::ErrorCode::InvalidArgument,
                      std::string("unknown algorithm '") + name +
                          "' (expected max-max-lex, da or max-min-lex)");
    switch (*algorithm) {
      case am::Algorithm::MaxMaxLex: *out = AM_MAX_MAX_LEX; break;
      case am::Algorithm::DeferredAcceptance: *out = AM_DEFERRED_ACCEPTANCE; break;
      case am::Algorithm::MaxMinLex: *out = AM_MAX_MIN_LEX; break;
    }
  });
}

const char* am_algorithm_name(am_algorithm algorithm) {
  switch (algorithm) {
    case AM_MAX_MAX_LEX: return "max-max-lex";
    case AM_DEFERRED_ACCEPTANCE: return "da";
    case AM_MAX_MIN_LEX: return "max-min-lex";
  }
  return "unknown";
}

am_status am_solve(const am_instance* instance, am_algorithm algorithm,
                   am_allocation** out, char** trace_json) {
  return guarded([&] {
    require(instance && out, "null argument");
    auto result = am::solve(instance->value, to_algorithm(algorithm));
    char* trace = trace_json ? copy_string(am::trace_to_json(result.trace))
                             : nullptr;
    *out = new am_allocation{std::move(result.allocation)};
    if (trace_json) *trace_json = trace;
  });
}

am_status am_feasible_above(const am_instance* instance, double threshold,
                            int* out) {
  return guarded([&] {
    require(instance && out, "null argument");
    require(!std::isnan(threshold), "threshold is NaN");
    auto level = std::isinf(threshold) && threshold < 0
                     ? am::Threshold::neg_inf()
                     : am::Threshold::finite(threshold);
    *out = am::feasible_above(instance->value, level) ? 1 : 0;
  });
}

am_status am_bottleneck_value(const am_instance* instance, double* out) {
  return guarded([&] {
    require(instance && out, "null argument");
    auto level = am::bottleneck_value(instance->value);
    *out = level.is_finite() ? level.value() : -INFINITY;
  });
}

am_status am_allocation_create(const am_instance* instance,
                               const int64_t* assignment, am_allocation** out) {
  return guarded([&] {
    require(instance && assignment && out, "null argument");
    std::vector<std::optional<am::SchoolId>> a;
    for (size_t i = 0; i < instance->value.n_students(); ++i) {
      if (assignment[i] < -1)
        throw am::Error(am::ErrorCode::InfeasibleAllocation,
                        "invalid school index " + std::to_string(assignment[i]));
      if (assignment[i] == -1)
        a.emplace_back();
      else
        a.emplace_back(am::SchoolId{static_cast<std::size_t>(assignment[i])});
    }
    *out = new am_allocation{am::Allocation::from_assignment(instance->value, a)};
  });
}

am_status am_allocation_parse(const am_instance* instance, const char* text,
                              am_allocation** out) {
  return guarded([&] {
    require(instance && text && out, "null argument");
    *out = new am_allocation{am::parse_allocation(instance->value, text)};
  });
}

am_status am_allocation_to_json(const am_instance* instance,
                                const am_allocation* allocation,
                                const char* algorithm, char** out_text) {
  return guarded([&] {
    require(instance && allocation && out_text, "null argument");
    *out_text = copy_string(am::allocation_to_json(
        instance->value, allocation->value, algorithm ? algorithm : ""));
  });
}

size_t am_allocation_num_students(const am_allocation* allocation) {
  return allocation ? allocation->value.n_students() : 0;
}

int64_t am_allocation_school_of(const am_allocation* allocation,
                                size_t student) {
  if (!allocation || student >= allocation->value.n_students()) return -1;
  auto j = allocation->value.school_of(am::StudentId{student});
  return j ? static_cast<int64_t>(j->index) : -1;
}

int am_allocation_equal(const am_allocation* a, const am_allocation* b) {
  return a && b && a->value == b->value;
}

void am_allocation_free(am_allocation* allocation) { delete allocation; }

am_status am_audit(const am_instance* instance, const am_allocation* allocation,
                   int* is_stable, char** report_json) {
  return guarded([&] {
    require(instance && allocation, "null argument");
    if (is_stable)
      *is_stable = am::is_stable(instance->value, allocation->value) ? 1 : 0;
    if (report_json)
      *report_json =
          copy_string(am::audit_to_json(instance->value, allocation->value));
  });
}

am_status am_blocking_pair_count(const am_instance* instance,
                                 const am_allocation* allocation, size_t* out) {
  return guarded([&] {
    require(instance && allocation && out, "null argument");
    *out = am::find_blocking_pairs(instance->value, allocation->value).size();
  });
}

am_status am_metrics(const am_instance* instance,
                     const am_allocation* allocation, char** out_json) {
  return guarded([&] {
    require(instance && allocation && out_json, "null argument");
    *out_json = copy_string(
        am::metrics_to_json(am::metrics(instance->value, allocation->value)));
  });
}

am_status am_lex_compare_top(const am_instance* instance,
                             const am_allocation* a, const am_allocation* b,
                             int* out) {
  return guarded([&] {
    require(instance && a && b && out, "null argument");
    *out = sign_of(am::lex_compare_top(
        am::realized_utilities(instance->value, a->value),
        am::realized_utilities(instance->value, b->value)));
  });
}

am_status am_lex_compare_bottom(const am_instance* instance,
                                const am_allocation* a, const am_allocation* b,
                                int* out) {
  return guarded([&] {
    require(instance && a && b && out, "null argument");
    *out = sign_of(am::lex_compare_bottom(
        am::realized_utilities(instance->value, a->value),
        am::realized_utilities(instance->value, b->value)));
  });
}

am_status am_verify(const am_instance* instance, size_t max_students,
                    uint64_t max_allocations, int* all_passed,
                    char** report_json) {
  return guarded([&] {
    require(instance, "null argument");
    am::oracle::EnumerationBudget budget{max_students, max_allocations};
    auto report = am::oracle::verify_instance(instance->value, budget);
    if (all_passed) *all_passed = report.all_passed() ? 1 : 0;
    if (report_json) *report_json = copy_string(am::verify_to_json(report));
  });
}

void am_spatial_params_init(am_spatial_params* params) {
  if (!params) return;
  *params = am_spatial_params{};
  params->n_schools = 1;
  params->capacity_mode = AM_CAPACITY_PROPORTIONAL;
  params->strict = 1;
}

am_status am_spatial_generate(const am_spatial_params* params,
                              am_spatial** out) {
  return guarded([&] {
    require(params && out, "null argument");
    am::SpatialParams p;
    if (params->grid) p.grid = params->grid;
    p.random_students = params->random_students;
    p.n_schools = params->n_schools;
    switch (params->capacity_mode) {
      case AM_CAPACITY_PROPORTIONAL: p.capacity_mode = am::CapacityMode::Proportional; break;
      case AM_CAPACITY_EVEN: p.capacity_mode = am::CapacityMode::Even; break;
      case AM_CAPACITY_EXPLICIT:
        require(params->capacities != nullptr, "explicit mode needs capacities");
        p.capacity_mode = am::CapacityMode::Explicit;
        p.capacities.assign(params->capacities,
                            params->capacities + params->n_schools);
        break;
      default: throw am::Error(am::ErrorCode::InvalidArgument, "unknown capacity mode");
    }
    if (params->school_xy) {
      for (size_t j = 0; j < params->n_schools; ++j)
        p.school_points.push_back(
            {params->school_xy[2 * j], params->school_xy[2 * j + 1]});
    }
    p.seed = params->seed;
    p.strictness = strictness_of(params->strict);
    *out = new am_spatial{am::generate_spatial(p)};
  });
}

am_status am_spatial_parse(const char* sidecar_text, int strict,
                           am_spatial** out) {
  return guarded([&] {
    require(sidecar_text && out, "null argument");
    *out = new am_spatial{am::parse_spatial(sidecar_text, strictness_of(strict))};
  });
}

am_status am_spatial_serialize(const am_spatial* spatial, char** out_text) {
  return guarded([&] {
    require(spatial && out_text, "null argument");
    *out_text = copy_string(am::serialize_spatial(spatial->value));
  });
}

am_status am_spatial_instance(const am_spatial* spatial, am_instance** out) {
  return guarded([&] {
    require(spatial && out, "null argument");
    *out = new am_instance{spatial->value.instance};
  });
}

am_status am_spatial_territories_csv(const am_spatial* spatial,
                                     const am_allocation* allocation,
                                     char** out_text) {
  return guarded([&] {
    require(spatial && allocation && out_text, "null argument");
    *out_text = copy_string(
        am::export_territories_csv(spatial->value, allocation->value));
  });
}

am_status am_spatial_render_svg(const am_spatial* spatial,
                                const am_allocation* allocation,
                                double cell_size_px, char** out_text) {
  return guarded([&] {
    require(spatial && allocation && out_text, "null argument");
    *out_text = copy_string(am::render_territories_svg(
        spatial->value, allocation->value, cell_size_px));
  });
}

void am_spatial_free(am_spatial* spatial) { delete spatial; }

}  // extern "C"
