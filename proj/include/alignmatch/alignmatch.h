/*
 * alignmatch C API.
 *
 * Opaque handles over the C++ library. Every fallible call returns an
 * am_status; on failure am_last_error() holds a message for the calling
 * thread until its next failing call. Strings returned through char** are
 * heap-allocated and must be released with am_string_free(). Handles are
 * immutable once created and may be shared between threads.
 */
#ifndef ALIGNMATCH_H
#define ALIGNMATCH_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ALIGNMATCH_BUILDING)
#    define AM_API __declspec(dllexport)
#  else
#    define AM_API __declspec(dllimport)
#  endif
#else
#  define AM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum am_status {
  AM_OK = 0,
  AM_ERR_DIMENSION_MISMATCH = 1,
  AM_ERR_NON_POSITIVE_UTILITY = 2,
  AM_ERR_NON_POSITIVE_CAPACITY = 3,
  AM_ERR_TOO_MANY_SCHOOLS = 4,
  AM_ERR_INDIFFERENCE_VIOLATION = 5,
  AM_ERR_SYNTAX = 6,
  AM_ERR_INFEASIBLE_ALLOCATION = 7,
  AM_ERR_LENGTH_MISMATCH = 8,
  AM_ERR_UNDEFINED_GINI = 9,
  AM_ERR_BUDGET_EXCEEDED = 10,
  AM_ERR_CAPACITY_MISMATCH = 11,
  AM_ERR_NOT_A_GRID = 12,
  AM_ERR_INVALID_ARGUMENT = 13,
  AM_ERR_INTERNAL = 99
} am_status;

typedef enum am_algorithm {
  AM_MAX_MAX_LEX = 0,
  AM_DEFERRED_ACCEPTANCE = 1,
  AM_MAX_MIN_LEX = 2
} am_algorithm;

typedef enum am_capacity_mode {
  AM_CAPACITY_PROPORTIONAL = 0,
  AM_CAPACITY_EVEN = 1,
  AM_CAPACITY_EXPLICIT = 2
} am_capacity_mode;

typedef struct am_instance am_instance;
typedef struct am_allocation am_allocation;
typedef struct am_spatial am_spatial;

AM_API const char* am_last_error(void);
AM_API const char* am_status_name(am_status status);
AM_API void am_string_free(char* text);

/* --- instances ------------------------------------------------------- */

/* utilities: row-major, n_students * n_schools values. strict != 0 rejects
 * any repeated utility value. */
AM_API am_status am_instance_create(size_t n_students, size_t n_schools,
                                    const int64_t* capacities,
                                    const double* utilities, int strict,
                                    am_instance** out);
AM_API am_status am_instance_parse(const char* text, int strict,
                                   am_instance** out);
AM_API am_status am_instance_serialize(const am_instance* instance,
                                       char** out_text);
/* Random strict instance; capacities may be NULL for random capacities. */
AM_API am_status am_instance_random(size_t n_students, size_t n_schools,
                                    const int64_t* capacities, uint64_t seed,
                                    am_instance** out);
AM_API size_t am_instance_num_students(const am_instance* instance);
AM_API size_t am_instance_num_schools(const am_instance* instance);
AM_API double am_instance_utility(const am_instance* instance, size_t student,
                                  size_t school);
AM_API int64_t am_instance_capacity(const am_instance* instance, size_t school);
/* 1 if both handles hold the same economy. */
AM_API int am_instance_equal(const am_instance* a, const am_instance* b);
AM_API void am_instance_free(am_instance* instance);

/* --- solving --------------------------------------------------------- */

AM_API am_status am_algorithm_from_name(const char* name, am_algorithm* out);
AM_API const char* am_algorithm_name(am_algorithm algorithm);

/* trace_json may be NULL when the trace is not wanted. */
AM_API am_status am_solve(const am_instance* instance, am_algorithm algorithm,
                          am_allocation** out, char** trace_json);

/* Threshold -INFINITY stands for the unassigned sentinel. */
AM_API am_status am_feasible_above(const am_instance* instance,
                                   double threshold, int* out);
AM_API am_status am_bottleneck_value(const am_instance* instance, double* out);

/* --- allocations ----------------------------------------------------- */

/* assignment[i] = school index, or -1 for unassigned. */
AM_API am_status am_allocation_create(const am_instance* instance,
                                      const int64_t* assignment,
                                      am_allocation** out);
AM_API am_status am_allocation_parse(const am_instance* instance,
                                     const char* text, am_allocation** out);
AM_API am_status am_allocation_to_json(const am_instance* instance,
                                       const am_allocation* allocation,
                                       const char* algorithm, char** out_text);
AM_API size_t am_allocation_num_students(const am_allocation* allocation);
/* School index of `student`, or -1 when unassigned. */
AM_API int64_t am_allocation_school_of(const am_allocation* allocation,
                                       size_t student);
AM_API int am_allocation_equal(const am_allocation* a, const am_allocation* b);
AM_API void am_allocation_free(am_allocation* allocation);

/* --- analysis -------------------------------------------------------- */

/* Blocking pairs, metrics and the stability verdict as JSON. */
AM_API am_status am_audit(const am_instance* instance,
                          const am_allocation* allocation, int* is_stable,
                          char** report_json);
AM_API am_status am_blocking_pair_count(const am_instance* instance,
                                        const am_allocation* allocation,
                                        size_t* out);
AM_API am_status am_metrics(const am_instance* instance,
                            const am_allocation* allocation, char** out_json);
/* Compares realized utility vectors: <0, 0, >0 as `a` loses, ties, wins. */
AM_API am_status am_lex_compare_top(const am_instance* instance,
                                    const am_allocation* a,
                                    const am_allocation* b, int* out);
AM_API am_status am_lex_compare_bottom(const am_instance* instance,
                                       const am_allocation* a,
                                       const am_allocation* b, int* out);

/* --- brute-force verification ------------------------------------------ */

AM_API am_status am_verify(const am_instance* instance, size_t max_students,
                           uint64_t max_allocations, int* all_passed,
                           char** report_json);

/* --- spatial instances ----------------------------------------------- */

typedef struct am_spatial_params {
  size_t grid;             /* lattice side; 0 selects random students */
  size_t random_students;  /* used when grid == 0 */
  size_t n_schools;
  am_capacity_mode capacity_mode;
  const int64_t* capacities; /* n_schools entries, explicit mode only */
  const double* school_xy;   /* optional fixed positions, 2 * n_schools */
  uint64_t seed;
  int strict;
} am_spatial_params;

AM_API void am_spatial_params_init(am_spatial_params* params);
AM_API am_status am_spatial_generate(const am_spatial_params* params,
                                     am_spatial** out);
AM_API am_status am_spatial_parse(const char* sidecar_text, int strict,
                                  am_spatial** out);
AM_API am_status am_spatial_serialize(const am_spatial* spatial,
                                      char** out_text);
/* Copy of the derived utility instance. */
AM_API am_status am_spatial_instance(const am_spatial* spatial,
                                     am_instance** out);
AM_API am_status am_spatial_territories_csv(const am_spatial* spatial,
                                            const am_allocation* allocation,
                                            char** out_text);
AM_API am_status am_spatial_render_svg(const am_spatial* spatial,
                                       const am_allocation* allocation,
                                       double cell_size_px, char** out_text);
AM_API void am_spatial_free(am_spatial* spatial);

#ifdef __cplusplus
}
#endif

#endif /* ALIGNMATCH_H */
