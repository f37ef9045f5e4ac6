/*
Copyright 2026 The gbcs-lab Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

// C interface to the gbcs-lab toolkit. Every call that can fail returns a
// gbcs_status; the message of the most recent failure on the calling thread is
// available from gbcs_last_error(). Handles are opaque and owned by the caller
// once returned.

#ifndef GBCS_GBCS_H_
#define GBCS_GBCS_H_

#include <stddef.h>
#include <stdint.h>

#if defined(GBCS_BUILDING_LIBRARY)
#define GBCS_API __attribute__((visibility("default")))
#else
#define GBCS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gbcs_status {
  GBCS_OK = 0,
  GBCS_ERR_USAGE = 1,
  GBCS_ERR_PARSE = 2,
  GBCS_ERR_NUMERIC = 3,
  GBCS_ERR_INVARIANT = 4,
} gbcs_status;

typedef enum gbcs_format {
  GBCS_FORMAT_SUMMARY = 0,
  GBCS_FORMAT_JSON = 1,
  GBCS_FORMAT_CSV = 2,
} gbcs_format;

typedef struct gbcs_topology gbcs_topology;
typedef struct gbcs_result gbcs_result;

typedef struct gbcs_options {
  double tf;               /* horizon, default 1 */
  int steps;               /* integration steps, default 1000 */
  double rank_tol;         /* <= 0 selects the automatic threshold */
  double t_tol;            /* T-row equality tolerance, default 1e-9 */
  uint64_t seed;           /* perturbation seed for the Nash check */
  int trials;              /* perturbations per player, default 20 */
  double eps;              /* perturbation size, default 1e-3 */
  double regulator_input;  /* constant regulator input z, default 1 */
  double x0_value;         /* every entry of the initial state, default 1 */
  double q_weight;         /* Q_i = q_weight * I, default 1 */
  double qt_weight;        /* Q_iT = qt_weight * I, default 1 */
  double r_weight;         /* R_i, default 1 */
  int dedup;               /* scan: isomorphism classes only */
  int allow_large;         /* scan: permit more than six agents */
} gbcs_options;

GBCS_API void gbcs_options_init(gbcs_options* options);
GBCS_API const char* gbcs_last_error(void);
GBCS_API const char* gbcs_version(void);

GBCS_API gbcs_status gbcs_topology_parse(const char* text, gbcs_topology** out);
GBCS_API gbcs_status gbcs_topology_load(const char* path, gbcs_topology** out);
/* pairs holds 2 * edge_count 1-based agent indices. */
GBCS_API gbcs_status gbcs_topology_from_edges(int agents, const int* pairs,
                                              size_t edge_count, gbcs_topology** out);
GBCS_API void gbcs_topology_free(gbcs_topology* topology);
GBCS_API int gbcs_topology_agents(const gbcs_topology* topology);

/* Row-major (H+1)^2 integer strategy matrix. */
GBCS_API gbcs_status gbcs_strategy_matrix(const gbcs_topology* topology, int64_t* out,
                                          size_t capacity);
/* Cell index of every node 0..H in the coarsest strategy-equivalent partition. */
GBCS_API gbcs_status gbcs_sep(const gbcs_topology* topology, int* cell_of, size_t capacity);

GBCS_API gbcs_status gbcs_analyze(const gbcs_topology* topology, const gbcs_options* options,
                                  gbcs_result** out);
GBCS_API gbcs_status gbcs_smatrix_report(const gbcs_topology* topology, gbcs_result** out);
GBCS_API gbcs_status gbcs_sep_report(const gbcs_topology* topology, gbcs_result** out);
GBCS_API gbcs_status gbcs_riccati(const gbcs_topology* topology, const gbcs_options* options,
                                  gbcs_result** out);
GBCS_API gbcs_status gbcs_simulate(const gbcs_topology* topology, const gbcs_options* options,
                                   gbcs_result** out);
GBCS_API gbcs_status gbcs_nash_check(const gbcs_topology* topology,
                                     const gbcs_options* options, gbcs_result** out);
GBCS_API gbcs_status gbcs_scan(int agents, const gbcs_options* options, gbcs_result** out);

/* NULL when the result has no rendering in that format. */
GBCS_API const char* gbcs_result_text(const gbcs_result* result, gbcs_format format);
GBCS_API void gbcs_result_free(gbcs_result* result);

typedef struct gbcs_analysis_summary {
  int agents;
  int sep_nontrivial;
  int t_rows_equal;
  int thm2_uncontrollable;
  int thm2_applies;
  int kalman_rank;
  int projected_rank;
  int controllable;
  double rank_threshold;
} gbcs_analysis_summary;

typedef struct gbcs_scan_summary {
  int graphs;
  int consistent;
  int theorem_violations;
  int conjecture_counterexamples;
  int numeric_failures;
} gbcs_scan_summary;

typedef struct gbcs_nash_summary {
  double min_delta;
  double threshold;
  int certified;
} gbcs_nash_summary;

/* GBCS_ERR_USAGE when the result came from a different operation. */
GBCS_API gbcs_status gbcs_result_analysis(const gbcs_result* result,
                                          gbcs_analysis_summary* out);
GBCS_API gbcs_status gbcs_result_scan(const gbcs_result* result, gbcs_scan_summary* out);
GBCS_API gbcs_status gbcs_result_nash(const gbcs_result* result, gbcs_nash_summary* out);

#ifdef __cplusplus
}
#endif

#endif  // GBCS_GBCS_H_
