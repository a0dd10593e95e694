// Copyright 2026 The levarray Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the levarray core: steady states of levitated-particle
 * arrays, their entanglement structure and coupling optimization.
 *
 * Every function returns a levarray_status. On failure the message of the
 * most recent error on the calling thread is available from
 * levarray_last_error(). Handles are opaque and owned by the caller; release
 * them with the matching *_free function. */
#ifndef LEVARRAY_LEVARRAY_H_
#define LEVARRAY_LEVARRAY_H_

#include <stddef.h>

#if defined(LEVARRAY_BUILDING_LIBRARY)
#define LEVARRAY_API __attribute__((visibility("default")))
#else
#define LEVARRAY_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum levarray_status {
  LEVARRAY_OK = 0,
  LEVARRAY_E_INVALID_ARGUMENT = 1,
  LEVARRAY_E_NOT_STABLE = 2,
  LEVARRAY_E_SOLVE_FAILURE = 3,
  LEVARRAY_E_NUMERICAL_FAILURE = 4,
  LEVARRAY_E_INDEX_OUT_OF_RANGE = 5,
  LEVARRAY_E_NOT_NORMALIZED = 6,
  LEVARRAY_E_SHAPE_MISMATCH = 7,
  LEVARRAY_E_ZERO_VECTOR = 8,
  LEVARRAY_E_UNSORTED_INPUT = 9,
  LEVARRAY_E_ALL_UNSTABLE = 10,
  LEVARRAY_E_DIVISION_BY_ZERO = 11,
  LEVARRAY_E_CONFIG = 12,
  LEVARRAY_E_IO = 13,
  LEVARRAY_E_BUFFER_TOO_SMALL = 14,
  LEVARRAY_E_INTERNAL = 99
} levarray_status;

LEVARRAY_API const char* levarray_status_string(levarray_status status);
/* Message of the last failure on this thread; empty string if none. */
LEVARRAY_API const char* levarray_last_error(void);
LEVARRAY_API const char* levarray_version(void);

/* Three particles, three cavities, uniform rates in units of the mechanical
 * frequency. */
typedef struct levarray_params {
  double kappa;
  double gamma;
  double nbar;
} levarray_params;

/* Q = 5e9 (gamma = 2e-10), nbar = 2e7, kappa = 0.4. */
LEVARRAY_API levarray_status levarray_params_reference(levarray_params* out);

typedef enum levarray_family {
  LEVARRAY_FAMILY_CYCLIC = 0,      /* lambda3 = sqrt(1 + l1^2 - l2^2) */
  LEVARRAY_FAMILY_TWO_PARTICLE = 1 /* lambda3 = 0, lambda2 = sqrt(1 + l1^2) */
} levarray_family;

typedef struct levarray_bogoliubov {
  levarray_family family;
  double lambda1;
  double lambda2; /* ignored for LEVARRAY_FAMILY_TWO_PARTICLE */
  double couplings[3];
} levarray_bogoliubov;

/* ---- Gaussian-state primitives on caller-owned row-major matrices ---- */

/* Solves A V + V A^T + N = 0; `out` receives dim*dim doubles. */
LEVARRAY_API levarray_status levarray_lyapunov_solve(const double* drift, const double* diffusion, size_t dim,
                                                     double* out);
/* dim/2 symplectic eigenvalues, ascending. */
LEVARRAY_API levarray_status levarray_symplectic_eigenvalues(const double* cov, size_t dim, double* out);
/* Log-negativity across (party_a | party_b); mode indices are 0-based. */
LEVARRAY_API levarray_status levarray_log_negativity(const double* cov, size_t dim, const size_t* party_a,
                                                     size_t n_a, const size_t* party_b, size_t n_b, double* out);

/* ---- Steady state of one configuration ---- */

typedef struct levarray_state levarray_state;

LEVARRAY_API levarray_status levarray_state_create(const levarray_params* params, const levarray_bogoliubov* spec,
                                                   levarray_state** out);
/* g_minus and g_plus are 3x3 row-major, indexed [particle][cavity]. */
LEVARRAY_API levarray_status levarray_state_create_couplings(const levarray_params* params, const double* g_minus,
                                                             const double* g_plus, levarray_state** out);
LEVARRAY_API void levarray_state_free(levarray_state* state);

/* Full 12x12 covariance (cavities first), row-major, 144 doubles. */
LEVARRAY_API levarray_status levarray_state_covariance(const levarray_state* state, double* out, size_t capacity);
LEVARRAY_API levarray_status levarray_state_spectral_abscissa(const levarray_state* state, double* out);

typedef struct levarray_report {
  double dyadic[3];  /* pairs 12, 23, 31 */
  double triadic[3]; /* splits 1|23, 2|31, 3|12 */
  double dyadic_merit[3];  /* index c-1 holds the figure of merit for c entangled bipartitions */
  double triadic_merit[3];
  int dyadic_gated[2];  /* 1 when the gate zeroed the figure; [0]: two bipartitions, [1]: one */
  int triadic_gated[2];
  int has_occupations;
  double occupations[3]; /* <beta_k^dag beta_k>, valid when has_occupations */
  size_t squeezed_count;
} levarray_report;

LEVARRAY_API levarray_status levarray_state_report(const levarray_state* state, levarray_report* out);

/* Collective quadrature catalog used for the squeezing scan. */
LEVARRAY_API size_t levarray_catalog_size(void);
LEVARRAY_API const char* levarray_catalog_label(size_t index);
LEVARRAY_API levarray_status levarray_state_catalog_variance(const levarray_state* state, size_t index,
                                                             double* out);
/* Minimum quadrature variance over the given particles (0-based). */
LEVARRAY_API levarray_status levarray_state_min_variance(const levarray_state* state, const size_t* particles,
                                                         size_t count, double* out);

/* ---- Coupling optimization ---- */

typedef enum levarray_symmetry { LEVARRAY_FREE = 0, LEVARRAY_EQUAL_COUPLINGS = 1 } levarray_symmetry;

typedef struct levarray_problem {
  int arity; /* 2 dyadic, 3 triadic */
  int count; /* entangled bipartitions targeted: 1, 2 or 3 */
  double g_max;
  levarray_family family;
  double lambda1;
  double lambda2;
  levarray_symmetry symmetry;
  int seeds_per_axis;
  int refine_starts;
  int max_iterations;
  double spread_tolerance;
} levarray_problem;

/* Defaults: E3^(2), g_max 0.4, 9 seeds per axis, 3 refinements, 500 iterations. */
LEVARRAY_API levarray_status levarray_problem_default(levarray_problem* out);

typedef struct levarray_optimum {
  double value;
  double couplings[3];
  int stable;
  double spectral_abscissa;
  size_t evaluations;
  levarray_report report;
} levarray_optimum;

LEVARRAY_API levarray_status levarray_optimize(const levarray_params* params, const levarray_problem* problem,
                                               levarray_optimum* out);
LEVARRAY_API levarray_status levarray_brute_force(const levarray_params* params, const levarray_problem* problem,
                                                  double step, double* value, double couplings[3]);

/* ---- Lambda-plane sweeps ---- */

typedef struct levarray_sweep levarray_sweep;

typedef struct levarray_range {
  double min;
  double max;
  double step;
} levarray_range;

typedef struct levarray_sweep_row {
  double lambda1;
  double lambda2;
  double lambda3;
  int feasible;
  int failed;
  levarray_optimum optimum;
} levarray_sweep_row;

/* workers = 0 uses every hardware thread. */
LEVARRAY_API levarray_status levarray_sweep_run(const levarray_params* params, const levarray_problem* base,
                                                levarray_range lambda1, levarray_range lambda2, size_t workers,
                                                levarray_sweep** out);
LEVARRAY_API void levarray_sweep_free(levarray_sweep* sweep);
LEVARRAY_API size_t levarray_sweep_size(const levarray_sweep* sweep);
LEVARRAY_API levarray_status levarray_sweep_row_at(const levarray_sweep* sweep, size_t index, levarray_sweep_row* out);
/* Error text of a failed row; empty when the row succeeded. */
LEVARRAY_API const char* levarray_sweep_row_error(const levarray_sweep* sweep, size_t index);

/* ---- Invariant suite ---- */

typedef struct levarray_check levarray_check;

LEVARRAY_API levarray_status levarray_check_run(unsigned long long seed, size_t trials, levarray_check** out);
LEVARRAY_API void levarray_check_free(levarray_check* check);
LEVARRAY_API size_t levarray_check_size(const levarray_check* check);
LEVARRAY_API levarray_status levarray_check_result(const levarray_check* check, size_t index, const char** name,
                                                   int* passed, const char** detail);

#ifdef __cplusplus
}
#endif

#endif /* LEVARRAY_LEVARRAY_H_ */
