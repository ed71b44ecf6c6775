/* Copyright 2026 The qtrange developers
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of the qtrange library: error-probability bounds for locating
 * one anomalous bosonic channel among m candidates (applied to target
 * ranging), zero-mean Gaussian state calculus behind the quantum bound, and
 * a reproducible Monte Carlo simulation of the scan-and-confirm receiver.
 *
 * Conventions:
 *  - Every function returns a qtr_error code; outputs go through pointers.
 *  - On failure, qtr_last_error_message() describes the problem (the string
 *    is thread-local and overwritten by the next failing call).
 *  - Covariance matrices are row-major (x1, p1, x2, p2) quadrature blocks
 *    with vacuum variance 1 (the vacuum covariance is the identity).
 *  - Handles returned through qtr_state** and the result handles below are
 *    owned by the caller and released with the matching *_free function.
 */

#ifndef QTRANGE_QTRANGE_H
#define QTRANGE_QTRANGE_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qtr_error {
  QTR_OK = 0,
  /* A parameter lies outside its mathematical domain. */
  QTR_ERROR_DOMAIN = 1,
  /* A numerical guarantee cannot be met (e.g. truncation discards too much
   * trace). */
  QTR_ERROR_PRECISION = 2,
  /* A null pointer or malformed buffer was passed. */
  QTR_ERROR_INVALID_ARGUMENT = 3,
  /* A configurable resource cap was exceeded. */
  QTR_ERROR_LIMIT = 4,
  /* Unexpected internal failure. */
  QTR_ERROR_INTERNAL = 5
} qtr_error;

/* Library version as "major.minor.patch". */
const char* qtr_version(void);

/* Thread-local message for the most recent failing call on this thread;
 * empty string if the last call succeeded. */
const char* qtr_last_error_message(void);

/* ------------------------------------------------------------------ */
/* Gaussian states                                                     */

typedef struct qtr_state qtr_state;

/* Two-mode squeezed vacuum with n_s mean photons per mode. */
qtr_error qtr_state_tmsv(double n_s, qtr_state** out);

/* State from a 2x2 (dim = 2) or 4x4 (dim = 4) covariance matrix; validates
 * symmetry and physicality. */
qtr_error qtr_state_from_covariance(const double* cov, int dim,
                                    qtr_state** out);

/* TMSV signal mode through a transmissivity-eta thermal-loss channel whose
 * environment carries n_b / (1 - eta) thermal photons. */
qtr_error qtr_state_target_output(double eta, double n_b, double n_s,
                                  qtr_state** out);

/* The fully lost signal: thermal n_b on the signal mode, TMSV idler
 * marginal on the other, no correlations. */
qtr_error qtr_state_background_output(double n_b, double n_s, qtr_state** out);

/* Thermal-loss channel (transmissivity mu, environment occupation n_thermal)
 * applied to one mode of `in`. */
qtr_error qtr_state_apply_thermal_loss(const qtr_state* in, double mu,
                                       double n_thermal, int mode_index,
                                       qtr_state** out);

qtr_error qtr_state_num_modes(const qtr_state* state, int* out);

/* Writes the 2n x 2n covariance, row-major, into `out` (4 n^2 doubles). */
qtr_error qtr_state_covariance(const qtr_state* state, double* out);

/* Writes the n symplectic eigenvalues in descending order. */
qtr_error qtr_state_symplectic_eigenvalues(const qtr_state* state,
                                           double* out);

void qtr_state_free(qtr_state* state);

/* Uhlmann fidelity of two states with equal mode counts; in [0, 1], exactly
 * 1 iff the covariances agree within 1e-9. */
qtr_error qtr_gaussian_fidelity(const qtr_state* a, const qtr_state* b,
                                double* out);

/* Independent Fock-basis cross-check of qtr_gaussian_fidelity. The reported
 * deficits are those of truncation at `cutoff` photons per mode; the value
 * itself is evaluated with extra headroom above the cutoff so its error
 * stays well below the deficit the gate permits. Pass max_trace_deficit <= 0
 * for the default (1e-4). On success the truncation deficits of both states
 * are reported; a deficit above the threshold fails with QTR_ERROR_PRECISION
 * and the error message carries the offending values. */
qtr_error qtr_fock_fidelity_oracle(const qtr_state* a, const qtr_state* b,
                                   int cutoff, double max_trace_deficit,
                                   double* fidelity, double* trace_deficit_a,
                                   double* trace_deficit_b);

/* ------------------------------------------------------------------ */
/* Closed-form bounds                                                  */

/* Lower bound on any classical-source strategy for finding one
 * transmissivity-mu_t channel among m-1 mu_b channels (environment noises
 * e_t, e_b; n_s probe photons per mode; big_m modes per channel). */
qtr_error qtr_classical_cpf_lower_bound(int m, long long big_m, double n_s,
                                        double mu_b, double mu_t, double e_b,
                                        double e_t, double* out);

/* (m-1) * f^(2M) for single-copy fidelity f; raw, can exceed 1. */
qtr_error qtr_quantum_cpf_upper_bound_exact(int m, long long big_m,
                                            double single_copy_fidelity,
                                            double* out);

/* (m-1) * exp(-M eta n_s / (n_b + 1)). */
qtr_error qtr_quantum_ub_asymptotic(int m, long long big_m, double n_s,
                                    double eta, double n_b, double* out);

/* ((m-1)/2) * exp(-2 M eta n_s / n_b); requires n_b > 0. */
qtr_error qtr_cn_asymptotic(int m, long long big_m, double n_s, double eta,
                            double n_b, double* out);

/* ((m-1)/(2m)) * exp(-2 M eta n_s / (2 n_b + 1)). */
qtr_error qtr_classical_qtr_lower_bound_per_bin(int m, long long big_m,
                                                double n_s, double eta,
                                                double n_b, double* out);

/* The per-bin bound with M -> m M: the classical benchmark emitting the
 * whole energy budget as one pulse. */
qtr_error qtr_classical_ctr_lower_bound(int m, long long big_m, double n_s,
                                        double eta, double n_b, double* out);

/* Mean error probability of the scan-and-confirm receiver with Type-I rate
 * zeta1, Type-II rate zeta2 and n_hyp hypotheses. */
qtr_error qtr_cn_error_probability(double zeta1, double zeta2, int n_hyp,
                                   double* out);

/* Writes 1 iff ln m <= 2 M gamma (n_b (2-m) + 1) / (2 n_b + 1). */
qtr_error qtr_advantage_condition(int m, long long big_m, double gamma,
                                  double n_b, int* out);

/* ------------------------------------------------------------------ */
/* Scenario evaluation                                                 */

typedef struct qtr_bounds_report {
  int m;
  long long big_m;
  double n_s;
  double eta;
  double n_b;
  double gamma; /* eta * n_s / n_b */
  double classical_cpf_lb;
  double quantum_ub_exact;
  double quantum_ub_asym;
  double cn_qtr_asym;
  double classical_ctr_lb;
  int advantage_possible; /* cn_qtr_asym <= classical_ctr_lb */
  int vacuous;            /* some bound exceeds 1 */
} qtr_bounds_report;

/* Evaluates every bound for one scenario; requires n_b > 0. */
qtr_error qtr_compare_all(int m, long long big_m, double n_s, double eta,
                          double n_b, qtr_bounds_report* out);

/* Uniform range bins: writes m rows of (r_lo, r_hi, round_trip_delay_seconds)
 * into `out` (3 m doubles), ordered by increasing range. */
qtr_error qtr_build_range_bins(double r_min, double r_max, int m, double* out);

/* Energy accounting: all three outputs equal m * big_m * n_s photons (the
 * fairness constraint). m >= 1 is allowed here. */
qtr_error qtr_energy_accounting(int m, long long big_m, double n_s,
                                double* quantum_total, double* classical_pulse,
                                double* max_target_exposure);

/* Cartesian sweep over the five parameter grids in lexicographic order
 * (m outermost, then big_m, n_s, eta, n_b). max_rows = 0 selects the default
 * cap of 1000000 rows. */
typedef struct qtr_sweep_result qtr_sweep_result;

qtr_error qtr_sweep(const int* m_values, int m_count,
                    const long long* big_m_values, int big_m_count,
                    const double* n_s_values, int n_s_count,
                    const double* eta_values, int eta_count,
                    const double* n_b_values, int n_b_count,
                    unsigned long long max_rows, qtr_sweep_result** out);

qtr_error qtr_sweep_row_count(const qtr_sweep_result* result,
                              unsigned long long* out);

qtr_error qtr_sweep_row(const qtr_sweep_result* result,
                        unsigned long long index, qtr_bounds_report* out);

void qtr_sweep_result_free(qtr_sweep_result* result);

/* ------------------------------------------------------------------ */
/* Monte Carlo simulation of the scan-and-confirm receiver             */

typedef struct qtr_cn_result {
  double zeta1;
  double zeta2;
  int n_hyp;
  unsigned long long trials;
  unsigned long long master_seed;
  unsigned long long error_count;
  double error_rate;
  double std_error;   /* binomial */
  double wilson_low;  /* two-sided 95% Wilson score interval */
  double wilson_high;
  double analytic;    /* closed-form error probability */
  int analytic_only;  /* 1 when the simulation was skipped (underflow) */
} qtr_cn_result;

/* threads <= 0 picks the hardware concurrency; results are a pure function
 * of (zeta1, zeta2, n_hyp, trials, master_seed), never of the thread count. */
qtr_error qtr_simulate_cn(double zeta1, double zeta2, int n_hyp,
                          unsigned long long trials,
                          unsigned long long master_seed, int threads,
                          qtr_cn_result* out);

/* Scenario-driven simulation with zeta1 = zeta2 = exp(-M eta n_s / n_b) and
 * n_hyp = m; `zeta_out` (optional) receives the mapped rate. If zeta
 * underflows below 1e-300 the closed form is reported with analytic_only=1. */
qtr_error qtr_simulate_qtr_cn(int m, long long big_m, double n_s, double eta,
                              double n_b, unsigned long long trials,
                              unsigned long long master_seed, int threads,
                              double* zeta_out, qtr_cn_result* out);

/* ------------------------------------------------------------------ */
/* Advantage region search                                             */

typedef struct qtr_advantage_result qtr_advantage_result;

/* Enumerates the grid (m outermost, then n_b, big_m, gamma) and records every
 * tuple satisfying the advantage condition. */
qtr_error qtr_advantage_region_search(const int* m_values, int m_count,
                                      const double* n_b_values, int n_b_count,
                                      const long long* big_m_values,
                                      int big_m_count,
                                      const double* gamma_values,
                                      int gamma_count,
                                      qtr_advantage_result** out);

qtr_error qtr_advantage_points_checked(const qtr_advantage_result* result,
                                       unsigned long long* out);

qtr_error qtr_advantage_hit_count(const qtr_advantage_result* result,
                                  unsigned long long* out);

qtr_error qtr_advantage_hit(const qtr_advantage_result* result,
                            unsigned long long index, int* m, double* n_b,
                            long long* big_m, double* gamma);

/* Writes 1 when every grid point with m > 2 and n_b > 1/(m-2) both has
 * n_b (2-m) + 1 < 0 and fails the advantage condition. */
qtr_error qtr_advantage_witness_verified(const qtr_advantage_result* result,
                                         int* out);

void qtr_advantage_result_free(qtr_advantage_result* result);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QTRANGE_QTRANGE_H */
