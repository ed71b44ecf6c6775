// Copyright 2026 The qtrange developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qtrange/qtrange.h"

#include <cstring>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "core/bounds.hpp"
#include "core/cn_sim.hpp"
#include "core/errors.hpp"
#include "core/gaussian.hpp"
#include "core/scenario.hpp"

struct qtr_state {
  qtrange::GaussianState impl;
};

struct qtr_sweep_result {
  std::vector<qtrange::BoundsReport> rows;
};

struct qtr_advantage_result {
  qtrange::AdvantageSearchResult impl;
};

namespace {

thread_local std::string g_last_error;

qtr_error fail(qtr_error code, const char* what) {
  g_last_error = (what != nullptr) ? what : "";
  return code;
}

// Runs `fn`, translating the library's exception taxonomy into error codes.
// The most derived types are matched first: domain_error specializes
// std::invalid_argument, precision_error and limit_error specialize
// std::runtime_error.
template <typename Fn>
qtr_error guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return QTR_OK;
  } catch (const qtrange::domain_error& e) {
    return fail(QTR_ERROR_DOMAIN, e.what());
  } catch (const qtrange::precision_error& e) {
    return fail(QTR_ERROR_PRECISION, e.what());
  } catch (const qtrange::limit_error& e) {
    return fail(QTR_ERROR_LIMIT, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(QTR_ERROR_DOMAIN, e.what());
  } catch (const std::exception& e) {
    return fail(QTR_ERROR_INTERNAL, e.what());
  } catch (...) {
    return fail(QTR_ERROR_INTERNAL, "unknown internal error");
  }
}

// Every output or handle parameter must be non-null.
bool all_non_null(std::initializer_list<const void*> ptrs) {
  for (const void* p : ptrs) {
    if (p == nullptr) return false;
  }
  return true;
}

qtr_error null_argument() {
  return fail(QTR_ERROR_INVALID_ARGUMENT, "null pointer argument");
}

void fill_report(const qtrange::BoundsReport& r, qtr_bounds_report* out) {
  out->m = r.inputs.m;
  out->big_m = r.inputs.big_m;
  out->n_s = r.inputs.n_s;
  out->eta = r.inputs.eta;
  out->n_b = r.inputs.n_b;
  out->gamma = r.gamma;
  out->classical_cpf_lb = r.classical_cpf_lb;
  out->quantum_ub_exact = r.quantum_ub_exact;
  out->quantum_ub_asym = r.quantum_ub_asym;
  out->cn_qtr_asym = r.cn_qtr_asym;
  out->classical_ctr_lb = r.classical_ctr_lb;
  out->advantage_possible = r.advantage_possible ? 1 : 0;
  out->vacuous = r.vacuous ? 1 : 0;
}

void fill_cn_result(const qtrange::CNSimResult& r, qtr_cn_result* out) {
  out->zeta1 = r.config.cn.zeta1;
  out->zeta2 = r.config.cn.zeta2;
  out->n_hyp = r.config.cn.n_hyp;
  out->trials = r.config.trials;
  out->master_seed = r.config.master_seed;
  out->error_count = r.error_count;
  out->error_rate = r.error_rate;
  out->std_error = r.std_error;
  out->wilson_low = r.wilson_low;
  out->wilson_high = r.wilson_high;
  out->analytic = r.analytic;
  out->analytic_only = r.analytic_only ? 1 : 0;
}

}  // namespace

extern "C" {

const char* qtr_version(void) { return "0.1.0"; }

const char* qtr_last_error_message(void) { return g_last_error.c_str(); }

/* ------------------------------------------------------------------ */
/* Gaussian states                                                     */

qtr_error qtr_state_tmsv(double n_s, qtr_state** out) {
  if (!all_non_null({out})) return null_argument();
  return guarded([&] { *out = new qtr_state{qtrange::tmsv_state(n_s)}; });
}

qtr_error qtr_state_from_covariance(const double* cov, int dim,
                                    qtr_state** out) {
  if (!all_non_null({cov, out})) return null_argument();
  return guarded([&] {
    if (dim != 2 && dim != 4) {
      throw qtrange::domain_error("covariance dimension must be 2 or 4, got " +
                                  std::to_string(dim));
    }
    Eigen::MatrixXd mat(dim, dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        mat(i, j) = cov[static_cast<size_t>(i) * dim + j];
      }
    }
    *out = new qtr_state{qtrange::GaussianState::from_covariance(mat)};
  });
}

qtr_error qtr_state_target_output(double eta, double n_b, double n_s,
                                  qtr_state** out) {
  if (!all_non_null({out})) return null_argument();
  return guarded([&] {
    *out = new qtr_state{qtrange::target_output_state(eta, n_b, n_s)};
  });
}

qtr_error qtr_state_background_output(double n_b, double n_s,
                                      qtr_state** out) {
  if (!all_non_null({out})) return null_argument();
  return guarded([&] {
    *out = new qtr_state{qtrange::background_output_state(n_b, n_s)};
  });
}

qtr_error qtr_state_apply_thermal_loss(const qtr_state* in, double mu,
                                       double n_thermal, int mode_index,
                                       qtr_state** out) {
  if (!all_non_null({in, out})) return null_argument();
  return guarded([&] {
    qtrange::ThermalLossChannel ch{mu, n_thermal};
    *out = new qtr_state{qtrange::apply_thermal_loss(in->impl, ch, mode_index)};
  });
}

qtr_error qtr_state_num_modes(const qtr_state* state, int* out) {
  if (!all_non_null({state, out})) return null_argument();
  return guarded([&] { *out = state->impl.num_modes(); });
}

qtr_error qtr_state_covariance(const qtr_state* state, double* out) {
  if (!all_non_null({state, out})) return null_argument();
  return guarded([&] {
    const Eigen::MatrixXd& cov = state->impl.covariance();
    const int dim = static_cast<int>(cov.rows());
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        out[static_cast<size_t>(i) * dim + j] = cov(i, j);
      }
    }
  });
}

qtr_error qtr_state_symplectic_eigenvalues(const qtr_state* state,
                                           double* out) {
  if (!all_non_null({state, out})) return null_argument();
  return guarded([&] {
    const std::vector<double> nu = state->impl.symplectic_eigenvalues();
    for (size_t i = 0; i < nu.size(); ++i) out[i] = nu[i];
  });
}

void qtr_state_free(qtr_state* state) { delete state; }

qtr_error qtr_gaussian_fidelity(const qtr_state* a, const qtr_state* b,
                                double* out) {
  if (!all_non_null({a, b, out})) return null_argument();
  return guarded([&] { *out = qtrange::gaussian_fidelity(a->impl, b->impl); });
}

qtr_error qtr_fock_fidelity_oracle(const qtr_state* a, const qtr_state* b,
                                   int cutoff, double max_trace_deficit,
                                   double* fidelity, double* trace_deficit_a,
                                   double* trace_deficit_b) {
  if (!all_non_null({a, b, fidelity, trace_deficit_a, trace_deficit_b})) {
    return null_argument();
  }
  return guarded([&] {
    const double threshold = (max_trace_deficit > 0.0) ? max_trace_deficit
                                                       : 1e-4;
    const qtrange::FockFidelityResult r =
        qtrange::fock_fidelity_oracle(a->impl, b->impl, cutoff, threshold);
    *fidelity = r.fidelity;
    *trace_deficit_a = r.trace_deficit_a;
    *trace_deficit_b = r.trace_deficit_b;
  });
}

/* ------------------------------------------------------------------ */
/* Closed-form bounds                                                  */

qtr_error qtr_classical_cpf_lower_bound(int m, long long big_m, double n_s,
                                        double mu_b, double mu_t, double e_b,
                                        double e_t, double* out) {
  if (!all_non_null({out})) return null_argument();
  return guarded([&] {
    *out = qtrange::classical_cpf_lower_bound(m, big_m, n_s, mu_b, mu_t, e_b,
                                              e_t);
  });
}

qtr_error qtr_quantum_cpf_upper_bound_exact(int m, long long big_m,
                                            double single_copy_fidelity,
                                            double* out) {
  if (!all_non_null({out})) return null_argument();
  return guarded([&] {
    *out = qtrange::quantum_cpf_upper_bound_exact(m, big_m,
                                                  single_copy_fidelity);
  });
}

qtr_error qtr_quantum_ub_asymptotic(int m, long long big_m, double n_s,
                                    double eta, double n_b, double* out) {
  if (!all_non_null({out})) return null_argument();
  return guarded([&] {
    *out = qtrange::qtr_quantum_ub_asymptotic(
        qtrange::ScenarioParams::create(m, big_m, n_s, eta, n_b));
  });
}

qtr_error qtr_cn_asymptotic(int m, long long big_m, double n_s, double eta,
                            double n_b, double* out) {
  if (!all_non_null({out})) return null_argument();
  return guarded([&] {
    *out = qtrange::qtr_cn_asymptotic(
        qtrange::ScenarioParams::create(m, big_m, n_s, eta, n_b));
  });
}

qtr_error qtr_classical_qtr_lower_bound_per_bin(int m, long long big_m,
                                                double n_s, double eta,
                                                double n_b, double* out) {
  if (!all_non_null({out})) return null_argument();
  return guarded([&] {
    *out = qtrange::classical_qtr_lower_bound_per_bin(
        qtrange::ScenarioParams::create(m, big_m, n_s, eta, n_b));
  });
}

qtr_error qtr_classical_ctr_lower_bound(int m, long long big_m, double n_s,
                                        double eta, double n_b, double* out) {
  if (!all_non_null({out})) return null_argument();
  return guarded([&] {
    *out = qtrange::classical_ctr_lower_bound(
        qtrange::ScenarioParams::create(m, big_m, n_s, eta, n_b));
  });
}

qtr_error qtr_cn_error_probability(double zeta1, double zeta2, int n_hyp,
                                   double* out) {
  if (!all_non_null({out})) return null_argument();
  return guarded([&] {
    *out = qtrange::cn_error_probability(
        qtrange::CNParams::create(zeta1, zeta2, n_hyp));
  });
}

qtr_error qtr_advantage_condition(int m, long long big_m, double gamma,
                                  double n_b, int* out) {
  if (!all_non_null({out})) return null_argument();
  return guarded([&] {
    *out = qtrange::advantage_condition(m, big_m, gamma, n_b) ? 1 : 0;
  });
}

/* ------------------------------------------------------------------ */
/* Scenario evaluation                                                 */

qtr_error qtr_compare_all(int m, long long big_m, double n_s, double eta,
                          double n_b, qtr_bounds_report* out) {
  if (!all_non_null({out})) return null_argument();
  return guarded([&] {
    const qtrange::BoundsReport r = qtrange::compare_all(
        qtrange::ScenarioParams::create(m, big_m, n_s, eta, n_b));
    fill_report(r, out);
  });
}

qtr_error qtr_build_range_bins(double r_min, double r_max, int m,
                               double* out) {
  if (!all_non_null({out})) return null_argument();
  return guarded([&] {
    const std::vector<qtrange::RangeBin> bins =
        qtrange::build_range_bins(qtrange::RangeGrid{r_min, r_max, m});
    for (size_t i = 0; i < bins.size(); ++i) {
      out[3 * i] = bins[i].r_lo;
      out[3 * i + 1] = bins[i].r_hi;
      out[3 * i + 2] = bins[i].round_trip_delay;
    }
  });
}

qtr_error qtr_energy_accounting(int m, long long big_m, double n_s,
                                double* quantum_total, double* classical_pulse,
                                double* max_target_exposure) {
  if (!all_non_null({quantum_total, classical_pulse, max_target_exposure})) {
    return null_argument();
  }
  return guarded([&] {
    const qtrange::EnergyBudget b = qtrange::energy_accounting(m, big_m, n_s);
    *quantum_total = b.quantum_total;
    *classical_pulse = b.classical_pulse;
    *max_target_exposure = b.max_target_exposure;
  });
}

qtr_error qtr_sweep(const int* m_values, int m_count,
                    const long long* big_m_values, int big_m_count,
                    const double* n_s_values, int n_s_count,
                    const double* eta_values, int eta_count,
                    const double* n_b_values, int n_b_count,
                    unsigned long long max_rows, qtr_sweep_result** out) {
  if (!all_non_null({out})) return null_argument();
  if ((m_count > 0 && m_values == nullptr) ||
      (big_m_count > 0 && big_m_values == nullptr) ||
      (n_s_count > 0 && n_s_values == nullptr) ||
      (eta_count > 0 && eta_values == nullptr) ||
      (n_b_count > 0 && n_b_values == nullptr)) {
    return null_argument();
  }
  return guarded([&] {
    if (m_count < 0 || big_m_count < 0 || n_s_count < 0 || eta_count < 0 ||
        n_b_count < 0) {
      throw qtrange::domain_error("grid counts must be non-negative");
    }
    qtrange::SweepSpec spec;
    spec.m.assign(m_values, m_values + m_count);
    spec.big_m.assign(big_m_values, big_m_values + big_m_count);
    spec.n_s.assign(n_s_values, n_s_values + n_s_count);
    spec.eta.assign(eta_values, eta_values + eta_count);
    spec.n_b.assign(n_b_values, n_b_values + n_b_count);
    if (max_rows > 0) spec.max_rows = max_rows;
    auto result = std::make_unique<qtr_sweep_result>();
    result->rows = qtrange::sweep(spec);
    *out = result.release();
  });
}

qtr_error qtr_sweep_row_count(const qtr_sweep_result* result,
                              unsigned long long* out) {
  if (!all_non_null({result, out})) return null_argument();
  return guarded([&] { *out = result->rows.size(); });
}

qtr_error qtr_sweep_row(const qtr_sweep_result* result,
                        unsigned long long index, qtr_bounds_report* out) {
  if (!all_non_null({result, out})) return null_argument();
  return guarded([&] {
    if (index >= result->rows.size()) {
      throw qtrange::domain_error(
          "row index " + std::to_string(index) + " out of range (" +
          std::to_string(result->rows.size()) + " rows)");
    }
    fill_report(result->rows[static_cast<size_t>(index)], out);
  });
}

void qtr_sweep_result_free(qtr_sweep_result* result) { delete result; }

/* ------------------------------------------------------------------ */
/* Monte Carlo simulation                                              */

qtr_error qtr_simulate_cn(double zeta1, double zeta2, int n_hyp,
                          unsigned long long trials,
                          unsigned long long master_seed, int threads,
                          qtr_cn_result* out) {
  if (!all_non_null({out})) return null_argument();
  return guarded([&] {
    qtrange::CNSimConfig config;
    config.cn = qtrange::CNParams::create(zeta1, zeta2, n_hyp);
    config.trials = trials;
    config.master_seed = master_seed;
    fill_cn_result(qtrange::simulate_cn(config, threads), out);
  });
}

qtr_error qtr_simulate_qtr_cn(int m, long long big_m, double n_s, double eta,
                              double n_b, unsigned long long trials,
                              unsigned long long master_seed, int threads,
                              double* zeta_out, qtr_cn_result* out) {
  if (!all_non_null({out})) return null_argument();
  return guarded([&] {
    const qtrange::QtrCNResult r = qtrange::simulate_qtr_cn(
        qtrange::ScenarioParams::create(m, big_m, n_s, eta, n_b), trials,
        master_seed, threads);
    if (zeta_out != nullptr) *zeta_out = r.zeta;
    fill_cn_result(r.sim, out);
  });
}

/* ------------------------------------------------------------------ */
/* Advantage region search                                             */

qtr_error qtr_advantage_region_search(const int* m_values, int m_count,
                                      const double* n_b_values, int n_b_count,
                                      const long long* big_m_values,
                                      int big_m_count,
                                      const double* gamma_values,
                                      int gamma_count,
                                      qtr_advantage_result** out) {
  if (!all_non_null({out})) return null_argument();
  if ((m_count > 0 && m_values == nullptr) ||
      (n_b_count > 0 && n_b_values == nullptr) ||
      (big_m_count > 0 && big_m_values == nullptr) ||
      (gamma_count > 0 && gamma_values == nullptr)) {
    return null_argument();
  }
  return guarded([&] {
    if (m_count < 0 || n_b_count < 0 || big_m_count < 0 || gamma_count < 0) {
      throw qtrange::domain_error("grid counts must be non-negative");
    }
    std::vector<int> m_grid(m_values, m_values + m_count);
    std::vector<double> n_b_grid(n_b_values, n_b_values + n_b_count);
    std::vector<long long> big_m_grid(big_m_values, big_m_values + big_m_count);
    std::vector<double> gamma_grid(gamma_values, gamma_values + gamma_count);
    auto result = std::make_unique<qtr_advantage_result>();
    result->impl =
        qtrange::advantage_region_search(m_grid, n_b_grid, big_m_grid,
                                         gamma_grid);
    *out = result.release();
  });
}

qtr_error qtr_advantage_points_checked(const qtr_advantage_result* result,
                                       unsigned long long* out) {
  if (!all_non_null({result, out})) return null_argument();
  return guarded([&] { *out = result->impl.points_checked; });
}

qtr_error qtr_advantage_hit_count(const qtr_advantage_result* result,
                                  unsigned long long* out) {
  if (!all_non_null({result, out})) return null_argument();
  return guarded([&] { *out = result->impl.hits.size(); });
}

qtr_error qtr_advantage_hit(const qtr_advantage_result* result,
                            unsigned long long index, int* m, double* n_b,
                            long long* big_m, double* gamma) {
  if (!all_non_null({result, m, n_b, big_m, gamma})) return null_argument();
  return guarded([&] {
    if (index >= result->impl.hits.size()) {
      throw qtrange::domain_error(
          "hit index " + std::to_string(index) + " out of range (" +
          std::to_string(result->impl.hits.size()) + " hits)");
    }
    const qtrange::AdvantageHit& hit =
        result->impl.hits[static_cast<size_t>(index)];
    *m = hit.m;
    *n_b = hit.n_b;
    *big_m = hit.big_m;
    *gamma = hit.gamma;
  });
}

qtr_error qtr_advantage_witness_verified(const qtr_advantage_result* result,
                                         int* out) {
  if (!all_non_null({result, out})) return null_argument();
  return guarded([&] { *out = result->impl.witness_verified ? 1 : 0; });
}

void qtr_advantage_result_free(qtr_advantage_result* result) { delete result; }

}  // extern "C"
