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

#ifndef QTRANGE_CORE_BOUNDS_HPP
#define QTRANGE_CORE_BOUNDS_HPP

#include <vector>

#include "errors.hpp"

namespace qtrange {

// Full parameter tuple of one ranging scenario: m range bins (hypotheses),
// big_m probe modes per bin, n_s mean signal photons per mode, round-trip
// transmissivity eta, n_b background photons per mode at the receiver.
struct ScenarioParams {
  int m = 2;
  long long big_m = 1;
  double n_s = 0.0;
  double eta = 0.0;
  double n_b = 0.0;

  // Validates m >= 2, big_m >= 1, n_s >= 0, eta in [0, 1], n_b >= 0.
  static ScenarioParams create(int m, long long big_m, double n_s, double eta,
                               double n_b);

  // Single-use signal-to-noise ratio eta * n_s / n_b; requires n_b > 0.
  double gamma() const;
};

// Type-I (false alarm) and Type-II (miss) rates of the two detection POVMs,
// plus the hypothesis count.
struct CNParams {
  double zeta1 = 0.0;
  double zeta2 = 0.0;
  int n_hyp = 2;

  // Validates zeta1, zeta2 in [0, 1] and n_hyp >= 2.
  static CNParams create(double zeta1, double zeta2, int n_hyp);
};

// Lower bound on the error probability of any classical-source strategy for
// finding one transmissivity-mu_t channel among m-1 mu_b channels, with
// per-channel environment noises e_t and e_b and n_s probe photons per mode:
// ((m-1)/(2m)) * c^(2M) * exp(-2 M n_s (sqrt(mu_b) - sqrt(mu_t))^2/(1+e_b+e_t))
// with c = 1 / (1 + (sqrt(e_b (1+e_t)) - sqrt(e_t (1+e_b)))^2).
double classical_cpf_lower_bound(int m, long long big_m, double n_s,
                                 double mu_b, double mu_t, double e_b,
                                 double e_t);

// Fidelity-based upper bound on the optimal discrimination error:
// (m-1) * f^(2M), where f is the single-copy fidelity between the target and
// background channel outputs. Reported raw (can exceed 1).
double quantum_cpf_upper_bound_exact(int m, long long big_m,
                                     double single_copy_fidelity);

// Large-M asymptote of the quantum upper bound for the entangled probe:
// (m-1) * exp(-M eta n_s / (n_b + 1)).
double qtr_quantum_ub_asymptotic(const ScenarioParams& s);

// Mean error probability of the scan-and-confirm receiver:
// (1/N)(zeta2/zeta1)(N zeta1 + (1-zeta1)^N - 1), continued to 0 at zeta1 = 0.
double cn_error_probability(const CNParams& p);

// Asymptotic error of the conditional-nulling receiver driven by the
// entangled probe: ((m-1)/2) * exp(-2 M eta n_s / n_b). Requires n_b > 0.
double qtr_cn_asymptotic(const ScenarioParams& s);

// Classical ranging lower bound with M modes interrogating each bin:
// ((m-1)/(2m)) * exp(-2 M eta n_s / (2 n_b + 1)).
double classical_qtr_lower_bound_per_bin(const ScenarioParams& s);

// Classical ranging lower bound when the whole energy budget m*M*n_s probes
// every bin at once; equals the per-bin bound with M -> m*M exactly.
double classical_ctr_lower_bound(const ScenarioParams& s);

// True iff ln m <= 2 M gamma (n_b (2 - m) + 1) / (2 n_b + 1), the sufficient
// condition for a quantum ranging advantage at SNR gamma = eta n_s / n_b.
bool advantage_condition(int m, long long big_m, double gamma, double n_b);

struct AdvantageHit {
  int m = 0;
  double n_b = 0.0;
  long long big_m = 0;
  double gamma = 0.0;
};

struct AdvantageSearchResult {
  // Grid points satisfying the advantage condition, in grid order
  // (m outermost, then n_b, big_m, gamma).
  std::vector<AdvantageHit> hits;
  unsigned long long points_checked = 0;
  // True when every grid point with m > 2 and n_b > 1/(m-2) both has
  // n_b (2 - m) + 1 < 0 and fails the advantage condition: the analytic
  // witness for why no hit can exist there.
  bool witness_verified = true;
};

// Enumerates the Cartesian grid and collects every satisfying tuple; grids
// must be non-empty and within the domains of advantage_condition.
AdvantageSearchResult advantage_region_search(
    const std::vector<int>& m_values, const std::vector<double>& n_b_values,
    const std::vector<long long>& big_m_values,
    const std::vector<double>& gamma_values);

}  // namespace qtrange

#endif
