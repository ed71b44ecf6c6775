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

#include "bounds.hpp"

#include <algorithm>
#include <climits>
#include <cmath>

namespace qtrange {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw domain_error(msg);
}

bool finite(double x) { return std::isfinite(x); }

double sq(double x) { return x * x; }

}  // namespace

ScenarioParams ScenarioParams::create(int m, long long big_m, double n_s,
                                      double eta, double n_b) {
  require(m >= 2, "m must be >= 2");
  require(big_m >= 1, "big_m must be >= 1");
  require(finite(n_s) && n_s >= 0.0, "n_s must be finite and >= 0");
  require(finite(eta) && eta >= 0.0 && eta <= 1.0, "eta must lie in [0, 1]");
  require(finite(n_b) && n_b >= 0.0, "n_b must be finite and >= 0");
  return ScenarioParams{m, big_m, n_s, eta, n_b};
}

double ScenarioParams::gamma() const {
  require(n_b > 0.0, "gamma requires n_b > 0");
  return eta * n_s / n_b;
}

CNParams CNParams::create(double zeta1, double zeta2, int n_hyp) {
  require(finite(zeta1) && zeta1 >= 0.0 && zeta1 <= 1.0,
          "zeta1 must lie in [0, 1]");
  require(finite(zeta2) && zeta2 >= 0.0 && zeta2 <= 1.0,
          "zeta2 must lie in [0, 1]");
  require(n_hyp >= 2, "n_hyp must be >= 2");
  return CNParams{zeta1, zeta2, n_hyp};
}

double classical_cpf_lower_bound(int m, long long big_m, double n_s,
                                 double mu_b, double mu_t, double e_b,
                                 double e_t) {
  require(m >= 2, "m must be >= 2");
  require(big_m >= 1, "big_m must be >= 1");
  require(finite(n_s) && n_s >= 0.0, "n_s must be finite and >= 0");
  require(finite(mu_b) && mu_b >= 0.0 && mu_b <= 1.0,
          "mu_b must lie in [0, 1]");
  require(finite(mu_t) && mu_t >= 0.0 && mu_t <= 1.0,
          "mu_t must lie in [0, 1]");
  require(finite(e_b) && e_b >= 0.0, "e_b must be finite and >= 0");
  require(finite(e_t) && e_t >= 0.0, "e_t must be finite and >= 0");
  const double md = static_cast<double>(big_m);
  const double c =
      1.0 / (1.0 + sq(std::sqrt(e_b * (1.0 + e_t)) -
                      std::sqrt(e_t * (1.0 + e_b))));
  // c^(2M) evaluated through the exponent so huge M cannot underflow in
  // stages; c <= 1 always, so log(c) <= 0.
  const double exponent =
      2.0 * md * std::log(c) -
      2.0 * md * n_s * sq(std::sqrt(mu_b) - std::sqrt(mu_t)) /
          (1.0 + e_b + e_t);
  const double prefactor =
      (static_cast<double>(m) - 1.0) / (2.0 * static_cast<double>(m));
  return prefactor * std::exp(exponent);
}

double quantum_cpf_upper_bound_exact(int m, long long big_m,
                                     double single_copy_fidelity) {
  require(m >= 2, "m must be >= 2");
  require(big_m >= 1, "big_m must be >= 1");
  require(finite(single_copy_fidelity) && single_copy_fidelity >= 0.0 &&
              single_copy_fidelity <= 1.0,
          "single_copy_fidelity must lie in [0, 1]");
  if (single_copy_fidelity == 0.0) return 0.0;
  const double exponent =
      2.0 * static_cast<double>(big_m) * std::log(single_copy_fidelity);
  return (static_cast<double>(m) - 1.0) * std::exp(exponent);
}

double qtr_quantum_ub_asymptotic(const ScenarioParams& s) {
  const ScenarioParams p =
      ScenarioParams::create(s.m, s.big_m, s.n_s, s.eta, s.n_b);
  const double exponent =
      -static_cast<double>(p.big_m) * p.eta * p.n_s / (p.n_b + 1.0);
  return (static_cast<double>(p.m) - 1.0) * std::exp(exponent);
}

double cn_error_probability(const CNParams& p) {
  const CNParams v = CNParams::create(p.zeta1, p.zeta2, p.n_hyp);
  // Continuous limit at zeta1 = 0; zeta2 = 0 means the confirm step never
  // fails, so no error path exists.
  if (v.zeta1 == 0.0 || v.zeta2 == 0.0) return 0.0;
  const double n = static_cast<double>(v.n_hyp);
  const double a = n * v.zeta1;
  // (N zeta1 + (1 - zeta1)^N - 1) evaluated as a + expm1(N log1p(-zeta1)),
  // which stays accurate when zeta1 is tiny and degrades gracefully to
  // (N - 1)/N at zeta1 = 1 (log1p(-1) = -inf).
  const double value = v.zeta2 * (a + std::expm1(n * std::log1p(-v.zeta1))) / a;
  return std::clamp(value, 0.0, 1.0);
}

double qtr_cn_asymptotic(const ScenarioParams& s) {
  const ScenarioParams p =
      ScenarioParams::create(s.m, s.big_m, s.n_s, s.eta, s.n_b);
  require(p.n_b > 0.0, "qtr_cn_asymptotic requires n_b > 0");
  const double exponent =
      -2.0 * static_cast<double>(p.big_m) * p.eta * p.n_s / p.n_b;
  return (static_cast<double>(p.m) - 1.0) / 2.0 * std::exp(exponent);
}

double classical_qtr_lower_bound_per_bin(const ScenarioParams& s) {
  const ScenarioParams p =
      ScenarioParams::create(s.m, s.big_m, s.n_s, s.eta, s.n_b);
  // The ranging channels are mu_t = eta against mu_b = 0 with a common
  // environment noise n_b, where the general bound's c factor is exactly 1.
  return classical_cpf_lower_bound(p.m, p.big_m, p.n_s, 0.0, p.eta, p.n_b,
                                   p.n_b);
}

double classical_ctr_lower_bound(const ScenarioParams& s) {
  const ScenarioParams p =
      ScenarioParams::create(s.m, s.big_m, s.n_s, s.eta, s.n_b);
  require(p.big_m <= LLONG_MAX / p.m, "m * big_m overflows");
  ScenarioParams one_shot = p;
  one_shot.big_m = p.big_m * p.m;
  return classical_qtr_lower_bound_per_bin(one_shot);
}

bool advantage_condition(int m, long long big_m, double gamma, double n_b) {
  require(m >= 2, "m must be >= 2");
  require(big_m >= 1, "big_m must be >= 1");
  require(finite(gamma) && gamma > 0.0, "gamma must be finite and > 0");
  require(finite(n_b) && n_b > 0.0, "n_b must be finite and > 0");
  const double rhs = 2.0 * static_cast<double>(big_m) * gamma *
                     (n_b * (2.0 - static_cast<double>(m)) + 1.0) /
                     (2.0 * n_b + 1.0);
  return std::log(static_cast<double>(m)) <= rhs;
}

AdvantageSearchResult advantage_region_search(
    const std::vector<int>& m_values, const std::vector<double>& n_b_values,
    const std::vector<long long>& big_m_values,
    const std::vector<double>& gamma_values) {
  require(!m_values.empty() && !n_b_values.empty() && !big_m_values.empty() &&
              !gamma_values.empty(),
          "all four grids must be non-empty");
  AdvantageSearchResult out;
  for (int m : m_values) {
    for (double n_b : n_b_values) {
      for (long long big_m : big_m_values) {
        for (double gamma : gamma_values) {
          const bool satisfied = advantage_condition(m, big_m, gamma, n_b);
          ++out.points_checked;
          if (satisfied) out.hits.push_back({m, n_b, big_m, gamma});
          if (m > 2 && n_b > 1.0 / (static_cast<double>(m) - 2.0)) {
            const bool witness =
                n_b * (2.0 - static_cast<double>(m)) + 1.0 < 0.0;
            if (!witness || satisfied) out.witness_verified = false;
          }
        }
      }
    }
  }
  return out;
}

}  // namespace qtrange
