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

#include "scenario.hpp"

#include <cmath>
#include <sstream>

#include "gaussian.hpp"

namespace qtrange {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw domain_error(msg);
}

}  // namespace

std::vector<RangeBin> build_range_bins(const RangeGrid& g) {
  require(std::isfinite(g.r_min) && g.r_min > 0.0, "r_min must be > 0");
  require(std::isfinite(g.r_max) && g.r_max > g.r_min,
          "r_max must be > r_min");
  require(g.m >= 2, "m must be >= 2");
  std::vector<RangeBin> bins;
  bins.reserve(g.m);
  const double width = (g.r_max - g.r_min) / static_cast<double>(g.m);
  for (int i = 0; i < g.m; ++i) {
    RangeBin bin;
    bin.index = i + 1;
    // Shared endpoints computed identically for adjacent bins.
    bin.r_lo = i == 0 ? g.r_min : g.r_min + width * i;
    bin.r_hi = i == g.m - 1 ? g.r_max : g.r_min + width * (i + 1);
    bin.round_trip_delay = 2.0 * ((bin.r_lo + bin.r_hi) / 2.0) / kSpeedOfLight;
    bins.push_back(bin);
  }
  return bins;
}

EnergyBudget energy_accounting(int m, long long big_m, double n_s) {
  require(m >= 1, "m must be >= 1");
  require(big_m >= 1, "big_m must be >= 1");
  require(std::isfinite(n_s) && n_s >= 0.0, "n_s must be finite and >= 0");
  const double total = static_cast<double>(m) *
                       static_cast<double>(big_m) * n_s;
  // The classical benchmark spends the identical energy in a single pulse;
  // either way the target sees at most the full budget.
  return EnergyBudget{total, total, total};
}

EnergyBudget energy_accounting(const ScenarioParams& s) {
  return energy_accounting(s.m, s.big_m, s.n_s);
}

BoundsReport compare_all(const ScenarioParams& s) {
  const ScenarioParams p =
      ScenarioParams::create(s.m, s.big_m, s.n_s, s.eta, s.n_b);
  require(p.n_b > 0.0, "compare_all requires n_b > 0");
  const double fidelity =
      gaussian_fidelity(target_output_state(p.eta, p.n_b, p.n_s),
                        background_output_state(p.n_b, p.n_s));
  BoundsReport r;
  r.inputs = p;
  r.gamma = p.gamma();
  r.classical_cpf_lb = classical_qtr_lower_bound_per_bin(p);
  r.quantum_ub_exact = quantum_cpf_upper_bound_exact(p.m, p.big_m, fidelity);
  r.quantum_ub_asym = qtr_quantum_ub_asymptotic(p);
  r.cn_qtr_asym = qtr_cn_asymptotic(p);
  r.classical_ctr_lb = classical_ctr_lower_bound(p);
  // The sufficient condition for a quantum ranging advantage: the receiver's
  // asymptotic error does not exceed the classical one-pulse lower bound.
  // Compared in the log domain, where it reduces to
  // ln m <= 2 M gamma (n_b (2 - m) + 1) / (2 n_b + 1); comparing the bound
  // values directly would report a spurious advantage whenever both
  // exponentials underflow to zero.
  r.advantage_possible =
      std::log(static_cast<double>(p.m)) <=
      2.0 * static_cast<double>(p.big_m) * r.gamma *
          (p.n_b * (2.0 - p.m) + 1.0) / (2.0 * p.n_b + 1.0);
  r.vacuous = r.classical_cpf_lb > 1.0 || r.quantum_ub_exact > 1.0 ||
              r.quantum_ub_asym > 1.0 || r.cn_qtr_asym > 1.0 ||
              r.classical_ctr_lb > 1.0;
  return r;
}

std::vector<BoundsReport> sweep(const SweepSpec& spec) {
  require(!spec.m.empty() && !spec.big_m.empty() && !spec.n_s.empty() &&
              !spec.eta.empty() && !spec.n_b.empty(),
          "all five grids must be non-empty");
  // An 80-bit long double holds any grid size that fits 64 bits exactly and
  // still orders correctly against the cap beyond that.
  long double rows = 1.0L;
  for (const size_t n : {spec.m.size(), spec.big_m.size(), spec.n_s.size(),
                         spec.eta.size(), spec.n_b.size()}) {
    rows *= static_cast<long double>(n);
  }
  if (rows > static_cast<long double>(spec.max_rows)) {
    std::ostringstream msg;
    msg << "sweep grid has ";
    if (rows <= 1.8e19L) {
      msg << static_cast<unsigned long long>(rows);
    } else {
      msg << static_cast<double>(rows);
    }
    msg << " rows, above the cap of " << spec.max_rows;
    throw limit_error(msg.str());
  }
  std::vector<BoundsReport> out;
  out.reserve(static_cast<size_t>(rows));
  for (int m : spec.m) {
    for (long long big_m : spec.big_m) {
      for (double n_s : spec.n_s) {
        for (double eta : spec.eta) {
          for (double n_b : spec.n_b) {
            out.push_back(
                compare_all(ScenarioParams::create(m, big_m, n_s, eta, n_b)));
          }
        }
      }
    }
  }
  return out;
}

}  // namespace qtrange
