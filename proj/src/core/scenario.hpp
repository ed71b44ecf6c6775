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

#ifndef QTRANGE_CORE_SCENARIO_HPP
#define QTRANGE_CORE_SCENARIO_HPP

#include <vector>

#include "bounds.hpp"

namespace qtrange {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s, SI exact value

struct RangeGrid {
  double r_min = 0.0;  // meters, > 0
  double r_max = 0.0;  // meters, > r_min
  int m = 2;           // number of shells, >= 2
};

struct RangeBin {
  int index = 0;  // 1-based, increasing with range
  double r_lo = 0.0;
  double r_hi = 0.0;
  double round_trip_delay = 0.0;  // seconds, 2 * bin midpoint / c
};

// Uniform partition of [r_min, r_max] into m contiguous shells.
std::vector<RangeBin> build_range_bins(const RangeGrid& g);

// Equal-energy accounting for the quantum and classical strategies.
struct EnergyBudget {
  double quantum_total = 0.0;        // m * M * n_s photons across all bins
  double classical_pulse = 0.0;      // the same energy emitted as one pulse
  double max_target_exposure = 0.0;  // photons reaching the target, at most
};

// m >= 1 here: the m = 1 degenerate case is meaningful for accounting even
// though scenarios require m >= 2.
EnergyBudget energy_accounting(int m, long long big_m, double n_s);
EnergyBudget energy_accounting(const ScenarioParams& s);

// Every bound for one scenario. Values are reported raw; a bound above 1
// carries no information and flips `vacuous` on.
struct BoundsReport {
  ScenarioParams inputs;
  double gamma = 0.0;
  double classical_cpf_lb = 0.0;
  double quantum_ub_exact = 0.0;
  double quantum_ub_asym = 0.0;
  double cn_qtr_asym = 0.0;
  double classical_ctr_lb = 0.0;
  bool advantage_possible = false;
  bool vacuous = false;
};

// Evaluates all bounds for the scenario; the single-copy fidelity feeding
// quantum_ub_exact is computed from the Gaussian channel outputs. Requires
// n_b > 0.
BoundsReport compare_all(const ScenarioParams& s);

struct SweepSpec {
  std::vector<int> m;
  std::vector<long long> big_m;
  std::vector<double> n_s;
  std::vector<double> eta;
  std::vector<double> n_b;
  unsigned long long max_rows = 1000000;
};

// Cartesian product of the five grids, evaluated row by row in lexicographic
// order (m outermost, then big_m, n_s, eta, n_b). Throws limit_error naming
// the grid size when it exceeds spec.max_rows.
std::vector<BoundsReport> sweep(const SweepSpec& spec);

}  // namespace qtrange

#endif
