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

#ifndef QTRANGE_CORE_CN_SIM_HPP
#define QTRANGE_CORE_CN_SIM_HPP

#include <cstdint>

#include "bounds.hpp"
#include "rng.hpp"

namespace qtrange {

struct CNSimConfig {
  CNParams cn;
  unsigned long long trials = 1000000;
  uint64_t master_seed = 42;
};

struct CNSimResult {
  CNSimConfig config;
  unsigned long long error_count = 0;
  double error_rate = 0.0;
  double std_error = 0.0;   // binomial sqrt(p (1-p) / trials)
  double wilson_low = 0.0;  // two-sided 95% Wilson score interval
  double wilson_high = 0.0;
  double analytic = 0.0;  // closed-form error probability for config.cn
  // True when the simulation was skipped because the rates underflow and the
  // closed form was reported instead (zero variance).
  bool analytic_only = false;
};

struct TrialTrace {
  int target_bin = 0;
  bool false_alarm_before_target = false;
};

// One receiver pass. SCAN: test bins 1..N in order; the true target registers
// with certainty, a reference bin raises a false alarm with probability zeta1.
// On a false alarm the alarmed bin becomes the provisional guess and the
// remaining bins are CONFIRMed: reference bins confirm with certainty, the
// true target is missed with probability zeta2, which ends the trial in error.
// Returns true on error.
bool simulate_cn_trial(const CNParams& cn, int target_bin, SplitMix64& stream,
                       TrialTrace* trace = nullptr);

// Runs config.trials independent trials with the target bin drawn uniformly
// per trial. threads <= 0 picks the hardware concurrency; the result is a
// pure function of config, never of the thread count.
CNSimResult simulate_cn(const CNSimConfig& config, int threads = 0);

struct QtrCNResult {
  CNSimResult sim;
  double zeta = 0.0;  // common Type-I/II rate exp(-M eta n_s / n_b)
};

// Maps a ranging scenario onto the receiver (zeta1 = zeta2 =
// exp(-M eta n_s / n_b), N = m) and simulates it. When zeta underflows below
// 1e-300 the closed form is reported instead (sim.analytic_only = true).
QtrCNResult simulate_qtr_cn(const ScenarioParams& s, unsigned long long trials,
                            uint64_t master_seed, int threads = 0);

}  // namespace qtrange

#endif
