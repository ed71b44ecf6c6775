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

#include "cn_sim.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

namespace qtrange {

namespace {

constexpr double kWilsonZ = 1.959963984540054;  // two-sided 95% normal quantile
constexpr int kMaxWorkers = 256;
constexpr double kZetaUnderflow = 1e-300;

}  // namespace

bool simulate_cn_trial(const CNParams& cn, int target_bin, SplitMix64& stream,
                       TrialTrace* trace) {
  if (target_bin < 1 || target_bin > cn.n_hyp) {
    throw domain_error("target_bin must lie in [1, n_hyp]");
  }
  if (trace) {
    trace->target_bin = target_bin;
    trace->false_alarm_before_target = false;
  }
  for (int bin = 1; bin <= cn.n_hyp; ++bin) {
    if (bin == target_bin) return false;  // target test registers with certainty
    if (stream.next_double() < cn.zeta1) {
      // False alarm: `bin` becomes the provisional guess. Confirmation of the
      // remaining bins consumes randomness only at the true target, which is
      // missed (error, guess retained) with probability zeta2 and otherwise
      // reveals itself.
      if (trace) trace->false_alarm_before_target = true;
      return stream.next_double() < cn.zeta2;
    }
  }
  return false;  // unreachable: the scan always meets target_bin
}

CNSimResult simulate_cn(const CNSimConfig& config, int threads) {
  const CNParams cn =
      CNParams::create(config.cn.zeta1, config.cn.zeta2, config.cn.n_hyp);
  if (config.trials < 1) throw domain_error("trials must be >= 1");
  const unsigned long long trials = config.trials;

  unsigned long long workers = threads > 0
      ? static_cast<unsigned long long>(threads)
      : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min({workers, trials,
                      static_cast<unsigned long long>(kMaxWorkers)});

  const auto run_range = [&cn, &config](unsigned long long lo,
                                        unsigned long long hi) {
    unsigned long long errors = 0;
    for (unsigned long long i = lo; i < hi; ++i) {
      SplitMix64 stream = substream(config.master_seed, i);
      const int target =
          1 + static_cast<int>(stream.next_below(
                  static_cast<uint64_t>(cn.n_hyp)));
      errors += simulate_cn_trial(cn, target, stream) ? 1u : 0u;
    }
    return errors;
  };

  unsigned long long error_count = 0;
  if (workers <= 1) {
    error_count = run_range(0, trials);
  } else {
    std::vector<unsigned long long> counts(workers, 0);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const unsigned long long chunk = trials / workers;
    const unsigned long long rem = trials % workers;
    unsigned long long lo = 0;
    for (unsigned long long w = 0; w < workers; ++w) {
      const unsigned long long hi = lo + chunk + (w < rem ? 1 : 0);
      pool.emplace_back(
          [&counts, &run_range, w, lo, hi] { counts[w] = run_range(lo, hi); });
      lo = hi;
    }
    for (auto& t : pool) t.join();
    for (unsigned long long c : counts) error_count += c;
  }

  CNSimResult result;
  result.config = {cn, trials, config.master_seed};
  result.error_count = error_count;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(error_count) / n;
  result.error_rate = p;
  result.std_error = std::sqrt(p * (1.0 - p) / n);
  const double z2 = kWilsonZ * kWilsonZ;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      kWilsonZ * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  result.wilson_low = std::max(center - half, 0.0);
  result.wilson_high = std::min(center + half, 1.0);
  result.analytic = cn_error_probability(cn);
  return result;
}

QtrCNResult simulate_qtr_cn(const ScenarioParams& s, unsigned long long trials,
                            uint64_t master_seed, int threads) {
  const ScenarioParams p =
      ScenarioParams::create(s.m, s.big_m, s.n_s, s.eta, s.n_b);
  if (!(p.n_b > 0.0)) throw domain_error("simulate_qtr_cn requires n_b > 0");
  if (trials < 1) throw domain_error("trials must be >= 1");
  const double exponent =
      static_cast<double>(p.big_m) * p.eta * p.n_s / p.n_b;
  const double zeta = std::exp(-exponent);
  QtrCNResult out;
  out.zeta = zeta;
  const CNSimConfig config{CNParams::create(zeta, zeta, p.m), trials,
                           master_seed};
  if (zeta < kZetaUnderflow) {
    // No simulation can resolve rates this small; report the closed form
    // with zero variance.
    CNSimResult r;
    r.config = config;
    r.analytic = cn_error_probability(config.cn);
    r.error_rate = r.analytic;
    r.error_count = static_cast<unsigned long long>(
        std::llround(r.analytic * static_cast<double>(trials)));
    r.std_error = 0.0;
    r.wilson_low = r.wilson_high = r.analytic;
    r.analytic_only = true;
    out.sim = r;
    return out;
  }
  out.sim = simulate_cn(config, threads);
  return out;
}

}  // namespace qtrange
