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

#ifndef QTRANGE_CORE_RNG_HPP
#define QTRANGE_CORE_RNG_HPP

#include <cstdint>

namespace qtrange {

// SplitMix64 finalizer; a bijective 64-bit mix.
inline uint64_t mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// SplitMix64 generator (Steele, Lea and Flood, 2014). Tiny state and cheap
// enough to reseed once per Monte Carlo trial.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix64(state_);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound) via Lemire's multiply-shift reduction.
  uint64_t next_below(uint64_t bound) {
    return static_cast<uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

 private:
  uint64_t state_;
};

// Counter-based per-trial stream: a pure function of (master_seed, index), so
// results cannot depend on how trials are scheduled across workers.
inline SplitMix64 substream(uint64_t master_seed, uint64_t index) {
  return SplitMix64(mix64(master_seed ^ mix64(index + 0x9E3779B97F4A7C15ull)));
}

}  // namespace qtrange

#endif
