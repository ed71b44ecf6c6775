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

#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "core/scenario.hpp"
#include "test_util.hpp"

using namespace qtrange;
using qtest::abs_err;
using qtest::rel_err;

TEST_CASE("range bins") {
  SUBCASE("uniform partition with shared endpoints") {
    const std::vector<RangeBin> bins =
        build_range_bins(RangeGrid{1000.0, 2000.0, 5});
    REQUIRE(bins.size() == 5);
    CHECK(bins.front().r_lo == 1000.0);
    CHECK(bins.back().r_hi == 2000.0);
    for (size_t i = 0; i + 1 < bins.size(); ++i) {
      CHECK(bins[i].r_hi == bins[i + 1].r_lo);
      CHECK(bins[i].round_trip_delay < bins[i + 1].round_trip_delay);
    }
    for (const RangeBin& b : bins) {
      CHECK(rel_err(b.r_hi - b.r_lo, 200.0) <= 1e-12);
    }
    CHECK(bins[0].index == 1);
    CHECK(bins[4].index == 5);
  }
  SUBCASE("delay uses the exact speed of light") {
    const std::vector<RangeBin> bins =
        build_range_bins(RangeGrid{1000.0, 2000.0, 5});
    // Middle bin midpoint is exactly 1500 m.
    CHECK(bins[2].round_trip_delay == 3000.0 / kSpeedOfLight);
    CHECK(rel_err(bins[2].round_trip_delay, 1.0006922855944561e-5) <= 1e-12);
  }
  SUBCASE("two-bin hand case") {
    const std::vector<RangeBin> bins =
        build_range_bins(RangeGrid{1000.0, 2000.0, 2});
    REQUIRE(bins.size() == 2);
    CHECK(bins[0].r_lo == 1000.0);
    CHECK(bins[0].r_hi == 1500.0);
    CHECK(bins[1].r_lo == 1500.0);
    CHECK(bins[1].r_hi == 2000.0);
  }
  SUBCASE("invalid grids rejected") {
    CHECK_THROWS_AS(build_range_bins(RangeGrid{1000.0, 2000.0, 1}),
                    domain_error);
    CHECK_THROWS_AS(build_range_bins(RangeGrid{0.0, 2000.0, 2}),
                    domain_error);
    CHECK_THROWS_AS(build_range_bins(RangeGrid{2000.0, 1000.0, 2}),
                    domain_error);
    CHECK_THROWS_AS(build_range_bins(RangeGrid{1000.0, 1000.0, 2}),
                    domain_error);
  }
}

TEST_CASE("energy accounting") {
  SUBCASE("degenerate single-bin budget") {
    const EnergyBudget b = energy_accounting(1, 10, 0.1);
    CHECK(rel_err(b.quantum_total, 1.0) <= 1e-15);
  }
  SUBCASE("hand value") {
    const EnergyBudget b = energy_accounting(10, 10000, 0.001);
    CHECK(rel_err(b.quantum_total, 100.0) <= 1e-15);
  }
  SUBCASE("fairness holds by construction") {
    for (const EnergyBudget& b :
         {energy_accounting(2, 1, 0.5), energy_accounting(64, 1000000, 0.01),
          energy_accounting(ScenarioParams::create(4, 25, 1.0, 0.5, 1.0))}) {
      CHECK(b.quantum_total == b.classical_pulse);
      CHECK(b.quantum_total == b.max_target_exposure);
    }
    CHECK(rel_err(energy_accounting(ScenarioParams::create(4, 25, 1.0, 0.5,
                                                           1.0))
                      .quantum_total,
                  100.0) <= 1e-15);
  }
  SUBCASE("invalid inputs rejected") {
    CHECK_THROWS_AS(energy_accounting(0, 10, 0.1), domain_error);
    CHECK_THROWS_AS(energy_accounting(2, 0, 0.1), domain_error);
    CHECK_THROWS_AS(energy_accounting(2, 10, -0.1), domain_error);
  }
}

TEST_CASE("full scenario comparison") {
  SUBCASE("noisy three-bin scenario shows no advantage") {
    const BoundsReport r =
        compare_all(ScenarioParams::create(3, 100000, 0.01, 0.01, 2.0));
    CHECK_FALSE(r.advantage_possible);
    CHECK(r.gamma == doctest::Approx(0.01 * 0.01 / 2.0).epsilon(1e-15));
    CHECK(r.classical_cpf_lb > 0.0);
    CHECK(r.quantum_ub_exact > 0.0);
    CHECK(r.cn_qtr_asym > r.classical_ctr_lb);
  }
  SUBCASE("zero transmissivity is vacuous and shows no advantage") {
    const BoundsReport r =
        compare_all(ScenarioParams::create(4, 100, 0.05, 0.0, 1.0));
    CHECK_FALSE(r.advantage_possible);
    // The probe and background channel outputs coincide, so the single-copy
    // fidelity is exactly 1 and the quantum bound collapses to m - 1.
    CHECK(r.quantum_ub_exact == 3.0);
    CHECK(r.quantum_ub_asym == 3.0);
    CHECK(r.cn_qtr_asym == 1.5);
    CHECK(r.vacuous);
  }
  SUBCASE("advantage flag agrees with the direct bound comparison") {
    const ScenarioParams s = ScenarioParams::create(2, 100000, 0.01, 0.1, 0.1);
    const BoundsReport r = compare_all(s);
    const bool direct = qtr_cn_asymptotic(s) <= classical_ctr_lower_bound(s);
    CHECK(r.advantage_possible == direct);
    CHECK(r.advantage_possible);

    // Same agreement where both bounds are plainly representable.
    const ScenarioParams small = ScenarioParams::create(2, 100, 0.01, 0.1, 0.1);
    const BoundsReport rs = compare_all(small);
    CHECK(rs.cn_qtr_asym > 0.0);
    CHECK(rs.classical_ctr_lb > 0.0);
    CHECK(rs.advantage_possible ==
          (qtr_cn_asymptotic(small) <= classical_ctr_lower_bound(small)));
    CHECK(rs.advantage_possible);
  }
  SUBCASE("underflowed bounds cannot fake an advantage") {
    // Both exponentials underflow to zero here; a naive value comparison
    // would call that an advantage, the log-domain flag must not.
    const ScenarioParams s = ScenarioParams::create(64, 100000, 20.0, 0.5, 10.0);
    const BoundsReport r = compare_all(s);
    CHECK(r.cn_qtr_asym == 0.0);
    CHECK(r.classical_ctr_lb == 0.0);
    CHECK_FALSE(r.advantage_possible);
  }
  SUBCASE("requires background noise") {
    CHECK_THROWS_AS(compare_all(ScenarioParams::create(3, 10, 0.1, 0.5, 0.0)),
                    domain_error);
  }
  SUBCASE("exact quantum bound hugs its asymptote in the dilute regime") {
    const BoundsReport r =
        compare_all(ScenarioParams::create(4, 10000000, 0.001, 0.01, 20.0));
    CHECK(r.quantum_ub_exact >= r.quantum_ub_asym);
    CHECK(r.quantum_ub_exact <= 1.1 * r.quantum_ub_asym);
  }
  SUBCASE("pure function") {
    const ScenarioParams s = ScenarioParams::create(5, 333, 0.02, 0.3, 1.5);
    const BoundsReport a = compare_all(s);
    const BoundsReport b = compare_all(s);
    CHECK(a.classical_cpf_lb == b.classical_cpf_lb);
    CHECK(a.quantum_ub_exact == b.quantum_ub_exact);
    CHECK(a.quantum_ub_asym == b.quantum_ub_asym);
    CHECK(a.cn_qtr_asym == b.cn_qtr_asym);
    CHECK(a.classical_ctr_lb == b.classical_ctr_lb);
  }
}

TEST_CASE("parameter sweep") {
  SUBCASE("single point equals the direct evaluation") {
    SweepSpec spec;
    spec.m = {3};
    spec.big_m = {100000};
    spec.n_s = {0.01};
    spec.eta = {0.01};
    spec.n_b = {2.0};
    const std::vector<BoundsReport> rows = sweep(spec);
    REQUIRE(rows.size() == 1);
    const BoundsReport direct =
        compare_all(ScenarioParams::create(3, 100000, 0.01, 0.01, 2.0));
    CHECK(rows[0].classical_cpf_lb == direct.classical_cpf_lb);
    CHECK(rows[0].quantum_ub_exact == direct.quantum_ub_exact);
    CHECK(rows[0].quantum_ub_asym == direct.quantum_ub_asym);
    CHECK(rows[0].cn_qtr_asym == direct.cn_qtr_asym);
    CHECK(rows[0].classical_ctr_lb == direct.classical_ctr_lb);
    CHECK(rows[0].advantage_possible == direct.advantage_possible);
    CHECK(rows[0].vacuous == direct.vacuous);
  }
  SUBCASE("rows follow lexicographic grid order") {
    SweepSpec spec;
    spec.m = {2, 3, 4};
    spec.big_m = {10};
    spec.n_s = {0.01};
    spec.eta = {0.1};
    spec.n_b = {0.5, 1.0, 2.0};
    const std::vector<BoundsReport> rows = sweep(spec);
    REQUIRE(rows.size() == 9);
    int k = 0;
    for (int m : {2, 3, 4}) {
      for (double n_b : {0.5, 1.0, 2.0}) {
        CHECK(rows[k].inputs.m == m);
        CHECK(rows[k].inputs.n_b == n_b);
        ++k;
      }
    }
  }
  SUBCASE("noisy many-bin region never shows an advantage") {
    SweepSpec spec;
    for (int m = 3; m <= 10; ++m) spec.m.push_back(m);
    spec.big_m = {100};
    spec.n_s = {0.01, 0.5};
    spec.eta = {0.1, 0.9};
    spec.n_b = {1.5, 2.0, 5.0, 10.0};
    const std::vector<BoundsReport> rows = sweep(spec);
    REQUIRE(rows.size() == 8ull * 2 * 2 * 4);
    for (const BoundsReport& r : rows) {
      CHECK_FALSE(r.advantage_possible);
    }
  }
  SUBCASE("row cap enforced with the size in the message") {
    SweepSpec spec;
    spec.m = {2, 3, 4};
    spec.big_m = {1, 2};
    spec.n_s = {0.01, 0.02};
    spec.eta = {0.1};
    spec.n_b = {1.0};
    spec.max_rows = 10;
    try {
      sweep(spec);
      FAIL("expected limit_error");
    } catch (const limit_error& e) {
      const std::string message = e.what();
      CHECK(message.find("12") != std::string::npos);
      CHECK(message.find("10") != std::string::npos);
    }
  }
  SUBCASE("empty grids rejected") {
    SweepSpec spec;
    spec.m = {};
    spec.big_m = {1};
    spec.n_s = {0.01};
    spec.eta = {0.1};
    spec.n_b = {1.0};
    CHECK_THROWS_AS(sweep(spec), domain_error);
  }
}
