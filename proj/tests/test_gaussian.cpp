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

#include <Eigen/Dense>
#include <cmath>

#include "core/gaussian.hpp"
#include "test_util.hpp"

using namespace qtrange;
using qtest::abs_err;
using qtest::rel_err;

namespace {

Eigen::Matrix2d rotation(double theta) {
  Eigen::Matrix2d r;
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

// Single-mode covariance nu * R(theta) diag(e^{2r}, e^{-2r}) R(theta)^T.
Eigen::MatrixXd rotated_squeezed_cov(double theta, double r, double nu) {
  const Eigen::Matrix2d rot = rotation(theta);
  Eigen::Matrix2d core = Eigen::Matrix2d::Zero();
  core(0, 0) = nu * std::exp(2.0 * r);
  core(1, 1) = nu * std::exp(-2.0 * r);
  return rot * core * rot.transpose();
}

}  // namespace

TEST_CASE("tmsv covariance structure") {
  SUBCASE("zero photons is the vacuum") {
    const GaussianState v = tmsv_state(0.0);
    CHECK((v.covariance() - Eigen::MatrixXd::Identity(4, 4))
              .cwiseAbs()
              .maxCoeff() == 0.0);
  }
  SUBCASE("one photon per mode") {
    const GaussianState s = tmsv_state(1.0);
    CHECK(s.covariance()(0, 0) == 3.0);
    CHECK(s.covariance()(1, 1) == 3.0);
    CHECK(s.covariance()(2, 2) == 3.0);
    CHECK(rel_err(s.covariance()(0, 2), std::sqrt(8.0)) <= 1e-15);
    CHECK(rel_err(s.covariance()(1, 3), -std::sqrt(8.0)) <= 1e-15);
    CHECK(s.covariance()(0, 3) == 0.0);
    CHECK(s.covariance()(1, 2) == 0.0);
  }
  SUBCASE("purity for a range of photon numbers") {
    for (double n_s : {0.1, 1.0, 5.0}) {
      const GaussianState s = tmsv_state(n_s);
      CHECK(rel_err(s.covariance().determinant(), 1.0) <= 1e-9);
      const std::vector<double> nu = s.symplectic_eigenvalues();
      REQUIRE(nu.size() == 2);
      CHECK(abs_err(nu[0], 1.0) <= 1e-9);
      CHECK(abs_err(nu[1], 1.0) <= 1e-9);
      CHECK(s.is_pure());
    }
  }
  SUBCASE("negative photon number rejected") {
    CHECK_THROWS_AS(tmsv_state(-0.1), domain_error);
  }
}

TEST_CASE("thermal loss channel") {
  SUBCASE("unit transmissivity is the identity") {
    const GaussianState s = tmsv_state(0.7);
    const GaussianState out =
        apply_thermal_loss(s, ThermalLossChannel{1.0, 3.0}, 0);
    CHECK((out.covariance() - s.covariance()).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("zero transmissivity replaces the mode with its environment") {
    const double n_b = 1.25;
    const double n_s = 0.3;
    const GaussianState out =
        apply_thermal_loss(tmsv_state(n_s), ThermalLossChannel{0.0, n_b}, 0);
    const GaussianState expected = background_output_state(n_b, n_s);
    CHECK((out.covariance() - expected.covariance()).cwiseAbs().maxCoeff() ==
          0.0);
  }
  SUBCASE("composition multiplies transmissivities") {
    const ThermalLossChannel first{0.7, 0.4};
    const ThermalLossChannel second{0.55, 0.4};
    const ThermalLossChannel fused{0.7 * 0.55, 0.4};
    const GaussianState s = tmsv_state(0.9);
    const GaussianState chained =
        apply_thermal_loss(apply_thermal_loss(s, first, 0), second, 0);
    const GaussianState direct = apply_thermal_loss(s, fused, 0);
    CHECK((chained.covariance() - direct.covariance()).cwiseAbs().maxCoeff() <=
          1e-12);
  }
  SUBCASE("single mode vacuum into a balanced thermal mix") {
    const GaussianState vac =
        GaussianState::from_covariance(Eigen::MatrixXd::Identity(2, 2));
    const GaussianState out =
        apply_thermal_loss(vac, ThermalLossChannel{0.5, 1.0}, 0);
    CHECK((out.covariance() - 2.0 * Eigen::MatrixXd::Identity(2, 2))
              .cwiseAbs()
              .maxCoeff() == 0.0);
  }
  SUBCASE("invalid parameters rejected") {
    const GaussianState s = tmsv_state(0.5);
    CHECK_THROWS_AS(apply_thermal_loss(s, ThermalLossChannel{1.5, 0.0}, 0),
                    domain_error);
    CHECK_THROWS_AS(apply_thermal_loss(s, ThermalLossChannel{-0.1, 0.0}, 0),
                    domain_error);
    CHECK_THROWS_AS(apply_thermal_loss(s, ThermalLossChannel{0.5, -1.0}, 0),
                    domain_error);
    CHECK_THROWS_AS(apply_thermal_loss(s, ThermalLossChannel{0.5, 0.0}, 2),
                    domain_error);
    CHECK_THROWS_AS(apply_thermal_loss(s, ThermalLossChannel{0.5, 0.0}, -1),
                    domain_error);
  }
}

TEST_CASE("channel output states") {
  SUBCASE("signal variance carries eta n_s plus n_b") {
    const GaussianState t = target_output_state(0.01, 20.0, 0.001);
    CHECK(rel_err(t.covariance()(0, 0), 41.00002) <= 1e-12);
    CHECK(rel_err(t.covariance()(1, 1), 41.00002) <= 1e-12);
  }
  SUBCASE("cross correlations scale with sqrt(eta)") {
    const GaussianState t = target_output_state(0.5, 0.0, 1.0);
    CHECK(abs_err(t.covariance()(0, 2), 2.0) <= 4e-15);
    CHECK(abs_err(t.covariance()(1, 3), -2.0) <= 4e-15);
  }
  SUBCASE("lossless channel with no background returns the probe") {
    const GaussianState t = target_output_state(1.0, 0.0, 0.4);
    const GaussianState probe = tmsv_state(0.4);
    CHECK((t.covariance() - probe.covariance()).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("lossless channel cannot carry background noise") {
    CHECK_THROWS_AS(target_output_state(1.0, 0.5, 0.4), domain_error);
  }
  SUBCASE("background state is diagonal with known symplectic spectrum") {
    const GaussianState b = background_output_state(2.0, 0.05);
    Eigen::VectorXd diag(4);
    diag << 5.0, 5.0, 1.1, 1.1;
    CHECK((b.covariance() - Eigen::MatrixXd(diag.asDiagonal()))
              .cwiseAbs()
              .maxCoeff() == 0.0);
    const std::vector<double> nu = b.symplectic_eigenvalues();
    REQUIRE(nu.size() == 2);
    CHECK(rel_err(nu[0], 5.0) <= 1e-12);
    CHECK(rel_err(nu[1], 1.1) <= 1e-12);
    CHECK_FALSE(b.is_pure());
  }
}

TEST_CASE("covariance validation") {
  SUBCASE("odd dimension rejected") {
    CHECK_THROWS_AS(GaussianState::from_covariance(Eigen::MatrixXd::Identity(
                        3, 3)),
                    domain_error);
  }
  SUBCASE("three modes rejected") {
    CHECK_THROWS_AS(GaussianState::from_covariance(Eigen::MatrixXd::Identity(
                        6, 6)),
                    domain_error);
  }
  SUBCASE("asymmetry beyond tolerance rejected") {
    Eigen::MatrixXd cov = Eigen::MatrixXd::Identity(2, 2);
    cov(0, 1) = 1e-9;
    CHECK_THROWS_AS(GaussianState::from_covariance(cov), domain_error);
  }
  SUBCASE("unphysical covariance rejected") {
    CHECK_THROWS_AS(GaussianState::from_covariance(
                        0.5 * Eigen::MatrixXd::Identity(2, 2)),
                    domain_error);
  }
}

TEST_CASE("gaussian fidelity") {
  SUBCASE("identical states give exactly one") {
    const GaussianState t = target_output_state(0.3, 1.5, 0.05);
    CHECK(gaussian_fidelity(t, t) == 1.0);
  }
  SUBCASE("symmetric in its arguments") {
    const GaussianState a = target_output_state(0.2, 1.0, 0.08);
    const GaussianState b = background_output_state(1.0, 0.08);
    CHECK(abs_err(gaussian_fidelity(a, b), gaussian_fidelity(b, a)) <= 1e-12);
  }
  SUBCASE("bounded by [0, 1]") {
    for (double eta : {0.01, 0.1, 0.5, 0.9}) {
      const GaussianState a = target_output_state(eta, 0.8, 0.1);
      const GaussianState b = background_output_state(0.8, 0.1);
      const double f = gaussian_fidelity(a, b);
      CHECK(f >= 0.0);
      CHECK(f <= 1.0);
    }
  }
  SUBCASE("monotone decreasing in transmissivity") {
    const GaussianState b = background_output_state(1.0, 0.01);
    double previous = 2.0;
    for (double eta : {0.01, 0.05, 0.1, 0.2, 0.5}) {
      const double f =
          gaussian_fidelity(target_output_state(eta, 1.0, 0.01), b);
      CHECK(f < previous);
      previous = f;
    }
  }
  SUBCASE("vacuum versus single-mode thermal matches the closed form") {
    const GaussianState vac =
        GaussianState::from_covariance(Eigen::MatrixXd::Identity(2, 2));
    const GaussianState thermal =
        GaussianState::from_covariance(3.0 * Eigen::MatrixXd::Identity(2, 2));
    CHECK(rel_err(gaussian_fidelity(vac, thermal), std::sqrt(0.5)) <= 1e-12);
  }
  SUBCASE("pure-state branch matches the determinant formula") {
    const GaussianState a =
        GaussianState::from_covariance(rotated_squeezed_cov(0.7, 0.3, 1.0));
    const GaussianState b =
        GaussianState::from_covariance(rotated_squeezed_cov(0.2, 0.4, 1.2));
    const double closed = std::sqrt(
        2.0 / std::sqrt((a.covariance() + b.covariance()).determinant()));
    CHECK(rel_err(gaussian_fidelity(a, b), closed) <= 1e-12);
  }
  SUBCASE("mode count mismatch rejected") {
    const GaussianState one =
        GaussianState::from_covariance(Eigen::MatrixXd::Identity(2, 2));
    CHECK_THROWS_AS(gaussian_fidelity(one, tmsv_state(0.1)), domain_error);
  }
}

TEST_CASE("fock basis oracle") {
  SUBCASE("vacuum against vacuum") {
    const GaussianState vac =
        GaussianState::from_covariance(Eigen::MatrixXd::Identity(2, 2));
    const FockFidelityResult r = fock_fidelity_oracle(vac, vac, 5);
    CHECK(abs_err(r.fidelity, 1.0) <= 1e-12);
    CHECK(r.trace_deficit_a <= 1e-12);
    CHECK(r.trace_deficit_b <= 1e-12);
  }
  SUBCASE("vacuum against thermal matches the closed form") {
    const GaussianState vac =
        GaussianState::from_covariance(Eigen::MatrixXd::Identity(2, 2));
    const GaussianState thermal =
        GaussianState::from_covariance(3.0 * Eigen::MatrixXd::Identity(2, 2));
    const FockFidelityResult r = fock_fidelity_oracle(vac, thermal, 40);
    CHECK(abs_err(r.fidelity, std::sqrt(0.5)) <= 1e-8);
  }
  SUBCASE("two-mode channel outputs agree with the covariance route") {
    const GaussianState a = tmsv_state(0.05);
    const GaussianState b = background_output_state(1.0, 0.05);
    const FockFidelityResult r = fock_fidelity_oracle(a, b, 30);
    CHECK(abs_err(r.fidelity, gaussian_fidelity(a, b)) <= 1e-6);
  }
  SUBCASE("rotated squeezed states agree with the covariance route") {
    // Sensitive to the sign of the rotation phase in the Fock construction:
    // the two states carry different orientation angles, so a sign error
    // cannot cancel between them.
    const GaussianState a =
        GaussianState::from_covariance(rotated_squeezed_cov(0.7, 0.3, 1.0));
    const GaussianState b =
        GaussianState::from_covariance(rotated_squeezed_cov(0.2, 0.4, 1.2));
    const FockFidelityResult r = fock_fidelity_oracle(a, b, 60);
    CHECK(abs_err(r.fidelity, gaussian_fidelity(a, b)) <= 1e-8);
  }
  SUBCASE("trace deficit is reported and thresholded") {
    const GaussianState vac =
        GaussianState::from_covariance(Eigen::MatrixXd::Identity(2, 2));
    const GaussianState thermal =
        GaussianState::from_covariance(5.0 * Eigen::MatrixXd::Identity(2, 2));
    // Mean occupation 2: the truncated tail is (2/3)^(cutoff+1) exactly.
    const FockFidelityResult r = fock_fidelity_oracle(thermal, vac, 30);
    CHECK(rel_err(r.trace_deficit_a, std::pow(2.0 / 3.0, 31)) <= 1e-9);
    CHECK(r.trace_deficit_b <= 1e-12);
    CHECK_THROWS_AS(fock_fidelity_oracle(thermal, vac, 30, 1e-7),
                    precision_error);
  }
  SUBCASE("cutoff validation") {
    const GaussianState vac =
        GaussianState::from_covariance(Eigen::MatrixXd::Identity(2, 2));
    CHECK_THROWS_AS(fock_fidelity_oracle(vac, vac, 0), domain_error);
    CHECK_THROWS_AS(fock_fidelity_oracle(vac, vac, 513), limit_error);
  }
  SUBCASE("mode count mismatch rejected") {
    const GaussianState vac =
        GaussianState::from_covariance(Eigen::MatrixXd::Identity(2, 2));
    CHECK_THROWS_AS(fock_fidelity_oracle(vac, tmsv_state(0.1), 10),
                    domain_error);
  }
  SUBCASE("two-mode states outside the standard form rejected") {
    Eigen::VectorXd diag(4);
    diag << 3.0, 3.0, 1.1, 1.2;
    const GaussianState odd =
        GaussianState::from_covariance(diag.asDiagonal());
    CHECK_THROWS_AS(fock_fidelity_oracle(odd, tmsv_state(0.1), 10),
                    domain_error);
  }
}
