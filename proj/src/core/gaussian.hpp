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

#ifndef QTRANGE_CORE_GAUSSIAN_HPP
#define QTRANGE_CORE_GAUSSIAN_HPP

#include <Eigen/Dense>
#include <vector>

#include "errors.hpp"

namespace qtrange {

// Zero-mean bosonic Gaussian state of 1 or 2 modes, stored as the quadrature
// covariance matrix in (x1, p1, x2, p2) ordering with vacuum variance 1, i.e.
// the vacuum covariance is the identity.
class GaussianState {
 public:
  // Validates the size (2x2 or 4x4), symmetry (1e-12 absolute) and
  // physicality (all symplectic eigenvalues >= 1 - 1e-9).
  static GaussianState from_covariance(const Eigen::MatrixXd& cov);

  int num_modes() const { return static_cast<int>(cov_.rows()) / 2; }
  const Eigen::MatrixXd& covariance() const { return cov_; }

  // Symplectic spectrum in descending order, in closed form (1 or 2 modes).
  std::vector<double> symplectic_eigenvalues() const;

  // True when the largest symplectic eigenvalue is <= 1 + tol.
  bool is_pure(double tol = 1e-9) const;

 private:
  explicit GaussianState(Eigen::MatrixXd cov) : cov_(std::move(cov)) {}
  Eigen::MatrixXd cov_;
};

// Single-mode thermal-loss channel: transmissivity mu in [0, 1] mixing the
// input with a thermal environment of mean photon number n_thermal >= 0. The
// added output noise is (1 - mu) * n_thermal photons.
struct ThermalLossChannel {
  double mu = 1.0;
  double n_thermal = 0.0;
};

// Two-mode squeezed vacuum with n_s mean photons per mode: diagonal blocks
// (2 n_s + 1) I, off-diagonal blocks 2 sqrt(n_s (n_s + 1)) diag(1, -1).
GaussianState tmsv_state(double n_s);

// Applies the channel to one mode: that mode's 2x2 block A becomes
// mu A + (1 - mu)(2 n_thermal + 1) I, cross blocks scale by sqrt(mu), and the
// other mode is untouched.
GaussianState apply_thermal_loss(const GaussianState& state,
                                 const ThermalLossChannel& ch, int mode_index);

// Signal mode of a TMSV sent through a transmissivity-eta channel whose
// environment holds n_b / (1 - eta) thermal photons, so the background noise
// reaching the receiver is exactly n_b photons per mode. eta = 1 requires
// n_b = 0 (the environment occupation would diverge otherwise).
GaussianState target_output_state(double eta, double n_b, double n_s);

// Output when the signal is entirely lost: thermal (2 n_b + 1) I on the
// signal mode, the TMSV idler marginal on the other, no cross correlations.
GaussianState background_output_state(double n_b, double n_s);

// Uhlmann fidelity F = Tr sqrt(sqrt(rho) sigma sqrt(rho)) of two zero-mean
// Gaussian states. Always in [0, 1]; exactly 1 iff the covariances agree to
// within 1e-9 element-wise.
double gaussian_fidelity(const GaussianState& a, const GaussianState& b);

struct FockFidelityResult {
  double fidelity = 0.0;
  // Trace discarded by truncating each state at the cutoff, before the
  // truncated matrices are renormalized.
  double trace_deficit_a = 0.0;
  double trace_deficit_b = 0.0;
};

// Independent cross-check of gaussian_fidelity: builds both states in the
// Fock basis and evaluates the Uhlmann fidelity by dense linear algebra.
// The reported trace deficits are those of truncation at `cutoff` photons
// per mode; the fidelity itself is evaluated with extra headroom above the
// cutoff so its error stays well below the deficit the gate permits. Throws
// precision_error when either trace deficit exceeds max_trace_deficit.
// Two-mode states must carry covariances of the standard form
// [[a I, c Z], [c Z, b I]] (every state produced by the constructors above
// does).
FockFidelityResult fock_fidelity_oracle(const GaussianState& a,
                                        const GaussianState& b, int cutoff,
                                        double max_trace_deficit = 1e-4);

}  // namespace qtrange

#endif
