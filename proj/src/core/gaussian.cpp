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

#include "gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qtrange {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kPhysicalityTol = 1e-9;
constexpr double kEqualCovTol = 1e-9;
// Eigenvalue handling for matrix square roots: values below the noise floor
// (relative to the largest eigenvalue) are treated as 0; negatives beyond the
// hard bound mean the input was not a density matrix.
constexpr double kEigNoiseFloorRel = 1e-14;
constexpr double kEigHardRel = 1e-6;
constexpr int kMaxCutoff = 512;
// The oracle evaluates the fidelity with this much headroom above the
// caller's cutoff, so the returned value is limited by the deficit gate and
// not by the hard truncation edge (the tail the gate permits still perturbs
// a naive fixed-cutoff fidelity by its own size).
constexpr int kOraclePadLevels = 16;

void require(bool ok, const std::string& msg) {
  if (!ok) throw domain_error(msg);
}

bool finite(double x) { return std::isfinite(x); }

// Standard symplectic form: the direct sum of [[0, 1], [-1, 0]] per mode,
// matching the (x1, p1, x2, p2) quadrature ordering.
Eigen::MatrixXd symplectic_form(int num_modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * num_modes, 2 * num_modes);
  for (int k = 0; k < num_modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

std::vector<double> symplectic_spectrum(const Eigen::MatrixXd& cov) {
  if (cov.rows() == 2) {
    return {std::sqrt(std::max(cov.determinant(), 0.0))};
  }
  // Two modes. The invariant route sqrt((delta +- sqrt(delta^2 - 4 det V))/2)
  // cancels catastrophically near pure states, where determinant roundoff of
  // eps blows up to a sqrt(eps) spectrum error. Instead: sqrt(V) Omega
  // sqrt(V) is skew-symmetric with singular values {nu_1, nu_1, nu_2, nu_2},
  // and both factor steps are backward stable.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(cov);
  const Eigen::Vector4d clipped = es.eigenvalues().cwiseMax(0.0);
  const Eigen::Matrix4d root = es.eigenvectors() *
                               clipped.cwiseSqrt().asDiagonal() *
                               es.eigenvectors().transpose();
  const Eigen::Matrix4d skew = root * symplectic_form(2) * root;
  Eigen::JacobiSVD<Eigen::Matrix4d> svd(skew);
  return {svd.singularValues()(0), svd.singularValues()(2)};
}

}  // namespace

GaussianState GaussianState::from_covariance(const Eigen::MatrixXd& cov) {
  const auto rows = cov.rows();
  require(rows == cov.cols() && (rows == 2 || rows == 4),
          "covariance must be 2x2 (one mode) or 4x4 (two modes)");
  require(cov.allFinite(), "covariance entries must be finite");
  const double asym = (cov - cov.transpose()).cwiseAbs().maxCoeff();
  require(asym <= kSymmetryTol, "covariance must be symmetric within 1e-12");
  GaussianState state(((cov + cov.transpose()) / 2.0).eval());
  for (double nu : state.symplectic_eigenvalues()) {
    require(nu >= 1.0 - kPhysicalityTol,
            "covariance is not physical: a symplectic eigenvalue is below 1");
  }
  return state;
}

std::vector<double> GaussianState::symplectic_eigenvalues() const {
  return symplectic_spectrum(cov_);
}

bool GaussianState::is_pure(double tol) const {
  return symplectic_eigenvalues().front() <= 1.0 + tol;
}

GaussianState tmsv_state(double n_s) {
  require(finite(n_s) && n_s >= 0.0, "n_s must be finite and >= 0");
  const double d = 2.0 * n_s + 1.0;
  const double c = 2.0 * std::sqrt(n_s * (n_s + 1.0));
  Eigen::Matrix4d cov = d * Eigen::Matrix4d::Identity();
  cov(0, 2) = cov(2, 0) = c;
  cov(1, 3) = cov(3, 1) = -c;
  return GaussianState::from_covariance(cov);
}

GaussianState apply_thermal_loss(const GaussianState& state,
                                 const ThermalLossChannel& ch,
                                 int mode_index) {
  require(finite(ch.mu) && ch.mu >= 0.0 && ch.mu <= 1.0,
          "mu must lie in [0, 1]");
  require(finite(ch.n_thermal) && ch.n_thermal >= 0.0,
          "n_thermal must be finite and >= 0");
  require(mode_index >= 0 && mode_index < state.num_modes(),
          "mode_index out of range");
  Eigen::MatrixXd cov = state.covariance();
  const int i = 2 * mode_index;
  const double env = (1.0 - ch.mu) * (2.0 * ch.n_thermal + 1.0);
  cov.block<2, 2>(i, i) =
      ch.mu * cov.block<2, 2>(i, i) + env * Eigen::Matrix2d::Identity();
  const double root_mu = std::sqrt(ch.mu);
  for (int m = 0; m < state.num_modes(); ++m) {
    if (m == mode_index) continue;
    cov.block<2, 2>(i, 2 * m) *= root_mu;
    cov.block<2, 2>(2 * m, i) *= root_mu;
  }
  return GaussianState::from_covariance(cov);
}

GaussianState target_output_state(double eta, double n_b, double n_s) {
  require(finite(eta) && eta >= 0.0 && eta <= 1.0, "eta must lie in [0, 1]");
  require(finite(n_b) && n_b >= 0.0, "n_b must be finite and >= 0");
  require(finite(n_s) && n_s >= 0.0, "n_s must be finite and >= 0");
  if (eta == 1.0) {
    require(n_b == 0.0,
            "eta = 1 with n_b > 0 makes the environment occupation diverge");
    return tmsv_state(n_s);
  }
  return apply_thermal_loss(tmsv_state(n_s), {eta, n_b / (1.0 - eta)}, 0);
}

GaussianState background_output_state(double n_b, double n_s) {
  require(finite(n_b) && n_b >= 0.0, "n_b must be finite and >= 0");
  require(finite(n_s) && n_s >= 0.0, "n_s must be finite and >= 0");
  Eigen::Matrix4d cov = Eigen::Matrix4d::Identity();
  cov(0, 0) = cov(1, 1) = 2.0 * n_b + 1.0;
  cov(2, 2) = cov(3, 3) = 2.0 * n_s + 1.0;
  return GaussianState::from_covariance(cov);
}

double gaussian_fidelity(const GaussianState& a, const GaussianState& b) {
  require(a.num_modes() == b.num_modes(),
          "states must have equal mode counts");
  const Eigen::MatrixXd& va = a.covariance();
  const Eigen::MatrixXd& vb = b.covariance();
  if ((va - vb).cwiseAbs().maxCoeff() <= kEqualCovTol) return 1.0;
  const int n = a.num_modes();
  const double two_n = static_cast<double>(1 << n);
  if (a.is_pure() || b.is_pure()) {
    // With a pure state involved the fidelity reduces to the Gaussian overlap
    // F^2 = 2^n / sqrt(det(Va + Vb)), which has no cancellation problems.
    const double overlap = two_n / std::sqrt((va + vb).determinant());
    return std::clamp(std::sqrt(overlap), 0.0, 1.0);
  }
  // General mixed-mixed case, in units where the vacuum covariance is 1/2.
  const Eigen::MatrixXd v1 = va / 2.0;
  const Eigen::MatrixXd v2 = vb / 2.0;
  const Eigen::MatrixXd omega = symplectic_form(n);
  const Eigen::MatrixXd sum = v1 + v2;
  const Eigen::MatrixXd v_aux =
      omega.transpose() * sum.inverse() * (0.25 * omega + v2 * omega * v1);
  const Eigen::MatrixXd w = v_aux * omega;
  // F^4 = det(sum)^-1 * 2^(2n) * det(v_aux) * prod_i (1 + sqrt(1 + 1/(4 w_i^2)))
  // over the eigenvalues w_i of W = V_aux Omega; the product is real for
  // physical inputs.
  Eigen::EigenSolver<Eigen::MatrixXd> es(w, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw precision_error("fidelity eigenvalue computation did not converge");
  }
  std::complex<double> prod(1.0, 0.0);
  for (int i = 0; i < w.rows(); ++i) {
    const std::complex<double> wi = es.eigenvalues()(i);
    if (std::abs(wi) < 1e-12) {
      throw precision_error("fidelity evaluation degenerated (w eigenvalue near 0)");
    }
    prod *= 1.0 + std::sqrt(1.0 + 1.0 / (4.0 * wi * wi));
  }
  const double f4 = prod.real() * v_aux.determinant() * two_n * two_n /
                    sum.determinant();
  if (!std::isfinite(f4)) {
    throw precision_error("fidelity evaluation produced a non-finite value");
  }
  return std::clamp(std::pow(std::max(f4, 0.0), 0.25), 0.0, 1.0);
}

namespace {

// Thermal photon-number probabilities p[k] = nbar^k / (nbar+1)^(k+1),
// k = 0 .. size-1.
Eigen::VectorXd thermal_probs(double nbar, int size) {
  Eigen::VectorXd p = Eigen::VectorXd::Zero(size);
  if (nbar <= 0.0) {
    p(0) = 1.0;
    return p;
  }
  const double ratio = nbar / (nbar + 1.0);
  p(0) = 1.0 / (nbar + 1.0);
  for (int k = 1; k < size; ++k) p(k) = p(k - 1) * ratio;
  return p;
}

// exp(r K) for the antisymmetric tridiagonal generator K with
// K(k+1, k) = off(k) = -K(k, k+1), via the Hermitian matrix H = i K.
// The result is real orthogonal on the truncated space.
Eigen::MatrixXd chain_exponential(const Eigen::VectorXd& off, double r) {
  const int size = static_cast<int>(off.size()) + 1;
  if (r == 0.0) return Eigen::MatrixXd::Identity(size, size);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(size, size);
  const std::complex<double> im(0.0, 1.0);
  for (int k = 0; k + 1 < size; ++k) {
    h(k + 1, k) = im * off(k);
    h(k, k + 1) = -im * off(k);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) {
    throw precision_error("chain exponential eigensolver did not converge");
  }
  Eigen::VectorXcd phases(size);
  for (int k = 0; k < size; ++k) {
    phases(k) = std::exp(std::complex<double>(0.0, -r * es.eigenvalues()(k)));
  }
  const Eigen::MatrixXcd u = es.eigenvectors() * phases.asDiagonal() *
                             es.eigenvectors().adjoint();
  return u.real();
}

// Square root of a positive semidefinite self-adjoint matrix by
// eigendecomposition, clipping small negative eigenvalues per the tolerance
// policy above.
template <typename Mat>
Mat psd_sqrt(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  if (es.info() != Eigen::Success) {
    throw precision_error("matrix square root eigensolver did not converge");
  }
  Eigen::VectorXd vals = es.eigenvalues();
  const double scale = std::max(vals.cwiseAbs().maxCoeff(), 1e-300);
  for (int i = 0; i < vals.size(); ++i) {
    if (vals(i) < -kEigHardRel * scale) {
      throw precision_error(
          "matrix square root input has a large negative eigenvalue");
    }
    if (vals(i) < kEigNoiseFloorRel * scale) vals(i) = 0.0;
  }
  return es.eigenvectors() * vals.cwiseSqrt().asDiagonal() *
         es.eigenvectors().adjoint();
}

// Tr sqrt(sqrt(A) B sqrt(A)) for density-matrix blocks A, B (self-adjoint,
// positive semidefinite). Eigenvalues below the noise floor are dropped so
// that rounding noise cannot accumulate across many blocks.
template <typename Mat>
double trace_sqrt_product(const Mat& block_a, const Mat& block_b) {
  const Mat sa = psd_sqrt(block_a);
  const Mat mid = sa * block_b * sa;
  Eigen::SelfAdjointEigenSolver<Mat> es(
      ((mid + mid.adjoint()) / 2.0).eval(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw precision_error("fidelity block eigensolver did not converge");
  }
  const Eigen::VectorXd vals = es.eigenvalues();
  const double scale = std::max(vals.cwiseAbs().maxCoeff(), 1e-300);
  double total = 0.0;
  for (int i = 0; i < vals.size(); ++i) {
    if (vals(i) < -kEigHardRel * scale) {
      throw precision_error("fidelity block has a large negative eigenvalue");
    }
    if (vals(i) > kEigNoiseFloorRel * scale) total += std::sqrt(vals(i));
  }
  return total;
}

struct OneModeFock {
  Eigen::MatrixXcd rho;
  double deficit = 0.0;
};

// Dense truncated Fock representation of a single-mode Gaussian state:
// rho = R(theta) S(r) rho_thermal S(r)^T R(theta)^dagger, with the rotation,
// squeeze and thermal parameters read off the covariance eigendecomposition.
OneModeFock one_mode_fock(const Eigen::MatrixXd& cov, int dim) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(cov);
  const double s_small = es.eigenvalues()(0);
  const double s_large = es.eigenvalues()(1);
  Eigen::Matrix2d rot;
  rot.col(0) = es.eigenvectors().col(1);  // axis of the larger variance first
  rot.col(1) = es.eigenvectors().col(0);
  if (rot.determinant() < 0.0) rot.col(1) *= -1.0;
  const double theta = std::atan2(rot(1, 0), rot(0, 0));
  const double nu = std::sqrt(std::max(s_large * s_small, 0.0));
  const double nbar = std::max((nu - 1.0) / 2.0, 0.0);
  const double r = 0.25 * std::log(s_large / s_small);

  const Eigen::VectorXd probs = thermal_probs(nbar, dim);
  // Squeeze generator (a^dag^2 - a^2)/2 couples n to n+2 with coefficient
  // sqrt((n+1)(n+2))/2; exponentiate exp(r * generator).
  Eigen::MatrixXd k2 = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 0; n + 2 < dim; ++n) {
    const double g = 0.5 * std::sqrt((n + 1.0) * (n + 2.0));
    k2(n + 2, n) = g;
    k2(n, n + 2) = -g;
  }
  Eigen::MatrixXd u_sq;
  if (r == 0.0) {
    u_sq = Eigen::MatrixXd::Identity(dim, dim);
  } else {
    Eigen::MatrixXcd h = std::complex<double>(0.0, 1.0) * k2;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> hes(h);
    if (hes.info() != Eigen::Success) {
      throw precision_error("squeeze exponential eigensolver did not converge");
    }
    Eigen::VectorXcd phases(dim);
    for (int k = 0; k < dim; ++k) {
      phases(k) =
          std::exp(std::complex<double>(0.0, -r * hes.eigenvalues()(k)));
    }
    u_sq = (hes.eigenvectors() * phases.asDiagonal() *
            hes.eigenvectors().adjoint())
               .real();
  }
  const Eigen::MatrixXd squeezed =
      u_sq * probs.asDiagonal() * u_sq.transpose();
  Eigen::VectorXcd rot_phases(dim);
  for (int k = 0; k < dim; ++k) {
    rot_phases(k) = std::exp(std::complex<double>(0.0, theta * k));
  }
  OneModeFock out;
  out.rho = rot_phases.asDiagonal() * squeezed.cast<std::complex<double>>() *
            rot_phases.conjugate().asDiagonal();
  out.deficit = std::max(1.0 - probs.sum(), 0.0);
  return out;
}

struct StandardForm {
  double t1 = 1.0;  // symplectic eigenvalue carried by mode 1
  double t2 = 1.0;  // symplectic eigenvalue carried by mode 2
  double r = 0.0;   // two-mode squeezing parameter
};

// Decomposes a standard-form two-mode covariance [[a I, c Z], [c Z, b I]]
// into thermal(t1) x thermal(t2) conjugated by a two-mode squeezer.
StandardForm standard_form_decompose(const Eigen::MatrixXd& cov) {
  const double scale = std::max(cov.cwiseAbs().maxCoeff(), 1.0);
  const double tol = 1e-9 * scale;
  const double a = (cov(0, 0) + cov(1, 1)) / 2.0;
  const double b = (cov(2, 2) + cov(3, 3)) / 2.0;
  const double c = (cov(0, 2) - cov(1, 3)) / 2.0;
  const bool standard =
      std::abs(cov(0, 0) - a) <= tol && std::abs(cov(1, 1) - a) <= tol &&
      std::abs(cov(2, 2) - b) <= tol && std::abs(cov(3, 3) - b) <= tol &&
      std::abs(cov(0, 1)) <= tol && std::abs(cov(2, 3)) <= tol &&
      std::abs(cov(0, 3)) <= tol && std::abs(cov(1, 2)) <= tol &&
      std::abs(cov(0, 2) - c) <= tol && std::abs(cov(1, 3) + c) <= tol;
  if (!standard) {
    throw domain_error(
        "Fock oracle supports two-mode covariances of the standard form "
        "[[a I, c Z], [c Z, b I]] only");
  }
  const double s = a + b;
  const double t_sum_sq = s * s - 4.0 * c * c;
  if (t_sum_sq <= 0.0) {
    throw domain_error("covariance is not a physical standard form");
  }
  const double t_sum = std::sqrt(t_sum_sq);
  StandardForm sf;
  sf.t1 = (t_sum + (a - b)) / 2.0;
  sf.t2 = (t_sum - (a - b)) / 2.0;
  sf.r = 0.5 * std::atanh(2.0 * c / s);
  if (sf.t1 < 1.0 - kPhysicalityTol || sf.t2 < 1.0 - kPhysicalityTol) {
    throw domain_error("covariance is not a physical standard form");
  }
  return sf;
}

struct TwoModeFockBlocks {
  // Photon-number difference n1 - n2 is conserved by two-mode squeezing of a
  // thermal product, so the density matrix is block diagonal over q = n1 - n2
  // chains. blocks[q + dim - 1] holds the chain with difference q.
  std::vector<Eigen::MatrixXd> blocks;
  double deficit = 0.0;
};

TwoModeFockBlocks two_mode_fock_blocks(const Eigen::MatrixXd& cov, int dim) {
  const StandardForm sf = standard_form_decompose(cov);
  const Eigen::VectorXd p1 =
      thermal_probs(std::max((sf.t1 - 1.0) / 2.0, 0.0), dim);
  const Eigen::VectorXd p2 =
      thermal_probs(std::max((sf.t2 - 1.0) / 2.0, 0.0), dim);
  TwoModeFockBlocks out;
  out.blocks.resize(2 * dim - 1);
  double total_trace = 0.0;
  for (int q = -(dim - 1); q <= dim - 1; ++q) {
    const int len = dim - std::abs(q);
    // Chain basis |k + |q|, k> on the heavier mode; the two-mode squeeze
    // generator a1^dag a2^dag - a1 a2 couples adjacent chain states with
    // coefficient sqrt((k + |q| + 1)(k + 1)).
    Eigen::VectorXd off = Eigen::VectorXd::Zero(std::max(len - 1, 0));
    for (int k = 0; k + 1 < len; ++k) {
      off(k) = std::sqrt((k + std::abs(q) + 1.0) * (k + 1.0));
    }
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(len);
    for (int k = 0; k < len; ++k) {
      const int n1 = q >= 0 ? k + q : k;
      const int n2 = q >= 0 ? k : k - q;
      diag(k) = p1(n1) * p2(n2);
    }
    total_trace += diag.sum();
    const Eigen::MatrixXd u = chain_exponential(off, sf.r);
    out.blocks[q + dim - 1] = u * diag.asDiagonal() * u.transpose();
  }
  out.deficit = std::max(1.0 - total_trace, 0.0);
  return out;
}

}  // namespace

FockFidelityResult fock_fidelity_oracle(const GaussianState& a,
                                        const GaussianState& b, int cutoff,
                                        double max_trace_deficit) {
  require(a.num_modes() == b.num_modes(),
          "states must have equal mode counts");
  require(cutoff >= 1, "cutoff must be >= 1");
  if (cutoff > kMaxCutoff) {
    std::ostringstream msg;
    msg << "cutoff " << cutoff << " exceeds the supported maximum "
        << kMaxCutoff;
    throw limit_error(msg.str());
  }
  require(finite(max_trace_deficit) && max_trace_deficit > 0.0,
          "max_trace_deficit must be positive");
  const int dim = cutoff + 1;
  const int padded_dim = std::min(dim + kOraclePadLevels, kMaxCutoff + 1);
  FockFidelityResult out;
  if (a.num_modes() == 1) {
    // Deficits keep the requested-cutoff semantics and drive the gate.
    out.trace_deficit_a = one_mode_fock(a.covariance(), dim).deficit;
    out.trace_deficit_b = one_mode_fock(b.covariance(), dim).deficit;
    if (std::max(out.trace_deficit_a, out.trace_deficit_b) >
        max_trace_deficit) {
      std::ostringstream msg;
      msg << "Fock truncation discards too much trace (deficits "
          << out.trace_deficit_a << ", " << out.trace_deficit_b << " exceed "
          << max_trace_deficit << "); raise the cutoff";
      throw precision_error(msg.str());
    }
    const OneModeFock fa = one_mode_fock(a.covariance(), padded_dim);
    const OneModeFock fb = one_mode_fock(b.covariance(), padded_dim);
    const double ta = std::real(fa.rho.trace());
    const double tb = std::real(fb.rho.trace());
    out.fidelity = std::clamp(
        trace_sqrt_product<Eigen::MatrixXcd>(fa.rho / ta, fb.rho / tb), 0.0,
        1.0);
    return out;
  }
  out.trace_deficit_a = two_mode_fock_blocks(a.covariance(), dim).deficit;
  out.trace_deficit_b = two_mode_fock_blocks(b.covariance(), dim).deficit;
  if (std::max(out.trace_deficit_a, out.trace_deficit_b) >
      max_trace_deficit) {
    std::ostringstream msg;
    msg << "Fock truncation discards too much trace (deficits "
        << out.trace_deficit_a << ", " << out.trace_deficit_b << " exceed "
        << max_trace_deficit << "); raise the cutoff";
    throw precision_error(msg.str());
  }
  const TwoModeFockBlocks fa = two_mode_fock_blocks(a.covariance(), padded_dim);
  const TwoModeFockBlocks fb = two_mode_fock_blocks(b.covariance(), padded_dim);
  const double ta = 1.0 - fa.deficit;
  const double tb = 1.0 - fb.deficit;
  double fidelity = 0.0;
  for (size_t i = 0; i < fa.blocks.size(); ++i) {
    fidelity += trace_sqrt_product<Eigen::MatrixXd>(fa.blocks[i] / ta,
                                                    fb.blocks[i] / tb);
  }
  out.fidelity = std::clamp(fidelity, 0.0, 1.0);
  return out;
}

}  // namespace qtrange
