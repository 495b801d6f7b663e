// Copyright 2026 The cqedpairs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cqed/coherent.hpp"
#include "cqed/dissipative.hpp"

namespace cqed {

struct Fidelity {
    double value = 0.0;
    double time = 0.0;
};

/// F = max over the grid of P_E+(t), with the time where it is attained.
Fidelity fidelity(std::span<const double> times, std::span<const double> bell_plus);
Fidelity fidelity(const CoherentTrajectory& trajectory);
Fidelity fidelity(const EnsembleResult& ensemble);
Fidelity fidelity(const DensitySeries& series);

using Matrix4c = Eigen::Matrix4cd;

/// Two-photon polarization state after coincidence post-selection.
/// Basis order (++, +-, -+, --), cavity 1 first.
struct PolarizationState {
    Matrix4c rho = Matrix4c::Zero();
    /// eta^2 times the post-selected weight per trajectory.
    double p_coinc = 0.0;
};

/// Post-selects trajectories that ended without any jump and projects each
/// final conditional state onto the one-photon-per-cavity subspace. All four
/// modes decay at the same rate, so the coincidence polarization statistics
/// equal those of this projected intracavity state.
///
/// `jumps` may be empty, meaning no trajectory jumped. Throws NumericalError
/// ("no coincidence support") if the accepted weight is below 1e-12.
PolarizationState postselect_polarization(const Basis& basis, std::span<const StateVector> final_states,
                                          std::span<const std::vector<JumpRecord>> jumps, double eta);

/// Uses the ensemble's final states; the ensemble must have been run with
/// keep_final_states and must end after both couplings have switched off.
PolarizationState postselect_polarization(const CavitySystem& system, const EnsembleResult& ensemble);

/// Single closed-system state read out at time t_f.
PolarizationState postselect_polarization(const CavitySystem& system, const StateVector& psi, double t_f);

/// Density-matrix read-out at t_f. Jumps always lower the excitation number,
/// so the two-excitation block of rho is exactly the zero-jump part.
PolarizationState postselect_polarization(const CavitySystem& system, const DenseMatrix& rho, double t_f);

/// Analyzer angles (alpha, alpha', beta, beta') in radians.
struct AnalyzerAngles {
    double alpha = 0.0;
    double alpha_prime = 0.7853981633974483;
    double beta = 0.39269908169872414;
    double beta_prime = 1.1780972450961724;
};

/// Correlation E(alpha, beta) of linear analyzers on the two photons.
///
/// Circular polarization reaches the analyzers through a quarter-wave plate:
/// in arm 1 sigma+ -> H and sigma- -> V; arm 2 is mirrored, sigma+ -> V and
/// sigma- -> H. An analyzer at angle alpha measures cos(2a) Z + sin(2a) X in
/// its H/V frame.
double correlation(const Matrix4c& rho, double alpha, double beta);

/// |E(a,b) - E(a,b') + E(a',b) + E(a',b')|. Throws std::invalid_argument for
/// a non-physical rho.
double chsh_fixed(const Matrix4c& rho, const AnalyzerAngles& angles = {});

/// Maximum over all local measurement directions, 2 sqrt(m1 + m2) with m1,
/// m2 the two largest eigenvalues of T^T T.
double chsh_optimal(const Matrix4c& rho);

/// T_ij = Tr(rho sigma_i x sigma_j) in the circular basis.
Eigen::Matrix3d correlation_matrix(const Matrix4c& rho);

/// <Psi+|rho|Psi+> with Psi+ = (|+-> + |-+>)/sqrt(2), the image of |E+>.
double bell_fidelity(const Matrix4c& rho);

/// Throws std::invalid_argument unless rho is hermitian, unit trace and
/// positive semidefinite to 1e-8.
void validate_polarization(const Matrix4c& rho);

}  // namespace cqed
