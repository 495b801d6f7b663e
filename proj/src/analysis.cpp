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

#include "cqed/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cqed {

namespace {

std::vector<double> column(const std::vector<ManifoldPopulations>& pops, std::size_t k) {
    std::vector<double> out(pops.size());
    for (std::size_t i = 0; i < pops.size(); ++i) out[i] = pops[i][k];
    return out;
}

// Basis indices of |c; one photon in cavity 1, one in cavity 2> in the
// order (++, +-, -+, --).
std::array<std::size_t, 4> coincidence_indices(const Basis& basis) {
    return {basis.index({Level::c, {1, 0, 1, 0}}), basis.index({Level::c, {1, 0, 0, 1}}),
            basis.index({Level::c, {0, 1, 1, 0}}), basis.index({Level::c, {0, 1, 0, 1}})};
}

using Matrix2c = Eigen::Matrix2cd;

Matrix2c pauli(int k) {
    Matrix2c m;
    switch (k) {
    case 0: m << 0, 1, 1, 0; break;
    case 1: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    default: m << 1, 0, 0, -1; break;
    }
    return m;
}

Matrix4c kron(const Matrix2c& a, const Matrix2c& b) {
    Matrix4c out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

}  // namespace

Fidelity fidelity(std::span<const double> times, std::span<const double> bell_plus) {
    if (times.empty() || times.size() != bell_plus.size())
        throw std::invalid_argument("fidelity: empty or mismatched time grid");
    const auto it = std::max_element(bell_plus.begin(), bell_plus.end());
    const auto k = static_cast<std::size_t>(it - bell_plus.begin());
    return {*it, times[k]};
}

Fidelity fidelity(const CoherentTrajectory& trajectory) {
    return fidelity(trajectory.times, column(trajectory.populations, 3));
}

Fidelity fidelity(const EnsembleResult& ensemble) {
    return fidelity(ensemble.times, column(ensemble.populations, 3));
}

Fidelity fidelity(const DensitySeries& series) {
    return fidelity(series.times, column(series.populations, 3));
}

PolarizationState postselect_polarization(const Basis& basis, std::span<const StateVector> final_states,
                                          std::span<const std::vector<JumpRecord>> jumps, double eta) {
    if (!jumps.empty() && jumps.size() != final_states.size())
        throw std::invalid_argument("postselect_polarization: jump records do not match states");
    if (final_states.empty()) throw std::invalid_argument("postselect_polarization: no states");
    const auto idx = coincidence_indices(basis);
    Matrix4c acc = Matrix4c::Zero();
    for (std::size_t i = 0; i < final_states.size(); ++i) {
        if (!jumps.empty() && !jumps[i].empty()) continue;
        const auto& psi = final_states[i];
        const double n2 = psi.squaredNorm();
        Eigen::Vector4cd v;
        for (int k = 0; k < 4; ++k) v(k) = psi(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(k)])) / std::sqrt(n2);
        acc += v * v.adjoint();
    }
    const double weight = acc.trace().real();
    if (!(weight >= 1e-12)) throw NumericalError("no coincidence support");
    PolarizationState out;
    out.rho = acc / weight;
    out.p_coinc = eta * eta * weight / static_cast<double>(final_states.size());
    return out;
}

PolarizationState postselect_polarization(const CavitySystem& system, const EnsembleResult& ensemble) {
    if (ensemble.final_states.size() != ensemble.n_traj)
        throw std::invalid_argument("postselect_polarization: ensemble has no final states");
    const double t_f = ensemble.times.empty() ? 0.0 : ensemble.times.back();
    const auto& p = system.params();
    if (p.pulse1.evaluate(t_f) >= 1e-6 * p.g || p.pulse2.evaluate(t_f) >= 1e-6 * p.g)
        throw std::invalid_argument("postselect_polarization: couplings still on at read-out time");
    return postselect_polarization(system.basis(), ensemble.final_states, ensemble.jumps, p.eta);
}

PolarizationState postselect_polarization(const CavitySystem& system, const StateVector& psi, double t_f) {
    const auto& p = system.params();
    if (p.pulse1.evaluate(t_f) >= 1e-6 * p.g || p.pulse2.evaluate(t_f) >= 1e-6 * p.g)
        throw std::invalid_argument("postselect_polarization: couplings still on at read-out time");
    // An unnormalized closed-system state carries its own weight.
    const StateVector states[1] = {psi};
    auto out = postselect_polarization(system.basis(), states, {}, p.eta);
    const auto idx = coincidence_indices(system.basis());
    double w = 0.0;
    for (auto k : idx) w += std::norm(psi(static_cast<Eigen::Index>(k)));
    out.p_coinc = p.eta * p.eta * w;
    return out;
}

PolarizationState postselect_polarization(const CavitySystem& system, const DenseMatrix& rho, double t_f) {
    const auto& p = system.params();
    if (p.pulse1.evaluate(t_f) >= 1e-6 * p.g || p.pulse2.evaluate(t_f) >= 1e-6 * p.g)
        throw std::invalid_argument("postselect_polarization: couplings still on at read-out time");
    const auto idx = coincidence_indices(system.basis());
    Matrix4c block;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            block(i, j) = rho(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(i)]),
                              static_cast<Eigen::Index>(idx[static_cast<std::size_t>(j)]));
    const double weight = block.trace().real();
    if (!(weight >= 1e-12)) throw NumericalError("no coincidence support");
    PolarizationState out;
    out.rho = block / weight;
    out.p_coinc = p.eta * p.eta * weight;
    return out;
}

double correlation(const Matrix4c& rho, double alpha, double beta) {
    const Matrix2c a1 = std::cos(2 * alpha) * pauli(2) + std::sin(2 * alpha) * pauli(0);
    const Matrix2c a2 = -std::cos(2 * beta) * pauli(2) + std::sin(2 * beta) * pauli(0);
    return (rho * kron(a1, a2)).trace().real();
}

void validate_polarization(const Matrix4c& rho) {
    if (!rho.allFinite()) throw std::invalid_argument("polarization state has non-finite entries");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
        throw std::invalid_argument("polarization state is not hermitian");
    if (std::abs(rho.trace().real() - 1.0) > 1e-8)
        throw std::invalid_argument("polarization state does not have unit trace");
    const Eigen::SelfAdjointEigenSolver<Matrix4c> es(rho);
    if (es.eigenvalues().minCoeff() < -1e-8)
        throw std::invalid_argument("polarization state is not positive semidefinite");
}

double chsh_fixed(const Matrix4c& rho, const AnalyzerAngles& angles) {
    validate_polarization(rho);
    const auto& g = angles;
    return std::abs(correlation(rho, g.alpha, g.beta) - correlation(rho, g.alpha, g.beta_prime) +
                    correlation(rho, g.alpha_prime, g.beta) +
                    correlation(rho, g.alpha_prime, g.beta_prime));
}

Eigen::Matrix3d correlation_matrix(const Matrix4c& rho) {
    Eigen::Matrix3d t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t(i, j) = (rho * kron(pauli(i), pauli(j))).trace().real();
    return t;
}

double chsh_optimal(const Matrix4c& rho) {
    validate_polarization(rho);
    const Eigen::Matrix3d t = correlation_matrix(rho);
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(t.transpose() * t);
    const auto& ev = es.eigenvalues();  // ascending
    return 2.0 * std::sqrt(std::max(0.0, ev(1) + ev(2)));
}

double bell_fidelity(const Matrix4c& rho) {
    const double r = 1.0 / std::numbers::sqrt2;
    Eigen::Vector4cd psi(0, r, r, 0);
    return psi.dot(rho * psi).real();
}

}  // namespace cqed
