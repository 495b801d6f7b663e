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
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cqed/coherent.hpp"

namespace cqed {

enum class JumpChannel : std::uint8_t {
    gamma_plus,   // atomic a -> c
    gamma_minus,  // atomic b -> c
    kappa_1p,
    kappa_1m,
    kappa_2p,
    kappa_2m,
};
inline constexpr std::size_t kJumpChannels = 6;

std::string to_string(JumpChannel channel);
bool is_atomic(JumpChannel channel);
/// 1 or 2 for cavity channels, 0 for atomic ones.
int cavity_of(JumpChannel channel);

struct JumpRecord {
    double time = 0.0;
    JumpChannel channel = JumpChannel::gamma_plus;
};

/// H' = H(t) - i Gamma/2 (S+^dag S+ + S-^dag S-) - i kappa/2 sum a^dag a.
SparseOperator effective_hamiltonian(const CavitySystem& system, double t);

/// sqrt(Gamma) S+, sqrt(Gamma) S-, sqrt(kappa) a_1+, a_1-, a_2+, a_2-.
std::array<SparseOperator, kJumpChannels> collapse_operators(const CavitySystem& system);

/// Everything the stochastic and master-equation solvers need; immutable.
class OpenCavitySystem {
public:
    explicit OpenCavitySystem(CavitySystem system);

    const CavitySystem& system() const { return system_; }
    const SystemParams& params() const { return system_.params(); }
    std::size_t dim() const { return system_.dim(); }
    /// -i H'(t)
    const FusedGenerator& generator() const { return generator_; }
    const std::array<SparseOperator, kJumpChannels>& collapse() const { return collapse_; }

private:
    CavitySystem system_;
    FusedGenerator generator_;
    std::array<SparseOperator, kJumpChannels> collapse_;
};

struct TrajectoryResult {
    std::uint64_t seed = 0;
    std::vector<double> times;
    /// Manifold populations of the normalized conditional state.
    std::vector<ManifoldPopulations> populations;
    /// Diagonal populations of the normalized conditional state, one row
    /// per output time.
    Eigen::MatrixXd basis_populations;
    /// Squared norm of the unnormalized state since the last jump.
    std::vector<double> norms;
    std::vector<JumpRecord> jumps;
    StateVector final_state;
};

/// Monte-Carlo wave-function trajectory: non-hermitian drift until the
/// squared norm falls to a uniform threshold r, a jump chosen with
/// probability proportional to ||C_k psi||^2, renormalization, new r.
/// Jump times are located by bisection to 1e-6 of the integration step.
TrajectoryResult run_trajectory(const OpenCavitySystem& model, const StateVector& psi0,
                                std::pair<double, double> span, std::uint64_t seed,
                                const PropagationOptions& options = {});

/// Seed for trajectory `index`: splitmix64(master_seed + (index + 1) * 0x9E3779B97F4A7C15).
std::uint64_t trajectory_seed(std::uint64_t master_seed, std::uint64_t index);

/// Uniform double in (0, 1) from the top 53 bits of one engine draw.
double uniform_open01(std::mt19937_64& engine);

struct EnsembleOptions {
    PropagationOptions propagation;
    /// 0 uses std::thread::hardware_concurrency().
    std::size_t workers = 0;
    bool keep_final_states = true;
};

struct EnsembleResult {
    std::size_t n_traj = 0;
    std::uint64_t master_seed = 0;
    std::vector<std::uint64_t> seeds;
    std::vector<double> times;
    std::vector<ManifoldPopulations> populations;
    Eigen::MatrixXd basis_populations;
    std::vector<std::vector<JumpRecord>> jumps;
    std::vector<StateVector> final_states;
};

/// Averages n_traj trajectories. Partial sums are formed over fixed blocks
/// of consecutive trajectories and combined in block order, so the result
/// is bit-identical for any worker count.
EnsembleResult run_ensemble(const OpenCavitySystem& model, const StateVector& psi0,
                            std::pair<double, double> span, std::size_t n_traj,
                            std::uint64_t master_seed, const EnsembleOptions& options = {});

struct DensitySeries {
    std::vector<double> times;
    std::vector<DenseMatrix> states;
    std::vector<ManifoldPopulations> populations;
    std::vector<double> traces;
};

/// d rho/dt = -i[H, rho] + sum_k (C_k rho C_k^dag - {C_k^dag C_k, rho}/2),
/// integrated with the same RK4 steps as the wave-function solvers.
DensitySeries lindblad_evolve(const OpenCavitySystem& model, const DenseMatrix& rho0,
                              std::pair<double, double> span, const PropagationOptions& options = {});

}  // namespace cqed
