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

#include <cstddef>
#include <utility>
#include <vector>

#include "cqed/propagation.hpp"
#include "cqed/statespace.hpp"

namespace cqed {

/// Basis, manifold vectors and Hamiltonian pieces for one parameter set.
/// Immutable after construction and safe to share between threads.
class CavitySystem {
public:
    explicit CavitySystem(SystemParams params, int n_max = 2);

    const SystemParams& params() const { return params_; }
    const Basis& basis() const { return basis_; }
    const ManifoldBasis& manifold() const { return manifold_; }
    const HamiltonianTerms& terms() const { return terms_; }
    std::size_t dim() const { return basis_.dim(); }

    /// -i H(t), the closed-system generator.
    const FusedGenerator& coherent_generator() const { return coherent_; }

    StateVector initial_state() const { return manifold_.initial; }
    StateVector basis_vector(const BasisState& s) const;

private:
    SystemParams params_;
    Basis basis_;
    ManifoldBasis manifold_;
    HamiltonianTerms terms_;
    FusedGenerator coherent_;
};

struct PropagationOptions {
    std::size_t grid_points = 1000;
    /// 0 selects default_dt_max(params).
    double dt_max = 0.0;
};

struct CoherentTrajectory {
    std::vector<double> times;
    std::vector<StateVector> states;
    std::vector<ManifoldPopulations> populations;
    std::vector<double> norms;  // squared norms
};

/// Integrates i dpsi/dt = H(t) psi on [span.first, span.second] and stores
/// snapshots on an evenly spaced output grid.
CoherentTrajectory evolve(const CavitySystem& system, const StateVector& psi0,
                          std::pair<double, double> span, const PropagationOptions& options = {});

struct RabiAmplitudes {
    Complex bright;
    Complex initial;
};

/// Closed-form |I> <-> |B> Rabi solution for constant g1, g2 = 0:
/// Omega1 = sqrt(8 g1^2 + Delta^2).
RabiAmplitudes rabi_oracle(double g1, double delta, double t);

/// cos(theta)|I> - sin(theta)|E+>.
StateVector dark_state(double theta, const ManifoldBasis& manifold);

struct AdiabaticityReport {
    double max_bright = 0.0;
    double max_dark = 0.0;
    double final_bell_plus = 0.0;
};

AdiabaticityReport adiabaticity_report(const CoherentTrajectory& trajectory);

}  // namespace cqed
