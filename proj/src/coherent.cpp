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

#include "cqed/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cqed {

namespace {

const Complex kMinusI{0.0, -1.0};

}  // namespace

CavitySystem::CavitySystem(SystemParams params, int n_max)
    : params_(std::move(params)), basis_(Basis::build(n_max)) {
    params_.validate();
    manifold_ = manifold_basis(basis_);
    terms_ = hamiltonian_terms(basis_, params_);
    coherent_ = FusedGenerator(terms_.detuning.scaled(kMinusI), terms_.cavity1.scaled(kMinusI),
                               terms_.cavity2.scaled(kMinusI), params_.pulse1, params_.pulse2);
}

StateVector CavitySystem::basis_vector(const BasisState& s) const {
    StateVector v = StateVector::Zero(dim());
    v(basis_.index(s)) = 1.0;
    return v;
}

CoherentTrajectory evolve(const CavitySystem& system, const StateVector& psi0,
                          std::pair<double, double> span, const PropagationOptions& options) {
    if (static_cast<std::size_t>(psi0.size()) != system.dim())
        throw std::invalid_argument("evolve: initial state dimension mismatch");
    if (std::abs(psi0.squaredNorm() - 1.0) > 1e-10)
        throw std::invalid_argument("evolve: initial state must be normalized");
    const double dt_max = options.dt_max > 0.0 ? options.dt_max : default_dt_max(system.params());

    CoherentTrajectory out;
    out.times = make_grid(span.first, span.second, options.grid_points);
    const auto breaks = breakpoints(system.params());
    Rk4Stepper stepper(system.coherent_generator());
    StateVector psi = psi0;

    auto record = [&](const StateVector& v) {
        out.states.push_back(v);
        out.populations.push_back(manifold_populations(v, system.manifold()));
        out.norms.push_back(v.squaredNorm());
    };
    record(psi);
    for (std::size_t k = 0; k + 1 < out.times.size(); ++k) {
        for_each_step(out.times[k], out.times[k + 1], breaks, dt_max,
                      [&](double t, double h) { stepper.step(psi, t, h); });
        if (!psi.allFinite())
            throw NumericalError("evolve: state diverged near t = " + std::to_string(out.times[k + 1]));
        record(psi);
    }
    return out;
}

RabiAmplitudes rabi_oracle(double g1, double delta, double t) {
    const double omega = std::sqrt(8.0 * g1 * g1 + delta * delta);
    if (omega == 0.0) return {0.0, 1.0};
    const double s = std::sin(0.5 * omega * t);
    const double c = std::cos(0.5 * omega * t);
    const Complex i{0.0, 1.0};
    RabiAmplitudes amp;
    amp.bright = std::exp(i * (0.5 * delta * t)) * (-i * (2.0 * std::sqrt(2.0) * g1 / omega) * s);
    amp.initial = std::exp(i * (0.5 * delta * t)) * (c - i * (delta / omega) * s);
    return amp;
}

StateVector dark_state(double theta, const ManifoldBasis& manifold) {
    StateVector v = std::cos(theta) * manifold.initial - std::sin(theta) * manifold.bell_plus;
    return v / v.norm();
}

AdiabaticityReport adiabaticity_report(const CoherentTrajectory& trajectory) {
    if (trajectory.populations.empty())
        throw std::invalid_argument("adiabaticity_report: empty trajectory");
    AdiabaticityReport r;
    for (const auto& p : trajectory.populations) {
        r.max_bright = std::max(r.max_bright, p[1]);
        r.max_dark = std::max(r.max_dark, p[2]);
    }
    r.final_bell_plus = trajectory.populations.back()[3];
    return r;
}

}  // namespace cqed
