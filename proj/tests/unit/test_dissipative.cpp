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

#include <doctest.h>

#include <cmath>
#include <random>

#include "cqed/config.hpp"
#include "cqed/dissipative.hpp"

using namespace cqed;

namespace {

// One photon stored in mode 2+, no couplings, cavity loss only.
OpenCavitySystem stored_photon(double kappa) {
    SystemParams p;
    p.pulse1.g_peak = p.pulse2.g_peak = 0.0;
    p.kappa = kappa;
    return OpenCavitySystem(CavitySystem(p));
}

OpenCavitySystem lossy_stirap(const ExperimentConfig& c) { return OpenCavitySystem(CavitySystem(system_params(c))); }

ExperimentConfig short_stirap() {
    ExperimentConfig c;
    c.scheme = Scheme::stirap;
    c.tau = 3.0;
    c.delay = 3.0;
    c.gamma = 0.05;
    c.kappa = 0.02;
    return c;
}

}  // namespace

TEST_CASE("uniform variates stay inside (0, 1)") {
    std::mt19937_64 e(7);
    for (int i = 0; i < 10000; ++i) {
        const double u = uniform_open01(e);
        CHECK((u > 0.0 && u < 1.0));
    }
    CHECK(trajectory_seed(1, 0) != trajectory_seed(1, 1));
    CHECK(trajectory_seed(1, 0) != trajectory_seed(2, 0));
    CHECK(trajectory_seed(5, 3) == trajectory_seed(5, 3));
}

TEST_CASE("effective hamiltonian carries the loss") {
    ExperimentConfig c = short_stirap();
    const CavitySystem sys(system_params(c));
    const DenseMatrix h = effective_hamiltonian(sys, 0.0).dense();
    const DenseMatrix anti = (h - h.adjoint()) / Complex(0.0, 2.0);
    // -(1/2) sum C^dag C
    DenseMatrix expect = DenseMatrix::Zero(h.rows(), h.cols());
    for (const auto& op : collapse_operators(sys)) expect -= 0.5 * (op.adjoint() * op).dense();
    CHECK((anti - expect).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("single lossy photon: jump times and channel") {
    const auto model = stored_photon(0.1);
    StateVector psi = model.system().basis_vector(BasisState{Level::c, {0, 0, 1, 0}});
    int jumped = 0;
    for (std::uint64_t i = 0; i < 200; ++i) {
        const auto tr = run_trajectory(model, psi, {0.0, 10.0}, trajectory_seed(3, i), {11, 0.05});
        CHECK(tr.jumps.size() <= 1);
        if (!tr.jumps.empty()) {
            ++jumped;
            CHECK(tr.jumps[0].channel == JumpChannel::kappa_2p);
            CHECK(cavity_of(tr.jumps[0].channel) == 2);
            CHECK_FALSE(is_atomic(tr.jumps[0].channel));
            CHECK(tr.final_state(0) == Complex(1.0, 0.0));
        }
    }
    // expected 200 (1 - e^-1) = 126.4, sigma 6.8
    CHECK(std::abs(jumped - 126.4) < 4 * 6.8);
}

TEST_CASE("lossless trajectories reproduce the coherent evolution") {
    ExperimentConfig c = short_stirap();
    c.gamma = c.kappa = 0.0;
    const auto model = lossy_stirap(c);
    const auto span = time_span(c);
    const auto tr = run_trajectory(model, model.system().initial_state(), span, 11, {51, 0.0});
    const auto co = evolve(model.system(), model.system().initial_state(), span, {51, 0.0});
    CHECK(tr.jumps.empty());
    for (std::size_t k = 0; k < tr.times.size(); ++k)
        for (std::size_t m = 0; m < 5; ++m) CHECK(std::abs(tr.populations[k][m] - co.populations[k][m]) < 1e-12);
}

TEST_CASE("ensemble is independent of the worker count") {
    const auto c = short_stirap();
    const auto model = lossy_stirap(c);
    const auto span = time_span(c);
    EnsembleOptions o;
    o.propagation.grid_points = 21;
    o.workers = 1;
    const auto a = run_ensemble(model, model.system().initial_state(), span, 100, 9, o);
    o.workers = 3;
    const auto b = run_ensemble(model, model.system().initial_state(), span, 100, 9, o);
    CHECK(a.basis_populations == b.basis_populations);
    for (std::size_t k = 0; k < a.populations.size(); ++k) CHECK(a.populations[k] == b.populations[k]);
    CHECK(a.seeds == b.seeds);
    CHECK_THROWS(run_ensemble(model, model.system().initial_state(), span, 0, 9, o));
}

TEST_CASE("master equation keeps a valid density matrix") {
    const auto c = short_stirap();
    const auto model = lossy_stirap(c);
    const StateVector psi = model.system().initial_state();
    const auto series = lindblad_evolve(model, psi * psi.adjoint(), time_span(c), {41, 0.0});
    for (const auto& rho : series.states) {
        CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(rho.trace().real() == doctest::Approx(1.0).epsilon(1e-9));
        Eigen::SelfAdjointEigenSolver<DenseMatrix> es(rho);
        CHECK(es.eigenvalues().minCoeff() > -1e-9);
    }
    CHECK_THROWS(lindblad_evolve(model, 2.0 * psi * psi.adjoint(), time_span(c)));
}

TEST_CASE("trajectory average approaches the master equation") {
    const auto c = short_stirap();
    const auto model = lossy_stirap(c);
    const auto span = time_span(c);
    const StateVector psi = model.system().initial_state();
    EnsembleOptions o;
    o.propagation.grid_points = 31;
    const auto ens = run_ensemble(model, psi, span, 800, 4, o);
    const auto me = lindblad_evolve(model, psi * psi.adjoint(), span, o.propagation);
    double worst = 0.0;
    for (std::size_t k = 0; k < ens.times.size(); ++k)
        for (std::size_t m = 0; m < 5; ++m)
            worst = std::max(worst, std::abs(ens.populations[k][m] - me.populations[k][m]));
    CHECK(worst < 4.0 / std::sqrt(800.0));
}
