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

#include "cqed/self_check.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include "cqed/analysis.hpp"
#include "cqed/config.hpp"

namespace cqed {

namespace {

std::string fmt(double x) {
    std::ostringstream s;
    s.precision(3);
    s << std::scientific << x;
    return s.str();
}

CheckResult check(const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
    try {
        auto [ok, detail] = body();
        return {name, ok, detail};
    } catch (const std::exception& e) {
        return {name, false, std::string("exception: ") + e.what()};
    }
}

}  // namespace

std::vector<CheckResult> run_self_check() {
    std::vector<CheckResult> out;

    out.push_back(check("basis dimensions 1/7/25", [] {
        const bool ok = Basis::build(0).dim() == 1 && Basis::build(1).dim() == 7 && Basis::build(2).dim() == 25;
        return std::pair{ok, std::string()};
    }));

    out.push_back(check("hamiltonian hermitian, conserves excitations, chain structure", [] {
        SystemParams p;
        p.pulse1 = {PulseShape::gaussian, 0.7, 0.0, 2.0};
        p.pulse2 = {PulseShape::gaussian, 1.3, 1.0, 2.0};
        p.delta_plus = p.delta_minus = 0.4;
        const CavitySystem sys(p);
        const DenseMatrix h = hamiltonian(sys.basis(), p, 0.3).dense();
        const DenseMatrix n = excitation_number(sys.basis()).dense();
        const double herm = (h - h.adjoint()).cwiseAbs().maxCoeff();
        const double comm = (h * n - n * h).cwiseAbs().maxCoeff();
        const auto& m = sys.manifold();
        const SparseOperator hs = hamiltonian(sys.basis(), p, 0.3);
        const double chain = std::abs(matrix_element(m.dark, hs, m.initial)) +
                             std::abs(matrix_element(m.dark, hs, m.bell_plus)) +
                             std::abs(matrix_element(m.bright, hs, m.bell_minus));
        const double worst = std::max({herm, comm, chain});
        return std::pair{worst < 1e-12, "max deviation " + fmt(worst)};
    }));

    out.push_back(check("manifold basis orthonormal", [] {
        const auto basis = Basis::build(2);
        const auto m = manifold_basis(basis);
        double worst = 0.0;
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j)
                worst = std::max(worst, std::abs(m[i].dot(m[j]) - (i == j ? 1.0 : 0.0)));
        return std::pair{worst < 1e-12, "max deviation " + fmt(worst)};
    }));

    out.push_back(check("integrator matches Rabi closed form", [] {
        double worst = 0.0;
        const double g1 = 1.0;
        for (double ratio : {0.0, 1.0, 2.0 * std::numbers::sqrt2, 5.0}) {
            const double delta = ratio * g1;
            const double omega = std::sqrt(8 * g1 * g1 + delta * delta);
            SystemParams p;
            p.pulse1 = {PulseShape::square, g1, 0.0, 1e3};
            p.pulse2 = {PulseShape::square, 0.0, 0.0, 1e3};
            p.delta_plus = p.delta_minus = delta;
            const CavitySystem sys(p);
            const double t_end = 4 * std::numbers::pi / omega;
            auto traj = evolve(sys, sys.initial_state(), {0.0, t_end}, {401, 1.0 / (200.0 * omega)});
            for (std::size_t k = 0; k < traj.times.size(); ++k) {
                const auto amp = rabi_oracle(g1, delta, traj.times[k]);
                worst = std::max(worst, std::abs(traj.populations[k][1] - std::norm(amp.bright)));
            }
        }
        return std::pair{worst < 1e-8, "max |P_B - oracle| " + fmt(worst)};
    }));

    out.push_back(check("dark state limits", [] {
        const auto m = manifold_basis(Basis::build(2));
        const double e0 = (dark_state(0.0, m) - m.initial).norm();
        const double e1 = (dark_state(0.5 * std::numbers::pi, m) + m.bell_plus).norm();
        return std::pair{std::max(e0, e1) < 1e-12, "max deviation " + fmt(std::max(e0, e1))};
    }));

    out.push_back(check("lossless two-pulse sequence reaches |E+>", [] {
        ExperimentConfig c;
        c.scheme = Scheme::ro;
        const CavitySystem sys(system_params(c));
        auto traj = evolve(sys, sys.initial_state(), time_span(c));
        const double f = fidelity(traj).value;
        return std::pair{std::abs(f - 1.0) < 1e-6, "F = " + std::to_string(f)};
    }));

    out.push_back(check("CHSH anchors 2*sqrt(2) and sqrt(2)", [] {
        Matrix4c bell = Matrix4c::Zero();
        bell(1, 1) = bell(2, 2) = bell(1, 2) = bell(2, 1) = 0.5;
        Matrix4c mixed = Matrix4c::Zero();
        mixed(1, 1) = mixed(2, 2) = 0.5;
        const double e = std::max(std::abs(chsh_fixed(bell) - 2 * std::numbers::sqrt2),
                                  std::abs(chsh_fixed(mixed) - std::numbers::sqrt2));
        return std::pair{e < 1e-10, "max deviation " + fmt(e)};
    }));

    out.push_back(check("master equation conserves trace", [] {
        SystemParams p;
        p.pulse1 = {PulseShape::gaussian, 1.0, 2.0, 1.0};
        p.pulse2 = {PulseShape::gaussian, 1.0, 0.0, 1.0};
        p.gamma = 0.2;
        p.kappa = 0.1;
        const OpenCavitySystem model{CavitySystem(p)};
        const StateVector psi = model.system().initial_state();
        auto series = lindblad_evolve(model, psi * psi.adjoint(), {-4.0, 6.0}, {101, 0.0});
        double worst = 0.0;
        for (double tr : series.traces) worst = std::max(worst, std::abs(tr - 1.0));
        return std::pair{worst < 1e-8, "max |tr - 1| " + fmt(worst)};
    }));

    return out;
}

bool report_self_check(std::ostream& out) {
    bool all = true;
    for (const auto& r : run_self_check()) {
        out << (r.passed ? "PASS " : "FAIL ") << r.name;
        if (!r.detail.empty()) out << " (" << r.detail << ")";
        out << '\n';
        all = all && r.passed;
    }
    return all;
}

}  // namespace cqed
