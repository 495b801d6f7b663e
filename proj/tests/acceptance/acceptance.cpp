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

// Acceptance suite: one PASS/FAIL line per criterion. With no argument every
// criterion runs; `acceptance N` runs criterion N only. Exit status is the
// number of failures.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cqed/harness.hpp"

using namespace cqed;

namespace {

constexpr double kTsirelson = 2.0 * std::numbers::sqrt2;

// Tolerances.
constexpr double kLosslessTol = 1e-6;          // 1
constexpr double kStirapMinF = 0.999;          // 2
constexpr double kStirapMaxBright = 0.01;      // 2
constexpr double kDissipativeFTol = 0.05;              // 3-5
constexpr std::size_t kDissipativeMinTraj = 5000;     // 3-5
constexpr double kChshTol = 1e-9;              // 6
constexpr double kStirapSRel = 0.05;        // 7
constexpr double kRoDropMin = 0.30;            // 8
constexpr double kStirapDropMax = 0.05;        // 8
constexpr double kRabiTol = 1e-8;              // 9
constexpr double kTrajAbsFloor = 0.02;         // 10
constexpr std::size_t kCompareTraj = 10000;    // 10
constexpr double kStructTol = 1e-12;           // 11
constexpr double kDecoupleTol = 1e-10;         // 12
constexpr std::size_t kJumpTraj = 10000;       // 14
constexpr double kJumpSigmas = 3.0;            // 14

struct Outcome {
    bool passed;
    std::string detail;
};

std::string num(double x, int digits = 6) {
    std::ostringstream s;
    s.precision(digits);
    s << x;
    return s.str();
}

ExperimentConfig config_file(const std::string& name) {
    return load_config(std::string(CQED_CONFIG_DIR) + "/" + name);
}

double max_column(const std::vector<ManifoldPopulations>& pops, std::size_t col) {
    double m = 0.0;
    for (const auto& p : pops) m = std::max(m, p[col]);
    return m;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// 1
Outcome lossless_ro() {
    const auto r = simulate(config_file("ro_lossless.cfg"));
    const double f = r.summary.fidelity.value;
    const double last = r.populations.back()[3];
    const bool ok = std::abs(f - 1.0) < kLosslessTol && std::abs(last - 1.0) < kLosslessTol;
    return {ok, "F = " + num(f, 12) + ", final P_E+ = " + num(last, 12)};
}

// 2
Outcome lossless_stirap() {
    const auto r = simulate(config_file("stirap_adiabatic.cfg"));
    const double f = r.summary.fidelity.value;
    const double b = max_column(r.populations, 1);
    return {f >= kStirapMinF && b <= kStirapMaxBright, "F = " + num(f, 8) + ", max P_B = " + num(b, 4)};
}

// 3-5
Outcome dissipative_fidelity(const std::string& file, double target) {
    const auto c = config_file(file);
    const auto r = simulate(c);
    const double f = r.summary.fidelity.value;
    const bool ok = c.n_traj >= kDissipativeMinTraj && c.method == Method::mcwf && std::abs(f - target) <= kDissipativeFTol;
    return {ok, "F = " + num(f, 4) + " (target " + num(target) + ", n_traj " + std::to_string(c.n_traj) + ")"};
}

// 6
Outcome chsh_anchors() {
    Matrix4c bell = Matrix4c::Zero();
    bell(1, 1) = bell(2, 2) = bell(1, 2) = bell(2, 1) = 0.5;
    Matrix4c mixed = Matrix4c::Zero();
    mixed(1, 1) = mixed(2, 2) = 0.5;
    const double s1 = chsh_fixed(bell);
    const double s2 = chsh_fixed(mixed);
    const bool ok = std::abs(s1 - kTsirelson) <= kChshTol && std::abs(s2 - std::numbers::sqrt2) <= kChshTol;
    return {ok, "S(Psi+) = " + num(s1, 15) + ", S(mixture) = " + num(s2, 15)};
}

// 7
Outcome s_versus_decay() {
    std::vector<double> s_ro, s_st;
    for (const auto& [file, out] : {std::pair{"fig5_ro.cfg", &s_ro}, std::pair{"fig5_stirap.cfg", &s_st}}) {
        const auto c = config_file(file);
        for (const auto& row : sweep_points(c)) out->push_back(row.summary.s_fixed);
    }
    bool stirap_ok = s_st.size() == 11;
    for (double s : s_st) stirap_ok = stirap_ok && std::abs(s - kTsirelson) <= kStirapSRel * kTsirelson;
    bool ro_ok = s_ro.size() == 11;
    for (std::size_t k = 1; k < s_ro.size(); ++k) ro_ok = ro_ok && s_ro[k] < s_ro[k - 1];
    std::string d = "STIRAP S in [" + num(*std::min_element(s_st.begin(), s_st.end()), 12) + ", " +
                    num(*std::max_element(s_st.begin(), s_st.end()), 12) + "]" +
                    (stirap_ok ? " ok" : " out of band") + "; RO S from " + num(s_ro.front(), 12) + " to " +
                    num(s_ro.back(), 12) + (ro_ok ? " decreasing" : " not strictly decreasing");
    return {stirap_ok && ro_ok, d};
}

// 8
Outcome detuning_robustness() {
    auto fid = [](const std::string& file, double delta) {
        auto c = config_file(file);
        c.sweep.clear();
        c.delta_plus = delta;
        c.delta_minus = -delta;
        return simulate(c).summary.fidelity.value;
    };
    const double ro0 = fid("fig4_detuning_ro.cfg", 0.0);
    const double st0 = fid("fig4_detuning_stirap.cfg", 0.0);
    for (int k = 1; k <= 40; ++k) {
        const double delta = 0.05 * k;
        const double ro = fid("fig4_detuning_ro.cfg", delta);
        const double st = fid("fig4_detuning_stirap.cfg", delta);
        if (ro <= (1.0 - kRoDropMin) * ro0 && st >= (1.0 - kStirapDropMax) * st0)
            return {true, "delta = " + num(delta) + " g: RO " + num(ro0, 4) + " -> " + num(ro, 4) + ", STIRAP " +
                              num(st0, 4) + " -> " + num(st, 4)};
    }
    return {false, "no delta in (0, 2g] separates the schemes"};
}

// 9
Outcome rabi_oracle_check() {
    double worst = 0.0;
    const double g1 = 1.0;
    for (double ratio : {0.0, 1.0, 2.0 * std::numbers::sqrt2, 5.0}) {
        const double delta = ratio * g1;
        const double omega = std::sqrt(8.0 * g1 * g1 + delta * delta);
        SystemParams p;
        p.pulse1 = {PulseShape::square, g1, 0.0, 1e3};
        p.pulse2 = {PulseShape::square, 0.0, 0.0, 1e3};
        p.delta_plus = p.delta_minus = delta;
        const CavitySystem sys(p);
        const auto traj = evolve(sys, sys.initial_state(), {0.0, 4.0 * std::numbers::pi / omega},
                                 {1001, 1.0 / (200.0 * omega)});
        for (std::size_t k = 0; k < traj.times.size(); ++k) {
            const auto a = rabi_oracle(g1, delta, traj.times[k]);
            const auto& psi = traj.states[k];
            worst = std::max(worst, std::abs(sys.manifold().bright.dot(psi) - a.bright));
            worst = std::max(worst, std::abs(sys.manifold().initial.dot(psi) - a.initial));
        }
    }
    return {worst < kRabiTol, "max amplitude error " + num(worst, 3)};
}

// 10
Outcome trajectories_vs_master() {
    const double tol = std::max(kTrajAbsFloor, 4.0 / std::sqrt(static_cast<double>(kCompareTraj)));
    double worst = 0.0;
    std::string d;
    for (const char* file : {"fig3a.cfg", "fig3b.cfg", "fig3c.cfg"}) {
        auto c = config_file(file);
        c.n_traj = kCompareTraj;
        const OpenCavitySystem model{CavitySystem(system_params(c))};
        const auto span = time_span(c);
        const StateVector psi = model.system().initial_state();
        EnsembleOptions eo;
        eo.propagation = {c.grid, 0.0};
        eo.keep_final_states = false;
        eo.workers = c.workers;
        const auto ens = run_ensemble(model, psi, span, c.n_traj, c.seed, eo);
        const auto me = lindblad_evolve(model, psi * psi.adjoint(), span, eo.propagation);
        double w = 0.0;
        for (std::size_t k = 0; k < ens.times.size(); ++k)
            for (std::size_t m = 0; m < 5; ++m)
                w = std::max(w, std::abs(ens.populations[k][m] - me.populations[k][m]));
        worst = std::max(worst, w);
        d += std::string(file) + " " + num(w, 3) + "; ";
    }
    return {worst <= tol, d + "tolerance " + num(tol, 3)};
}

// 11
Outcome structural_identities() {
    double worst = 0.0;
    for (auto model : {CouplingModel::chain, CouplingModel::full}) {
        for (double dd : {0.0, 0.8}) {
            SystemParams p;
            p.coupling = model;
            p.pulse1 = {PulseShape::gaussian, 0.9, 1.0, 2.0};
            p.pulse2 = {PulseShape::gaussian, 1.2, -1.0, 2.0};
            p.delta_plus = 0.5 + dd;
            p.delta_minus = 0.5 - dd;
            const CavitySystem sys(p);
            const DenseMatrix n = excitation_number(sys.basis()).dense();
            const auto& m = sys.manifold();
            for (double t : {-3.0, 0.0, 0.4, 2.5}) {
                const auto hs = hamiltonian(sys.basis(), p, t);
                const DenseMatrix h = hs.dense();
                worst = std::max(worst, (h - h.adjoint()).cwiseAbs().maxCoeff());
                worst = std::max(worst, (h * n - n * h).cwiseAbs().maxCoeff());
                if (model == CouplingModel::chain && dd == 0.0) {
                    for (auto [u, v] : {std::pair{&m.dark, &m.initial}, std::pair{&m.dark, &m.bell_plus},
                                        std::pair{&m.bright, &m.bell_minus}, std::pair{&m.initial, &m.bell_plus},
                                        std::pair{&m.initial, &m.bell_minus}, std::pair{&m.dark, &m.bright}})
                        worst = std::max(worst, std::abs(matrix_element(*u, hs, *v)));
                }
            }
            for (std::size_t i = 0; i < 5; ++i)
                for (std::size_t j = 0; j < 5; ++j)
                    worst = std::max(worst, std::abs(m[i].dot(m[j]) - (i == j ? 1.0 : 0.0)));
        }
    }
    return {worst <= kStructTol, "max deviation " + num(worst, 3)};
}

// 12
Outcome decoupling() {
    double worst = 0.0;
    for (const char* file : {"ro_lossless.cfg", "stirap_adiabatic.cfg", "fig4_detuning_ro.cfg",
                             "fig4_detuning_stirap.cfg"}) {
        for (double mean : {0.0, 0.7, -1.5}) {
            auto c = config_file(file);
            c.sweep.clear();
            c.delta_plus = c.delta_minus = mean;
            const CavitySystem sys(system_params(c));
            const auto traj = evolve(sys, sys.initial_state(), time_span(c), {c.grid, 0.0});
            for (const auto& p : traj.populations) worst = std::max(worst, p[2] + p[4]);
        }
    }
    return {worst < kDecoupleTol, "max P_D + P_E- = " + num(worst, 3)};
}

// 13
Outcome determinism() {
    const auto base = std::filesystem::temp_directory_path() / "cqed_acceptance_determinism";
    std::filesystem::remove_all(base);
    auto run = config_file("fig3b.cfg");
    run.n_traj = 500;
    auto sweep = config_file("fig5_stirap.cfg");
    sweep.method = Method::mcwf;
    sweep.n_traj = 64;
    sweep.grid = 200;
    sweep.sweep[0].steps = 4;
    std::map<std::string, std::string> first;
    bool ok = true;
    for (std::size_t workers : {1, 4, 16}) {
        const auto dir = base / std::to_string(workers);
        run.workers = sweep.workers = workers;
        run_experiment(run, dir);
        run_sweep(sweep, dir);
        for (const auto& name : {run.timeseries_file, run.summary_file, sweep.sweep_file}) {
            const auto bytes = slurp(dir / name);
            if (bytes.empty()) ok = false;
            if (!first.count(name)) first[name] = bytes;
            else ok = ok && first[name] == bytes;
        }
    }
    std::filesystem::remove_all(base);
    return {ok, ok ? "timeseries, summary and sweep CSVs identical for 1, 4, 16 workers" : "CSV bytes differ"};
}

// 14
Outcome jump_statistics() {
    const double kappa = 0.1;
    SystemParams p;
    p.pulse1.g_peak = p.pulse2.g_peak = 0.0;
    p.kappa = kappa;
    const OpenCavitySystem model{CavitySystem(p)};
    const StateVector psi = model.system().basis_vector(BasisState{Level::c, {0, 0, 1, 0}});
    const double t_end = 30.0;
    EnsembleOptions eo;
    eo.propagation = {2, 0.0};
    eo.keep_final_states = false;
    const auto ens = run_ensemble(model, psi, {0.0, t_end}, kJumpTraj, 14, eo);
    std::vector<double> times;
    for (const auto& j : ens.jumps) {
        if (j.size() > 1) return {false, "more than one jump from a single photon"};
        if (!j.empty()) times.push_back(j[0].time);
    }
    std::sort(times.begin(), times.end());
    const double n = static_cast<double>(kJumpTraj);
    double worst = 0.0;
    for (int k = 1; k <= 30; ++k) {
        const double t = t_end * k / 30.0;
        const double cdf = 1.0 - std::exp(-kappa * t);
        const double emp = static_cast<double>(std::upper_bound(times.begin(), times.end(), t) - times.begin()) / n;
        const double sigma = std::sqrt(cdf * (1.0 - cdf) / n);
        worst = std::max(worst, std::abs(emp - cdf) / sigma);
    }
    return {worst <= kJumpSigmas, "max deviation " + num(worst, 3) + " sigma over 30 times"};
}

struct Criterion {
    int id;
    std::string name;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all{
        {1, "lossless Rabi sequence reaches |E+>", lossless_ro},
        {2, "lossless adiabatic STIRAP", lossless_stirap},
        {3, "dissipative Rabi sequence F = 0.74", [] { return dissipative_fidelity("fig3a.cfg", 0.74); }},
        {4, "dissipative STIRAP F = 0.83", [] { return dissipative_fidelity("fig3b.cfg", 0.83); }},
        {5, "cavity-loss dominated STIRAP F = 0.39", [] { return dissipative_fidelity("fig3c.cfg", 0.39); }},
        {6, "CHSH anchors", chsh_anchors},
        {7, "post-selected S versus atomic decay", s_versus_decay},
        {8, "two-photon detuning robustness", detuning_robustness},
        {9, "integrator against the Rabi closed form", rabi_oracle_check},
        {10, "trajectory average against the master equation", trajectories_vs_master},
        {11, "structural identities", structural_identities},
        {12, "dark and antisymmetric states stay empty", decoupling},
        {13, "byte-identical output for any worker count", determinism},
        {14, "single-photon jump-time distribution", jump_statistics},
    };
    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);
    int failures = 0;
    for (const auto& c : all) {
        if (only && c.id != only) continue;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s [%2d] %s: %s\n", o.passed ? "PASS" : "FAIL", c.id, c.name.c_str(), o.detail.c_str());
        std::fflush(stdout);
        failures += o.passed ? 0 : 1;
    }
    return failures;
}
