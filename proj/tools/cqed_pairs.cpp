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

// cqed-pairs: single runs, parameter sweeps and the oracle self-test.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "cqed/harness.hpp"
#include "cqed/self_check.hpp"

namespace {

struct CommonFlags {
    std::string config;
    std::string out = ".";
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> traj;
    std::optional<unsigned> workers;
    bool svg = false;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool need_config) {
    auto* c = cmd->add_option("--config", f.config, "configuration file");
    if (need_config) c->required();
    cmd->add_option("--out", f.out, "output directory");
    cmd->add_option("--seed", f.seed, "master seed");
    cmd->add_option("--traj", f.traj, "number of trajectories");
    cmd->add_option("--workers", f.workers, "worker threads (0 = hardware)");
    cmd->add_flag("--svg", f.svg, "also write SVG plots");
}

cqed::ExperimentConfig resolve(const CommonFlags& f) {
    auto config = cqed::load_config(f.config);
    if (f.seed) config.seed = *f.seed;
    if (f.traj) {
        if (*f.traj == 0) throw cqed::ConfigError("n_traj: must be at least 1");
        config.n_traj = *f.traj;
    }
    if (f.workers) config.workers = *f.workers;
    if (f.svg) config.svg = true;
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cavity-QED polarization-entangled photon pair simulator"};
    app.require_subcommand(1);

    CommonFlags run_flags, sweep_flags, check_flags;
    auto* run = app.add_subcommand("run", "simulate one configuration");
    auto* sweep = app.add_subcommand("sweep", "evaluate a parameter grid");
    auto* check = app.add_subcommand("check", "run the analytic-oracle self-test suite");
    add_common(run, run_flags, true);
    add_common(sweep, sweep_flags, true);
    add_common(check, check_flags, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*check) {
            return cqed::report_self_check(std::cout) ? 0 : 2;
        }
        const CommonFlags& f = *run ? run_flags : sweep_flags;
        const auto config = resolve(f);
        std::filesystem::create_directories(f.out);
        if (*run) {
            const auto r = cqed::run_experiment(config, f.out, &std::cerr);
            std::cout << cqed::summary_csv(r.summary);
        } else {
            const auto rows = cqed::run_sweep(config, f.out, &std::cerr);
            std::cout << rows.size() << " grid points written to "
                      << (std::filesystem::path(f.out) / config.sweep_file).string() << '\n';
        }
        return 0;
    } catch (const cqed::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
