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
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "cqed/analysis.hpp"
#include "cqed/config.hpp"

namespace cqed {

struct ExperimentSummary {
    Scheme scheme = Scheme::stirap;
    Method method = Method::mcwf;
    Fidelity fidelity;
    /// NaN when post-selection has no support.
    double fidelity_post = 0.0;
    double s_fixed = 0.0;
    double s_optimal = 0.0;
    double p_coinc = 0.0;
    std::size_t n_traj = 0;
    std::uint64_t seed = 0;
};

struct ExperimentResult {
    ExperimentSummary summary;
    std::vector<double> times;
    std::vector<ManifoldPopulations> populations;
    /// Squared norm (closed system), trace (master equation) or averaged
    /// total population (trajectories).
    std::vector<double> norms;
};

/// Runs one configuration in memory. Lossless trajectory runs take the
/// closed-system path since every trajectory is identical. Warnings go to
/// `log` when it is non-null.
ExperimentResult simulate(const ExperimentConfig& config, std::ostream* log = nullptr);

/// simulate() plus the time-series CSV, the summary CSV and, when
/// config.svg is set, an SVG plot in `out_dir`.
ExperimentResult run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                                std::ostream* log = nullptr);

struct SweepRow {
    std::vector<double> values;
    ExperimentSummary summary;
};

/// Evaluates every grid point (row-major, x outermost) concurrently; each
/// point is an independent deterministic experiment.
std::vector<SweepRow> sweep_points(const ExperimentConfig& config, std::ostream* log = nullptr);

/// sweep_points() plus the grid CSV (and SVG when requested) in `out_dir`.
std::vector<SweepRow> run_sweep(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                                std::ostream* log = nullptr);

/// Decimal with 12 significant digits.
std::string format_number(double x);

std::string timeseries_csv(const ExperimentResult& result);
std::string summary_csv(const ExperimentSummary& summary);
std::string sweep_csv(const ExperimentConfig& config, const std::vector<SweepRow>& rows);

}  // namespace cqed
