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
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cqed/propagation.hpp"
#include "cqed/statespace.hpp"

namespace cqed {

enum class Scheme { ro, stirap };
enum class Method { mcwf, lindblad };

struct SweepAxis {
    std::string param;
    double min = 0.0;
    double max = 0.0;
    std::size_t steps = 2;

    double value(std::size_t k) const;
};

/// One experiment as read from a config file. Pulse fields are kept in the
/// scheme-level form; system_params() turns them into two schedules.
struct ExperimentConfig {
    Scheme scheme = Scheme::stirap;
    Method method = Method::mcwf;
    CouplingModel coupling = CouplingModel::chain;

    double g = 1.0;
    double delta_plus = 0.0;
    double delta_minus = 0.0;
    double gamma = 0.0;
    double kappa = 0.0;
    double eta = 1.0;

    std::optional<PulseShape> shape;  // ro: square, stirap: gaussian
    std::optional<double> g_peak;     // defaults to g
    std::optional<double> tau;        // stirap: 20/g; ro: from the pi condition
    std::optional<double> delay;      // stirap: tau
    double gap = 0.0;                 // ro: transit time between the two supports
    std::optional<double> center;     // stirap: midpoint (0); ro: cavity-1 center

    std::optional<double> t_start;
    std::optional<double> t_end;
    std::size_t grid = 1000;
    std::size_t n_traj = 1000;
    std::uint64_t seed = 1;
    std::size_t workers = 0;

    std::string timeseries_file = "timeseries.csv";
    std::string summary_file = "summary.csv";
    std::string sweep_file = "sweep.csv";
    bool svg = false;

    std::vector<SweepAxis> sweep;

    /// Throws ConfigError naming the offending key.
    void validate() const;
};

/// Parses flat `key = value` text with `#` comments. Unknown keys, malformed
/// numbers and out-of-range values raise ConfigError with the line number.
ExperimentConfig validate_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

/// Applies one `key = value` assignment; used by the parser and by sweeps.
void set_config_value(ExperimentConfig& config, const std::string& key, const std::string& value);
/// Numeric sweep assignment (see sweep_parameters()).
void set_sweep_parameter(ExperimentConfig& config, const std::string& param, double value);
/// Parameter names accepted by sweep.x.param / sweep.y.param.
const std::vector<std::string>& sweep_parameters();
/// Every recognized configuration key.
const std::vector<std::string>& config_keys();

SystemParams system_params(const ExperimentConfig& config);
std::pair<double, double> time_span(const ExperimentConfig& config);

std::string to_string(Scheme scheme);
std::string to_string(Method method);

}  // namespace cqed
