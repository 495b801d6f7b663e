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

#include "cqed/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "cqed/pulses.hpp"

namespace cqed {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& key, const std::string& text) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    if (!text.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v))
        throw ConfigError(key + ": expected a finite number, got '" + text + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& text) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ConfigError(key + ": expected a non-negative integer, got '" + text + "'");
    return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw ConfigError(key + ": expected true or false, got '" + text + "'");
}

SweepAxis& axis(ExperimentConfig& c, std::size_t k) {
    if (c.sweep.size() <= k) c.sweep.resize(k + 1);
    return c.sweep[k];
}

using Setter = std::function<void(ExperimentConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = [] {
        std::map<std::string, Setter> t;
        auto number = [&t](const std::string& key, double ExperimentConfig::*field) {
            t[key] = [field](ExperimentConfig& c, const std::string& k, const std::string& v) {
                c.*field = parse_double(k, v);
            };
        };
        auto optional_number = [&t](const std::string& key, std::optional<double> ExperimentConfig::*field) {
            t[key] = [field](ExperimentConfig& c, const std::string& k, const std::string& v) {
                c.*field = parse_double(k, v);
            };
        };
        auto text = [&t](const std::string& key, std::string ExperimentConfig::*field) {
            t[key] = [field](ExperimentConfig& c, const std::string& k, const std::string& v) {
                if (v.empty()) throw ConfigError(k + ": empty value");
                c.*field = v;
            };
        };
        t["scheme"] = [](ExperimentConfig& c, const std::string& k, const std::string& v) {
            if (v == "ro") c.scheme = Scheme::ro;
            else if (v == "stirap") c.scheme = Scheme::stirap;
            else throw ConfigError(k + ": expected ro or stirap, got '" + v + "'");
        };
        t["method"] = [](ExperimentConfig& c, const std::string& k, const std::string& v) {
            if (v == "mcwf") c.method = Method::mcwf;
            else if (v == "lindblad") c.method = Method::lindblad;
            else throw ConfigError(k + ": expected mcwf or lindblad, got '" + v + "'");
        };
        t["coupling"] = [](ExperimentConfig& c, const std::string& k, const std::string& v) {
            if (v == "chain") c.coupling = CouplingModel::chain;
            else if (v == "full") c.coupling = CouplingModel::full;
            else throw ConfigError(k + ": expected chain or full, got '" + v + "'");
        };
        number("g", &ExperimentConfig::g);
        number("delta_plus", &ExperimentConfig::delta_plus);
        number("delta_minus", &ExperimentConfig::delta_minus);
        number("gamma", &ExperimentConfig::gamma);
        number("kappa", &ExperimentConfig::kappa);
        number("eta", &ExperimentConfig::eta);
        t["pulse.shape"] = [](ExperimentConfig& c, const std::string& k, const std::string& v) {
            if (v == "square") c.shape = PulseShape::square;
            else if (v == "gaussian") c.shape = PulseShape::gaussian;
            else throw ConfigError(k + ": expected square or gaussian, got '" + v + "'");
        };
        optional_number("pulse.g_peak", &ExperimentConfig::g_peak);
        optional_number("pulse.tau", &ExperimentConfig::tau);
        optional_number("pulse.delay", &ExperimentConfig::delay);
        number("pulse.gap", &ExperimentConfig::gap);
        optional_number("pulse.center", &ExperimentConfig::center);
        optional_number("t_start", &ExperimentConfig::t_start);
        optional_number("t_end", &ExperimentConfig::t_end);
        t["grid"] = [](ExperimentConfig& c, const std::string& k, const std::string& v) {
            c.grid = parse_u64(k, v);
        };
        t["n_traj"] = [](ExperimentConfig& c, const std::string& k, const std::string& v) {
            c.n_traj = parse_u64(k, v);
        };
        t["seed"] = [](ExperimentConfig& c, const std::string& k, const std::string& v) {
            c.seed = parse_u64(k, v);
        };
        t["workers"] = [](ExperimentConfig& c, const std::string& k, const std::string& v) {
            c.workers = parse_u64(k, v);
        };
        text("output.timeseries", &ExperimentConfig::timeseries_file);
        text("output.summary", &ExperimentConfig::summary_file);
        text("output.sweep", &ExperimentConfig::sweep_file);
        t["output.svg"] = [](ExperimentConfig& c, const std::string& k, const std::string& v) {
            c.svg = parse_bool(k, v);
        };
        for (std::size_t a = 0; a < 2; ++a) {
            const std::string p = a == 0 ? "sweep.x." : "sweep.y.";
            t[p + "param"] = [a](ExperimentConfig& c, const std::string& k, const std::string& v) {
                const auto& names = sweep_parameters();
                if (std::find(names.begin(), names.end(), v) == names.end())
                    throw ConfigError(k + ": '" + v + "' is not a sweepable parameter");
                axis(c, a).param = v;
            };
            t[p + "min"] = [a](ExperimentConfig& c, const std::string& k, const std::string& v) {
                axis(c, a).min = parse_double(k, v);
            };
            t[p + "max"] = [a](ExperimentConfig& c, const std::string& k, const std::string& v) {
                axis(c, a).max = parse_double(k, v);
            };
            t[p + "steps"] = [a](ExperimentConfig& c, const std::string& k, const std::string& v) {
                axis(c, a).steps = parse_u64(k, v);
            };
        }
        return t;
    }();
    return table;
}

void require(bool ok, const std::string& key, const std::string& what) {
    if (!ok) throw ConfigError(key + ": " + what);
}

}  // namespace

double SweepAxis::value(std::size_t k) const {
    if (steps < 2) return min;
    return min + (max - min) * static_cast<double>(k) / static_cast<double>(steps - 1);
}

const std::vector<std::string>& sweep_parameters() {
    static const std::vector<std::string> names = {
        "g",         "gamma",      "kappa",        "eta",        "delta_plus",  "delta_minus",
        "delta_mean", "delta_diff", "pulse.g_peak", "pulse.tau", "pulse.delay", "pulse.gap"};
    return names;
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& [name, _] : setters()) k.push_back(name);
        return k;
    }();
    return keys;
}

void set_config_value(ExperimentConfig& config, const std::string& key, const std::string& value) {
    const auto& table = setters();
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError("unknown key '" + key + "'");
    it->second(config, key, value);
}

void set_sweep_parameter(ExperimentConfig& c, const std::string& param, double value) {
    if (param == "g") c.g = value;
    else if (param == "gamma") c.gamma = value;
    else if (param == "kappa") c.kappa = value;
    else if (param == "eta") c.eta = value;
    else if (param == "delta_plus") c.delta_plus = value;
    else if (param == "delta_minus") c.delta_minus = value;
    else if (param == "delta_mean" || param == "delta_diff") {
        const double mean = 0.5 * (c.delta_plus + c.delta_minus);
        const double diff = 0.5 * (c.delta_plus - c.delta_minus);
        const double m = param == "delta_mean" ? value : mean;
        const double d = param == "delta_diff" ? value : diff;
        c.delta_plus = m + d;
        c.delta_minus = m - d;
    } else if (param == "pulse.g_peak") c.g_peak = value;
    else if (param == "pulse.tau") c.tau = value;
    else if (param == "pulse.delay") c.delay = value;
    else if (param == "pulse.gap") c.gap = value;
    else throw ConfigError("'" + param + "' is not a sweepable parameter");
}

void ExperimentConfig::validate() const {
    require(g >= 0.0, "g", "must be >= 0");
    require(gamma >= 0.0, "gamma", "must be >= 0");
    require(kappa >= 0.0, "kappa", "must be >= 0");
    require(eta >= 0.0 && eta <= 1.0, "eta", "must lie in [0, 1]");
    if (g_peak) require(*g_peak >= 0.0, "pulse.g_peak", "must be >= 0");
    if (tau) require(*tau > 0.0, "pulse.tau", "must be > 0");
    require(gap >= 0.0, "pulse.gap", "must be >= 0");
    require(grid >= 2, "grid", "must be >= 2");
    require(n_traj >= 1, "n_traj", "must be >= 1");
    if (scheme == Scheme::stirap)
        require(!shape || *shape == PulseShape::gaussian, "pulse.shape", "stirap requires gaussian pulses");
    if (scheme == Scheme::ro) {
        const double peak = g_peak.value_or(g);
        require(peak > 0.0 || tau.has_value(), "pulse.g_peak", "ro needs a positive peak coupling or pulse.tau");
    } else {
        require(g_peak.value_or(g) >= 0.0, "pulse.g_peak", "must be >= 0");
    }
    if (t_start && t_end) require(*t_end > *t_start, "t_end", "must exceed t_start");
    for (std::size_t a = 0; a < sweep.size(); ++a) {
        const std::string p = a == 0 ? "sweep.x." : "sweep.y.";
        require(!sweep[a].param.empty(), p + "param", "missing");
        require(sweep[a].steps >= 2, p + "steps", "must be >= 2");
    }
}

ExperimentConfig validate_config(std::string_view text) {
    ExperimentConfig config;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no) + ", column " +
                              std::to_string(line.find_first_not_of(" \t") + 1) +
                              ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("line " + std::to_string(line_no) + ", column 1: missing key");
        try {
            set_config_value(config, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    config.validate();
    return config;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return validate_config(ss.str());
}

SystemParams system_params(const ExperimentConfig& c) {
    c.validate();
    SystemParams p;
    p.g = c.g;
    p.delta_plus = c.delta_plus;
    p.delta_minus = c.delta_minus;
    p.gamma = c.gamma;
    p.kappa = c.kappa;
    p.eta = c.eta;
    p.coupling = c.coupling;
    const double peak = c.g_peak.value_or(c.g);
    if (c.scheme == Scheme::stirap) {
        const double tau = c.tau.value_or(c.g > 0.0 ? 20.0 / c.g : 20.0);
        const auto pair = stirap_schedule(peak, tau, c.delay.value_or(tau), c.center.value_or(0.0));
        p.pulse1 = pair.cavity1;
        p.pulse2 = pair.cavity2;
        return p;
    }
    const PulseShape shape = c.shape.value_or(PulseShape::square);
    PulseSchedule s1{shape, peak, 0.0, 1.0};
    PulseSchedule s2{shape, peak, 0.0, 1.0};
    if (c.tau) {
        s1.tau = s2.tau = *c.tau;
        s1 = calibrate_pi(s1, kCavity1RabiFactor);
        s2 = calibrate_pi(s2, kCavity2RabiFactor);
    } else {
        s1.tau = pi_width(shape, peak, kCavity1RabiFactor);
        s2.tau = pi_width(shape, peak, kCavity2RabiFactor);
    }
    const double half1 = s1.support().second - s1.center;
    const double half2 = s2.support().second - s2.center;
    s1.center = c.center.value_or(half1);
    s2.center = s1.center + half1 + c.gap + half2;
    p.pulse1 = s1;
    p.pulse2 = s2;
    return p;
}

std::pair<double, double> time_span(const ExperimentConfig& config) {
    const auto p = system_params(config);
    auto span = default_span(p);
    if (config.t_start) span.first = *config.t_start;
    if (config.t_end) span.second = *config.t_end;
    if (!(span.second > span.first)) throw ConfigError("t_end: must exceed t_start");
    return span;
}

std::string to_string(Scheme scheme) { return scheme == Scheme::ro ? "ro" : "stirap"; }
std::string to_string(Method method) { return method == Method::mcwf ? "mcwf" : "lindblad"; }

}  // namespace cqed
