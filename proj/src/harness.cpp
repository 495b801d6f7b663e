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

#include "cqed/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "cqed/svg.hpp"

namespace cqed {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void fill_postselected(ExperimentSummary& s, const PolarizationState& pol) {
    s.fidelity_post = bell_fidelity(pol.rho);
    s.s_fixed = chsh_fixed(pol.rho);
    s.s_optimal = chsh_optimal(pol.rho);
    s.p_coinc = pol.p_coinc;
}

template <typename ReadOut>
void postselect_or_nan(ExperimentSummary& s, ReadOut&& read_out) {
    try {
        fill_postselected(s, read_out());
    } catch (const NumericalError&) {
        s.fidelity_post = s.s_fixed = s.s_optimal = kNaN;
        s.p_coinc = 0.0;
    } catch (const std::invalid_argument&) {
        // Read-out time still inside a pulse.
        s.fidelity_post = s.s_fixed = s.s_optimal = s.p_coinc = kNaN;
    }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

void prepare_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());
}

}  // namespace

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
    return buf;
}

ExperimentResult simulate(const ExperimentConfig& config, std::ostream* log) {
    config.validate();
    const SystemParams params = system_params(config);
    const auto span = time_span(config);
    if (config.scheme == Scheme::stirap && config.delay && *config.delay <= 0.0 && log)
        *log << "warning: pulse.delay <= 0 puts the pulses in intuitive order\n";

    const CavitySystem system(params);
    const StateVector psi0 = system.initial_state();
    const PropagationOptions options{config.grid, 0.0};

    ExperimentResult result;
    auto& s = result.summary;
    s.scheme = config.scheme;
    s.method = config.method;
    s.n_traj = config.n_traj;
    s.seed = config.seed;

    const bool lossless = params.gamma == 0.0 && params.kappa == 0.0;
    if (config.method == Method::lindblad) {
        const OpenCavitySystem model(system);
        const DenseMatrix rho0 = psi0 * psi0.adjoint();
        auto series = lindblad_evolve(model, rho0, span, options);
        s.fidelity = fidelity(series);
        postselect_or_nan(s, [&] { return postselect_polarization(system, series.states.back(), span.second); });
        result.times = std::move(series.times);
        result.populations = std::move(series.populations);
        result.norms = std::move(series.traces);
    } else if (lossless) {
        auto traj = evolve(system, psi0, span, options);
        s.fidelity = fidelity(traj);
        postselect_or_nan(s, [&] { return postselect_polarization(system, traj.states.back(), span.second); });
        result.times = std::move(traj.times);
        result.populations = std::move(traj.populations);
        result.norms = std::move(traj.norms);
    } else {
        const OpenCavitySystem model(system);
        EnsembleOptions eo;
        eo.propagation = options;
        eo.workers = config.workers;
        auto ens = run_ensemble(model, psi0, span, config.n_traj, config.seed, eo);
        s.fidelity = fidelity(ens);
        postselect_or_nan(s, [&] { return postselect_polarization(system, ens); });
        result.norms.resize(ens.times.size());
        for (std::size_t r = 0; r < ens.times.size(); ++r)
            result.norms[r] = ens.basis_populations.row(static_cast<Eigen::Index>(r)).sum();
        result.times = std::move(ens.times);
        result.populations = std::move(ens.populations);
    }
    return result;
}

std::string timeseries_csv(const ExperimentResult& r) {
    std::ostringstream out;
    out << "t,P_I,P_B,P_D,P_E+,P_E-,norm\n";
    for (std::size_t k = 0; k < r.times.size(); ++k) {
        out << format_number(r.times[k]);
        for (double p : r.populations[k]) out << ',' << format_number(p);
        out << ',' << format_number(r.norms[k]) << '\n';
    }
    return out.str();
}

std::string summary_csv(const ExperimentSummary& s) {
    std::ostringstream out;
    out << "scheme,method,F,t_star,F_post,S_fixed,S_optimal,p_coinc,n_traj,seed\n";
    out << to_string(s.scheme) << ',' << to_string(s.method) << ',' << format_number(s.fidelity.value)
        << ',' << format_number(s.fidelity.time) << ',' << format_number(s.fidelity_post) << ','
        << format_number(s.s_fixed) << ',' << format_number(s.s_optimal) << ','
        << format_number(s.p_coinc) << ',' << s.n_traj << ',' << s.seed << '\n';
    return out.str();
}

ExperimentResult run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                                std::ostream* log) {
    auto result = simulate(config, log);
    prepare_dir(out_dir);
    write_file(out_dir / config.timeseries_file, timeseries_csv(result));
    write_file(out_dir / config.summary_file, summary_csv(result.summary));
    if (config.svg) {
        std::vector<Series> series;
        const char* names[] = {"P_I", "P_B", "P_D", "P_E+", "P_E-"};
        for (std::size_t m = 0; m < 5; ++m) {
            Series ser{names[m], {}};
            for (const auto& p : result.populations) ser.y.push_back(p[m]);
            series.push_back(std::move(ser));
        }
        auto svg_name = std::filesystem::path(config.timeseries_file).replace_extension(".svg");
        write_file(out_dir / svg_name,
                   svg_line_plot("Manifold populations (" + to_string(config.scheme) + ")", "t",
                                 result.times, series));
    }
    return result;
}

std::vector<SweepRow> sweep_points(const ExperimentConfig& config, std::ostream* log) {
    config.validate();
    if (config.sweep.empty()) throw ConfigError("sweep.x.param: a sweep needs at least one axis");
    const auto& ax = config.sweep;
    const std::size_t nx = ax[0].steps;
    const std::size_t ny = ax.size() > 1 ? ax[1].steps : 1;
    std::vector<SweepRow> rows(nx * ny);
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j) {
            auto& row = rows[i * ny + j];
            row.values.push_back(ax[0].value(i));
            if (ax.size() > 1) row.values.push_back(ax[1].value(j));
        }
    // Validate every point before spending time on any of them.
    std::vector<ExperimentConfig> points(rows.size(), config);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        points[k].sweep.clear();
        points[k].workers = 1;
        for (std::size_t a = 0; a < ax.size(); ++a) set_sweep_parameter(points[k], ax[a].param, rows[k].values[a]);
        points[k].validate();
        (void)system_params(points[k]);
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex mutex;
    auto worker = [&] {
        try {
            for (std::size_t k = next++; k < rows.size(); k = next++)
                rows[k].summary = simulate(points[k]).summary;
        } catch (...) {
            std::lock_guard lock(mutex);
            if (!failure) failure = std::current_exception();
            next = rows.size();
        }
    };
    std::size_t workers = config.workers ? config.workers : std::thread::hardware_concurrency();
    workers = std::clamp<std::size_t>(workers, 1, rows.size());
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    if (log && config.scheme == Scheme::stirap && config.delay && *config.delay <= 0.0)
        *log << "warning: pulse.delay <= 0 puts the pulses in intuitive order\n";
    return rows;
}

std::string sweep_csv(const ExperimentConfig& config, const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    for (const auto& a : config.sweep) out << a.param << ',';
    out << "F,t_star,F_post,S_fixed,S_optimal,p_coinc\n";
    for (const auto& r : rows) {
        for (double v : r.values) out << format_number(v) << ',';
        const auto& s = r.summary;
        out << format_number(s.fidelity.value) << ',' << format_number(s.fidelity.time) << ','
            << format_number(s.fidelity_post) << ',' << format_number(s.s_fixed) << ','
            << format_number(s.s_optimal) << ',' << format_number(s.p_coinc) << '\n';
    }
    return out.str();
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                                std::ostream* log) {
    auto rows = sweep_points(config, log);
    prepare_dir(out_dir);
    write_file(out_dir / config.sweep_file, sweep_csv(config, rows));
    if (config.svg) {
        const auto svg_name = std::filesystem::path(config.sweep_file).replace_extension(".svg");
        const auto& ax = config.sweep;
        std::vector<double> f;
        for (const auto& r : rows) f.push_back(r.summary.fidelity.value);
        std::string svg;
        if (ax.size() == 1) {
            std::vector<double> x, s;
            for (const auto& r : rows) {
                x.push_back(r.values[0]);
                s.push_back(r.summary.s_fixed);
            }
            svg = svg_line_plot("Sweep (" + to_string(config.scheme) + ")", ax[0].param, x,
                                {{"F", f}, {"S_fixed", s}});
        } else {
            std::vector<double> x, y;
            for (std::size_t i = 0; i < ax[0].steps; ++i) x.push_back(ax[0].value(i));
            for (std::size_t j = 0; j < ax[1].steps; ++j) y.push_back(ax[1].value(j));
            svg = svg_heatmap("Fidelity (" + to_string(config.scheme) + ")", ax[0].param, ax[1].param, x, y, f);
        }
        write_file(out_dir / svg_name, svg);
    }
    return rows;
}

}  // namespace cqed
