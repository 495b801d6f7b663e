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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "cqed/harness.hpp"
#include "cqed/self_check.hpp"

namespace py = pybind11;
using namespace cqed;

namespace {

py::dict summary_dict(const ExperimentSummary& s) {
    py::dict d;
    d["scheme"] = to_string(s.scheme);
    d["method"] = to_string(s.method);
    d["F"] = s.fidelity.value;
    d["t_star"] = s.fidelity.time;
    d["F_post"] = s.fidelity_post;
    d["S_fixed"] = s.s_fixed;
    d["S_optimal"] = s.s_optimal;
    d["p_coinc"] = s.p_coinc;
    d["n_traj"] = s.n_traj;
    d["seed"] = s.seed;
    return d;
}

py::dict result_dict(const ExperimentResult& r) {
    py::dict d;
    d["summary"] = summary_dict(r.summary);
    d["t"] = r.times;
    Eigen::MatrixXd pops(static_cast<Eigen::Index>(r.populations.size()), 5);
    for (std::size_t k = 0; k < r.populations.size(); ++k)
        for (std::size_t m = 0; m < 5; ++m) pops(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(m)) = r.populations[k][m];
    d["populations"] = pops;
    d["norm"] = r.norms;
    return d;
}

ExperimentConfig apply_overrides(ExperimentConfig c, const py::dict& overrides) {
    for (const auto& [k, v] : overrides) set_config_value(c, py::str(k), py::str(v));
    c.validate();
    return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Cavity-QED polarization-entangled photon pair simulator";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

    py::class_<ExperimentConfig>(m, "Config")
        .def_static("parse", &validate_config, py::arg("text"), "Parse config text.")
        .def_static("load", &load_config, py::arg("path"))
        .def("set", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
            set_config_value(c, k, v);
            c.validate();
        }, py::arg("key"), py::arg("value"))
        .def_property_readonly("scheme", [](const ExperimentConfig& c) { return to_string(c.scheme); })
        .def_property_readonly("method", [](const ExperimentConfig& c) { return to_string(c.method); })
        .def_readwrite("seed", &ExperimentConfig::seed)
        .def_readwrite("n_traj", &ExperimentConfig::n_traj)
        .def_readwrite("workers", &ExperimentConfig::workers)
        .def_readwrite("grid", &ExperimentConfig::grid);

    m.def("config_keys", &config_keys);
    m.def("sweep_parameters", &sweep_parameters);

    m.def("simulate", [](const ExperimentConfig& c, const py::dict& overrides) {
        const auto cfg = apply_overrides(c, overrides);
        ExperimentResult r;
        {
            py::gil_scoped_release release;
            r = simulate(cfg);
        }
        return result_dict(r);
    }, py::arg("config"), py::arg("overrides") = py::dict(),
       "Run one experiment in memory; returns summary, time grid and manifold populations.");

    m.def("run_experiment", [](const ExperimentConfig& c, const std::filesystem::path& out) {
        py::gil_scoped_release release;
        return run_experiment(c, out).summary.fidelity.value;
    }, py::arg("config"), py::arg("out_dir"));

    m.def("sweep", [](const ExperimentConfig& c) {
        std::vector<SweepRow> rows;
        {
            py::gil_scoped_release release;
            rows = sweep_points(c);
        }
        py::list out;
        for (const auto& r : rows) {
            auto d = summary_dict(r.summary);
            d["values"] = r.values;
            out.append(d);
        }
        return out;
    }, py::arg("config"));

    m.def("chsh_fixed", [](const Matrix4c& rho) { return chsh_fixed(rho); }, py::arg("rho"));
    m.def("chsh_optimal", &chsh_optimal, py::arg("rho"));
    m.def("bell_fidelity", &bell_fidelity, py::arg("rho"));
    m.def("correlation_matrix", &correlation_matrix, py::arg("rho"));

    m.def("rabi_oracle", [](double g1, double delta, double t) {
        const auto a = rabi_oracle(g1, delta, t);
        return py::make_tuple(a.initial, a.bright);
    }, py::arg("g1"), py::arg("delta"), py::arg("t"), "Closed-form (|I>, |B>) amplitudes.");

    m.def("basis_labels", [](int n_max) {
        std::vector<std::string> out;
        for (const auto& s : Basis::build(n_max).states()) out.push_back(s.label());
        return out;
    }, py::arg("n_max") = 2);

    m.def("self_check", [] {
        std::ostringstream s;
        const bool ok = report_self_check(s);
        return py::make_tuple(ok, s.str());
    });
}
