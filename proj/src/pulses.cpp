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

#include "cqed/pulses.hpp"

#include "cqed/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace cqed {

double PulseSchedule::evaluate(double t) const {
    switch (shape) {
    case PulseShape::square:
        return t >= center - tau && t < center + tau ? g_peak : 0.0;
    case PulseShape::gaussian: {
        const double x = (t - center) / tau;
        return g_peak * std::exp(-x * x);
    }
    }
    return 0.0;
}

double PulseSchedule::log_value(double t) const {
    if (g_peak <= 0.0) return -std::numeric_limits<double>::infinity();
    switch (shape) {
    case PulseShape::square:
        return t >= center - tau && t < center + tau ? std::log(g_peak)
                                                     : -std::numeric_limits<double>::infinity();
    case PulseShape::gaussian: {
        const double x = (t - center) / tau;
        return std::log(g_peak) - x * x;
    }
    }
    return -std::numeric_limits<double>::infinity();
}

std::pair<double, double> PulseSchedule::support() const {
    const double half = shape == PulseShape::square ? tau : kGaussianCutoff * tau;
    return {center - half, center + half};
}

void PulseSchedule::validate() const {
    if (!(g_peak >= 0.0)) throw ConfigError("pulse g_peak must be >= 0");
    if (!(tau > 0.0)) throw ConfigError("pulse tau must be > 0");
}

double pulse_area(const PulseSchedule& schedule, double rabi_factor) {
    switch (schedule.shape) {
    case PulseShape::square:
        return rabi_factor * 2.0 * schedule.g_peak * schedule.tau;
    case PulseShape::gaussian:
        return rabi_factor * schedule.g_peak * schedule.tau * std::sqrt(std::numbers::pi);
    }
    return 0.0;
}

PulseSchedule calibrate_pi(const PulseSchedule& schedule, double rabi_factor) {
    if (!(schedule.tau > 0.0)) throw std::invalid_argument("calibrate_pi: tau must be > 0");
    if (!(rabi_factor > 0.0)) throw std::invalid_argument("calibrate_pi: rabi factor must be > 0");
    PulseSchedule out = schedule;
    out.g_peak = 1.0;
    out.g_peak = std::numbers::pi / pulse_area(out, rabi_factor);
    return out;
}

double pi_width(PulseShape shape, double g_peak, double rabi_factor) {
    if (!(g_peak > 0.0) || !(rabi_factor > 0.0))
        throw std::invalid_argument("pi_width: g_peak and rabi factor must be > 0");
    PulseSchedule unit{shape, g_peak, 0.0, 1.0};
    return std::numbers::pi / pulse_area(unit, rabi_factor);
}

StirapPair stirap_schedule(double g_peak, double tau, double delay, double midpoint) {
    StirapPair pair;
    pair.cavity2 = PulseSchedule{PulseShape::gaussian, g_peak, midpoint - 0.5 * delay, tau};
    pair.cavity1 = PulseSchedule{PulseShape::gaussian, g_peak, midpoint + 0.5 * delay, tau};
    pair.cavity1.validate();
    pair.cavity2.validate();
    pair.intuitive_order = !(delay > 0.0);
    return pair;
}

double mixing_angle(double g1, double g2) {
    return std::atan2(std::numbers::sqrt2 * g1, g2);
}

double mixing_angle(const PulseSchedule& cavity1, const PulseSchedule& cavity2, double t) {
    const double l1 = cavity1.log_value(t);
    const double l2 = cavity2.log_value(t);
    const bool on1 = std::isfinite(l1);
    const bool on2 = std::isfinite(l2);
    if (on1 && on2) {
        // Ratio in log space so that far Gaussian tails do not underflow.
        const double lr = l1 - l2 + std::log(std::numbers::sqrt2);
        if (lr > 700.0) return 0.5 * std::numbers::pi;
        return std::atan(std::exp(lr));
    }
    if (on1) return 0.5 * std::numbers::pi;
    if (on2) return 0.0;

    // Neither coupling is on: continue from the nearest support edge.
    const auto [a1, b1] = cavity1.support();
    const auto [a2, b2] = cavity2.support();
    if (t < std::min(a1, a2)) return 0.0;
    double best_edge = 0.0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (double edge : {a1, b1, a2, b2}) {
        const double d = std::abs(t - edge);
        if (d < best_dist) {
            best_dist = d;
            best_edge = edge;
        }
    }
    // Limit from inside the support, so square edges count as on.
    auto edge_log = [](const PulseSchedule& p, double t) {
        if (p.shape == PulseShape::square && p.g_peak > 0.0 && std::abs(t - p.center) <= p.tau)
            return std::log(p.g_peak);
        return p.log_value(t);
    };
    const double la = edge_log(cavity1, best_edge);
    const double lb = edge_log(cavity2, best_edge);
    if (!std::isfinite(la) && !std::isfinite(lb)) return 0.0;
    if (!std::isfinite(lb)) return 0.5 * std::numbers::pi;
    if (!std::isfinite(la)) return 0.0;
    return std::atan(std::exp(la - lb + std::log(std::numbers::sqrt2)));
}

}  // namespace cqed
