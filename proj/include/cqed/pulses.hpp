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

#include <utility>

namespace cqed {

enum class PulseShape { square, gaussian };

/// Gaussian profiles are treated as negligible beyond this many widths.
inline constexpr double kGaussianCutoff = 4.0;

/// Rabi-frequency prefactors: Omega1 = 2*sqrt(2)*g1 and Omega2 = 2*g2.
inline constexpr double kCavity1RabiFactor = 2.8284271247461903;
inline constexpr double kCavity2RabiFactor = 2.0;

/// Time profile of one atom-cavity coupling g_i(t).
///
/// For a square pulse `tau` is the half-duration and the support is the
/// half-open interval [center - tau, center + tau); for a Gaussian,
/// g(t) = g_peak * exp(-((t - center) / tau)^2).
struct PulseSchedule {
    PulseShape shape = PulseShape::gaussian;
    double g_peak = 0.0;
    double center = 0.0;
    double tau = 1.0;

    double evaluate(double t) const;

    /// Natural log of evaluate(t); -inf where the coupling vanishes.
    double log_value(double t) const;

    /// Interval outside of which the coupling is zero (square) or below
    /// exp(-16) of its peak (Gaussian).
    std::pair<double, double> support() const;

    /// Throws std::invalid_argument on g_peak < 0 or tau <= 0.
    void validate() const;
};

/// rabi_factor * integral of g(t) dt, in closed form.
double pulse_area(const PulseSchedule& schedule, double rabi_factor);

/// Rescales g_peak so that pulse_area(schedule, rabi_factor) == pi.
PulseSchedule calibrate_pi(const PulseSchedule& schedule, double rabi_factor);

/// Half-duration (square) or width (Gaussian) that gives a pi pulse at the
/// given peak coupling.
double pi_width(PulseShape shape, double g_peak, double rabi_factor);

struct StirapPair {
    PulseSchedule cavity1;
    PulseSchedule cavity2;
    /// True when delay <= 0, i.e. cavity 1 does not follow cavity 2.
    bool intuitive_order = false;
};

/// Counterintuitive Gaussian pair centered on `midpoint`: cavity 2 peaks at
/// midpoint - delay/2 and cavity 1 at midpoint + delay/2.
StirapPair stirap_schedule(double g_peak, double tau, double delay, double midpoint = 0.0);

/// Mixing angle from instantaneous couplings, tan(theta) = sqrt(2) g1 / g2.
double mixing_angle(double g1, double g2);

/// Mixing angle along a schedule pair. Where both couplings vanish the
/// value is continued from the nearest support, and is 0 before either
/// pulse has begun.
double mixing_angle(const PulseSchedule& cavity1, const PulseSchedule& cavity2, double t);

}  // namespace cqed
