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

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "cqed/statespace.hpp"

namespace cqed {

/// Generator L(t) = S + g1(t) V1 + g2(t) V2 stored as one compressed-row
/// table with a coefficient tag per entry, so one pass computes L(t) y.
class FusedGenerator {
public:
    FusedGenerator() = default;
    FusedGenerator(const SparseOperator& fixed, const SparseOperator& cavity1,
                   const SparseOperator& cavity2, const PulseSchedule& pulse1,
                   const PulseSchedule& pulse2);

    std::size_t dim() const { return dim_; }

    /// out = L(t) in. Square pulses are read at `mid`, a point inside the
    /// current step, so a step ending on a pulse edge never sees the pulse
    /// of the neighbouring segment.
    void apply(double t, double mid, const Complex* in, Complex* out) const;
    void apply(double t, const Complex* in, Complex* out) const { apply(t, t, in, out); }

    std::array<double, 3> coefficients(double t, double mid) const {
        return {1.0, sample(pulse1_, t, mid), sample(pulse2_, t, mid)};
    }
    std::array<double, 3> coefficients(double t) const { return coefficients(t, t); }

private:
    static double sample(const PulseSchedule& p, double t, double mid) {
        return p.evaluate(p.shape == PulseShape::square ? mid : t);
    }

    std::size_t dim_ = 0;
    std::vector<std::size_t> row_ptr_;
    std::vector<std::size_t> cols_;
    std::vector<Complex> values_;
    std::vector<unsigned char> tags_;
    PulseSchedule pulse1_;
    PulseSchedule pulse2_;
};

/// Classical fourth-order Runge-Kutta for y' = L(t) y with reusable scratch.
class Rk4Stepper {
public:
    explicit Rk4Stepper(const FusedGenerator& generator);

    void step(StateVector& y, double t, double h);

private:
    const FusedGenerator* gen_;
    StateVector k1_, k2_, k3_, k4_, tmp_;
};

/// Splits [t0, t1] into equal steps no longer than dt_max, cutting at every
/// breakpoint inside the interval. Calls visit(t, h) for each step in order.
void for_each_step(double t0, double t1, std::span<const double> breakpoints, double dt_max,
                   const std::function<void(double, double)>& visit);

/// `n` evenly spaced points with exact endpoints.
std::vector<double> make_grid(double t0, double t1, std::size_t n);

/// Default step bound: 1/50 of the fastest time scale in the parameters.
double default_dt_max(const SystemParams& params);

/// Union of both pulse supports.
std::pair<double, double> default_span(const SystemParams& params);

/// Points where the couplings are discontinuous (square-pulse edges).
std::vector<double> breakpoints(const SystemParams& params);

}  // namespace cqed
