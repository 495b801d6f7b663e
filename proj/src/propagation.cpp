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

#include "cqed/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cqed {

FusedGenerator::FusedGenerator(const SparseOperator& fixed, const SparseOperator& cavity1,
                               const SparseOperator& cavity2, const PulseSchedule& pulse1,
                               const PulseSchedule& pulse2)
    : dim_(fixed.dim()), row_ptr_(fixed.dim() + 1, 0), pulse1_(pulse1), pulse2_(pulse2) {
    if (cavity1.dim() != dim_ || cavity2.dim() != dim_)
        throw std::invalid_argument("FusedGenerator: dimension mismatch");
    const SparseOperator* parts[3] = {&fixed, &cavity1, &cavity2};
    for (std::size_t r = 0; r < dim_; ++r) {
        for (unsigned char tag = 0; tag < 3; ++tag) {
            const auto& op = *parts[tag];
            for (std::size_t k = op.row_ptr()[r]; k < op.row_ptr()[r + 1]; ++k) {
                cols_.push_back(op.cols()[k]);
                values_.push_back(op.values()[k]);
                tags_.push_back(tag);
            }
        }
        row_ptr_[r + 1] = cols_.size();
    }
}

void FusedGenerator::apply(double t, double mid, const Complex* in, Complex* out) const {
    const auto c = coefficients(t, mid);
    for (std::size_t r = 0; r < dim_; ++r) {
        Complex acc{};
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
            acc += c[tags_[k]] * (values_[k] * in[cols_[k]]);
        out[r] = acc;
    }
}

Rk4Stepper::Rk4Stepper(const FusedGenerator& generator)
    : gen_(&generator),
      k1_(generator.dim()),
      k2_(generator.dim()),
      k3_(generator.dim()),
      k4_(generator.dim()),
      tmp_(generator.dim()) {}

void Rk4Stepper::step(StateVector& y, double t, double h) {
    const double half = 0.5 * h;
    const double mid = t + half;
    gen_->apply(t, mid, y.data(), k1_.data());
    tmp_ = y + half * k1_;
    gen_->apply(mid, mid, tmp_.data(), k2_.data());
    tmp_ = y + half * k2_;
    gen_->apply(mid, mid, tmp_.data(), k3_.data());
    tmp_ = y + h * k3_;
    gen_->apply(t + h, mid, tmp_.data(), k4_.data());
    y += (h / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
}

void for_each_step(double t0, double t1, std::span<const double> breakpoints, double dt_max,
                   const std::function<void(double, double)>& visit) {
    if (!(dt_max > 0.0)) throw std::invalid_argument("dt_max must be > 0");
    if (!(t1 >= t0)) throw std::invalid_argument("time interval must satisfy t1 >= t0");
    if (t1 == t0) return;
    std::vector<double> cuts{t0};
    for (double b : breakpoints)
        if (b > t0 && b < t1) cuts.push_back(b);
    std::sort(cuts.begin() + 1, cuts.end());
    cuts.push_back(t1);
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        const double a = cuts[s];
        const double len = cuts[s + 1] - a;
        if (len <= 0.0) continue;
        const double ratio = len / dt_max;
        const auto n = static_cast<std::size_t>(
            std::max(1.0, std::ceil(std::isfinite(ratio) ? ratio - 1e-9 : 1.0)));
        const double h = len / static_cast<double>(n);
        for (std::size_t k = 0; k < n; ++k) visit(a + static_cast<double>(k) * h, h);
    }
}

std::vector<double> make_grid(double t0, double t1, std::size_t n) {
    if (n < 2) throw std::invalid_argument("output grid needs at least 2 points");
    std::vector<double> g(n);
    for (std::size_t k = 0; k < n; ++k)
        g[k] = t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(n - 1);
    g.back() = t1;
    return g;
}

double default_dt_max(const SystemParams& params) {
    double fastest = 0.0;
    fastest = std::max(fastest, kCavity1RabiFactor * params.pulse1.g_peak);
    fastest = std::max(fastest, kCavity2RabiFactor * params.pulse2.g_peak);
    fastest = std::max({fastest, std::abs(params.delta_plus), std::abs(params.delta_minus),
                        params.gamma, 2.0 * params.kappa});
    if (fastest == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / (50.0 * fastest);
}

std::pair<double, double> default_span(const SystemParams& params) {
    const auto [a1, b1] = params.pulse1.support();
    const auto [a2, b2] = params.pulse2.support();
    return {std::min(a1, a2), std::max(b1, b2)};
}

std::vector<double> breakpoints(const SystemParams& params) {
    std::vector<double> out;
    for (const auto* p : {&params.pulse1, &params.pulse2}) {
        if (p->shape != PulseShape::square) continue;
        const auto [a, b] = p->support();
        out.push_back(a);
        out.push_back(b);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace cqed
