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

#include "cqed/dissipative.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace cqed {

namespace {

const Complex kMinusI{0.0, -1.0};
constexpr std::size_t kBlockSize = 32;
constexpr double kBisectionTolerance = 1e-6;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

SparseOperator damping(const CavitySystem& system) {
    const auto& basis = system.basis();
    const auto& p = system.params();
    std::vector<SparseOperator::Entry> e;
    for (std::size_t k = 0; k < basis.dim(); ++k) {
        const auto& s = basis.state(k);
        const int photons = s.n[0] + s.n[1] + s.n[2] + s.n[3];
        const double rate = (s.atom == Level::c ? 0.0 : p.gamma) + p.kappa * photons;
        e.push_back({k, k, Complex{0.0, -0.5 * rate}});
    }
    return SparseOperator::from_entries(basis.dim(), std::move(e));
}

void record_state(TrajectoryResult& out, std::size_t row, const StateVector& psi,
                  const ManifoldBasis& manifold) {
    const double n2 = psi.squaredNorm();
    const StateVector cond = psi / std::sqrt(n2);
    out.populations.push_back(manifold_populations(cond, manifold));
    out.basis_populations.row(static_cast<Eigen::Index>(row)) = cond.cwiseAbs2().transpose();
    out.norms.push_back(n2);
}

}  // namespace

std::string to_string(JumpChannel channel) {
    switch (channel) {
    case JumpChannel::gamma_plus: return "gamma+";
    case JumpChannel::gamma_minus: return "gamma-";
    case JumpChannel::kappa_1p: return "kappa1+";
    case JumpChannel::kappa_1m: return "kappa1-";
    case JumpChannel::kappa_2p: return "kappa2+";
    case JumpChannel::kappa_2m: return "kappa2-";
    }
    return "?";
}

bool is_atomic(JumpChannel channel) {
    return channel == JumpChannel::gamma_plus || channel == JumpChannel::gamma_minus;
}

int cavity_of(JumpChannel channel) {
    switch (channel) {
    case JumpChannel::kappa_1p:
    case JumpChannel::kappa_1m: return 1;
    case JumpChannel::kappa_2p:
    case JumpChannel::kappa_2m: return 2;
    default: return 0;
    }
}

SparseOperator effective_hamiltonian(const CavitySystem& system, double t) {
    return hamiltonian(system.basis(), system.params(), t) + damping(system);
}

std::array<SparseOperator, kJumpChannels> collapse_operators(const CavitySystem& system) {
    const auto& basis = system.basis();
    const double sg = std::sqrt(system.params().gamma);
    const double sk = std::sqrt(system.params().kappa);
    return {atomic_lowering(basis, Branch::plus).scaled(sg),
            atomic_lowering(basis, Branch::minus).scaled(sg),
            mode_annihilator(basis, Mode::p1).scaled(sk),
            mode_annihilator(basis, Mode::m1).scaled(sk),
            mode_annihilator(basis, Mode::p2).scaled(sk),
            mode_annihilator(basis, Mode::m2).scaled(sk)};
}

OpenCavitySystem::OpenCavitySystem(CavitySystem system)
    : system_(std::move(system)), collapse_(collapse_operators(system_)) {
    const auto& terms = system_.terms();
    const SparseOperator fixed = terms.detuning + damping(system_);
    generator_ = FusedGenerator(fixed.scaled(kMinusI), terms.cavity1.scaled(kMinusI),
                                terms.cavity2.scaled(kMinusI), system_.params().pulse1,
                                system_.params().pulse2);
}

std::uint64_t trajectory_seed(std::uint64_t master_seed, std::uint64_t index) {
    return splitmix64(master_seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

double uniform_open01(std::mt19937_64& engine) {
    return (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53;
}

TrajectoryResult run_trajectory(const OpenCavitySystem& model, const StateVector& psi0,
                                std::pair<double, double> span, std::uint64_t seed,
                                const PropagationOptions& options) {
    const std::size_t dim = model.dim();
    if (static_cast<std::size_t>(psi0.size()) != dim)
        throw std::invalid_argument("run_trajectory: initial state dimension mismatch");
    if (std::abs(psi0.squaredNorm() - 1.0) > 1e-10)
        throw std::invalid_argument("run_trajectory: initial state must be normalized");
    const double dt_max = options.dt_max > 0.0 ? options.dt_max : default_dt_max(model.params());

    TrajectoryResult out;
    out.seed = seed;
    out.times = make_grid(span.first, span.second, options.grid_points);
    out.basis_populations.resize(static_cast<Eigen::Index>(out.times.size()),
                                 static_cast<Eigen::Index>(dim));
    out.populations.reserve(out.times.size());
    out.norms.reserve(out.times.size());

    std::mt19937_64 engine(seed);
    double threshold = uniform_open01(engine);
    Rk4Stepper stepper(model.generator());
    StateVector psi = psi0;
    StateVector saved(dim), trial(dim), jumped(dim);
    const auto& manifold = model.system().manifold();
    const auto breaks = breakpoints(model.params());

    auto jump = [&](double t) {
        std::array<double, kJumpChannels> weight{};
        double total = 0.0;
        for (std::size_t k = 0; k < kJumpChannels; ++k) {
            weight[k] = model.collapse()[k].apply(psi).squaredNorm();
            total += weight[k];
        }
        if (!(total > 0.0))
            throw NumericalError("run_trajectory: no jump channel available at t = " +
                                 std::to_string(t) + " (seed " + std::to_string(seed) + ")");
        const double pick = uniform_open01(engine) * total;
        std::size_t k = 0;
        double acc = weight[0];
        while (k + 1 < kJumpChannels && (acc <= pick || weight[k] == 0.0)) acc += weight[++k];
        jumped = model.collapse()[k].apply(psi);
        psi = jumped / jumped.norm();
        out.jumps.push_back({t, static_cast<JumpChannel>(k)});
        threshold = uniform_open01(engine);
    };

    // Advance psi across [a, b], jumping whenever the squared norm drops to
    // the current threshold.
    auto advance = [&](double a, double b) {
        while (b > a) {
            const double h = b - a;
            saved = psi;
            stepper.step(psi, a, h);
            if (psi.squaredNorm() > threshold) return;
            double lo = 0.0;
            double hi = h;
            while (hi - lo > kBisectionTolerance * h) {
                const double mid = 0.5 * (lo + hi);
                trial = saved;
                stepper.step(trial, a, mid);
                (trial.squaredNorm() > threshold ? lo : hi) = mid;
            }
            psi = saved;
            stepper.step(psi, a, hi);
            a += hi;
            jump(a);
        }
    };

    record_state(out, 0, psi, manifold);
    for (std::size_t k = 0; k + 1 < out.times.size(); ++k) {
        for_each_step(out.times[k], out.times[k + 1], breaks, dt_max,
                      [&](double t, double h) { advance(t, t + h); });
        if (!psi.allFinite())
            throw NumericalError("run_trajectory: state diverged near t = " +
                                 std::to_string(out.times[k + 1]));
        record_state(out, k + 1, psi, manifold);
    }
    out.final_state = psi / psi.norm();
    return out;
}

EnsembleResult run_ensemble(const OpenCavitySystem& model, const StateVector& psi0,
                            std::pair<double, double> span, std::size_t n_traj,
                            std::uint64_t master_seed, const EnsembleOptions& options) {
    if (n_traj == 0) throw std::invalid_argument("run_ensemble: n_traj must be >= 1");
    const std::size_t n_grid = options.propagation.grid_points;
    const std::size_t dim = model.dim();

    EnsembleResult out;
    out.n_traj = n_traj;
    out.master_seed = master_seed;
    out.seeds.resize(n_traj);
    for (std::size_t i = 0; i < n_traj; ++i) out.seeds[i] = trajectory_seed(master_seed, i);
    out.jumps.resize(n_traj);
    if (options.keep_final_states) out.final_states.resize(n_traj);

    struct BlockSum {
        Eigen::MatrixXd manifold;
        Eigen::MatrixXd basis;
    };
    const std::size_t n_blocks = (n_traj + kBlockSize - 1) / kBlockSize;
    std::vector<BlockSum> blocks(n_blocks);
    std::vector<double> times;
    std::once_flag times_once;

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        try {
            for (std::size_t b = next++; b < n_blocks; b = next++) {
                BlockSum sum{Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_grid), 5),
                             Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_grid),
                                                   static_cast<Eigen::Index>(dim))};
                const std::size_t end = std::min(n_traj, (b + 1) * kBlockSize);
                for (std::size_t i = b * kBlockSize; i < end; ++i) {
                    auto tr = run_trajectory(model, psi0, span, out.seeds[i], options.propagation);
                    for (std::size_t r = 0; r < n_grid; ++r)
                        for (std::size_t m = 0; m < 5; ++m)
                            sum.manifold(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(m)) +=
                                tr.populations[r][m];
                    sum.basis += tr.basis_populations;
                    out.jumps[i] = std::move(tr.jumps);
                    if (options.keep_final_states) out.final_states[i] = std::move(tr.final_state);
                    std::call_once(times_once, [&] { times = tr.times; });
                }
                blocks[b] = std::move(sum);
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = n_blocks;
        }
    };

    std::size_t workers = options.workers ? options.workers : std::thread::hardware_concurrency();
    workers = std::clamp<std::size_t>(workers, 1, n_blocks);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    Eigen::MatrixXd manifold = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_grid), 5);
    out.basis_populations = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_grid),
                                                  static_cast<Eigen::Index>(dim));
    for (const auto& b : blocks) {
        manifold += b.manifold;
        out.basis_populations += b.basis;
    }
    const double inv = 1.0 / static_cast<double>(n_traj);
    manifold *= inv;
    out.basis_populations *= inv;
    out.times = std::move(times);
    out.populations.resize(n_grid);
    for (std::size_t r = 0; r < n_grid; ++r)
        for (std::size_t m = 0; m < 5; ++m)
            out.populations[r][m] = manifold(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(m));
    return out;
}

namespace {

// Right-hand side of the master equation with the jump part supplied by the
// recycling terms C rho C^dag; -iH' rho + (-iH' rho)^dag covers the rest.
class LindbladRhs {
public:
    explicit LindbladRhs(const OpenCavitySystem& model) : model_(&model) {}

    void operator()(double t, double mid, const DenseMatrix& rho, DenseMatrix& out) {
        const auto n = rho.rows();
        drift_.resize(n, n);
        for (Eigen::Index c = 0; c < n; ++c)
            model_->generator().apply(t, mid, rho.col(c).data(), drift_.col(c).data());
        out = drift_ + drift_.adjoint();
        for (const auto& op : model_->collapse()) {
            const auto& rp = op.row_ptr();
            const auto& cols = op.cols();
            const auto& vals = op.values();
            for (std::size_t i = 0; i < op.dim(); ++i)
                for (std::size_t p = rp[i]; p < rp[i + 1]; ++p)
                    for (std::size_t j = 0; j < op.dim(); ++j)
                        for (std::size_t q = rp[j]; q < rp[j + 1]; ++q)
                            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +=
                                vals[p] * rho(static_cast<Eigen::Index>(cols[p]),
                                              static_cast<Eigen::Index>(cols[q])) *
                                std::conj(vals[q]);
        }
    }

private:
    const OpenCavitySystem* model_;
    DenseMatrix drift_;
};

}  // namespace

DensitySeries lindblad_evolve(const OpenCavitySystem& model, const DenseMatrix& rho0,
                              std::pair<double, double> span, const PropagationOptions& options) {
    const auto dim = static_cast<Eigen::Index>(model.dim());
    if (rho0.rows() != dim || rho0.cols() != dim)
        throw std::invalid_argument("lindblad_evolve: density matrix dimension mismatch");
    if ((rho0 - rho0.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("lindblad_evolve: density matrix must be hermitian");
    const double tr0 = rho0.trace().real();
    if (tr0 < -1e-12 || tr0 > 1.0 + 1e-8)
        throw std::invalid_argument("lindblad_evolve: trace must lie in [0, 1]");
    const double dt_max = options.dt_max > 0.0 ? options.dt_max : default_dt_max(model.params());

    DensitySeries out;
    out.times = make_grid(span.first, span.second, options.grid_points);
    const auto breaks = breakpoints(model.params());
    LindbladRhs rhs(model);
    DenseMatrix rho = rho0;
    DenseMatrix k1, k2, k3, k4, tmp;

    auto step = [&](double t, double h) {
        const double mid = t + 0.5 * h;
        rhs(t, mid, rho, k1);
        tmp = rho + 0.5 * h * k1;
        rhs(mid, mid, tmp, k2);
        tmp = rho + 0.5 * h * k2;
        rhs(mid, mid, tmp, k3);
        tmp = rho + h * k3;
        rhs(t + h, mid, tmp, k4);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    };
    auto record = [&] {
        out.states.push_back(rho);
        out.populations.push_back(manifold_populations(rho, model.system().manifold()));
        out.traces.push_back(rho.trace().real());
    };
    record();
    for (std::size_t k = 0; k + 1 < out.times.size(); ++k) {
        for_each_step(out.times[k], out.times[k + 1], breaks, dt_max, step);
        if (!rho.allFinite())
            throw NumericalError("lindblad_evolve: diverged near t = " + std::to_string(out.times[k + 1]));
        record();
    }
    return out;
}

}  // namespace cqed
