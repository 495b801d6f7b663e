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
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cqed/pulses.hpp"
#include "cqed/types.hpp"

namespace cqed {

/// Atomic levels of the V system; the enumerator order (c < a < b) is the
/// basis ordering.
enum class Level : std::uint8_t { c = 0, a = 1, b = 2 };

/// Cavity modes, in occupation-array order: 1+, 1-, 2+, 2-.
enum class Mode : std::uint8_t { p1 = 0, m1 = 1, p2 = 2, m2 = 3 };

/// Circular polarization branch; + couples |a>, - couples |b>.
enum class Branch : std::uint8_t { plus, minus };

std::string to_string(Level level);
std::string to_string(Mode mode);

struct BasisState {
    Level atom = Level::c;
    std::array<int, 4> n{};  // photons in modes 1+, 1-, 2+, 2-

    int excitation() const;
    int photons(Mode mode) const { return n[static_cast<std::size_t>(mode)]; }
    std::string label() const;

    auto operator<=>(const BasisState&) const = default;
};

/// Every BasisState with total excitation <= n_max, sorted
/// lexicographically on (atom, n1+, n1-, n2+, n2-) with c < a < b.
class Basis {
public:
    static Basis build(int n_max);

    std::size_t dim() const { return states_.size(); }
    int n_max() const { return n_max_; }
    const BasisState& state(std::size_t k) const { return states_.at(k); }
    const std::vector<BasisState>& states() const { return states_; }

    std::optional<std::size_t> find(const BasisState& s) const;
    /// Like find() but throws std::out_of_range when absent.
    std::size_t index(const BasisState& s) const;

private:
    int n_max_ = 0;
    std::vector<BasisState> states_;
};

/// Compressed-row complex operator with unique (row, column) entries.
class SparseOperator {
public:
    struct Entry {
        std::size_t row;
        std::size_t col;
        Complex value;
    };

    SparseOperator() = default;
    explicit SparseOperator(std::size_t dim) : dim_(dim), row_ptr_(dim + 1, 0) {}

    /// Duplicate (row, col) pairs are summed; exact zeros are dropped.
    static SparseOperator from_entries(std::size_t dim, std::vector<Entry> entries);
    static SparseOperator identity(std::size_t dim);

    std::size_t dim() const { return dim_; }
    std::size_t nonzeros() const { return values_.size(); }
    std::vector<Entry> entries() const;
    Complex element(std::size_t row, std::size_t col) const;

    StateVector apply(const StateVector& v) const;
    /// out += scale * (this * in)
    void apply_add(std::span<const Complex> in, std::span<Complex> out, Complex scale = 1.0) const;

    SparseOperator adjoint() const;
    SparseOperator scaled(Complex s) const;
    DenseMatrix dense() const;

    friend SparseOperator operator+(const SparseOperator& x, const SparseOperator& y);
    friend SparseOperator operator*(const SparseOperator& x, const SparseOperator& y);

    const std::vector<std::size_t>& row_ptr() const { return row_ptr_; }
    const std::vector<std::size_t>& cols() const { return cols_; }
    const std::vector<Complex>& values() const { return values_; }

private:
    std::size_t dim_ = 0;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<std::size_t> cols_;
    std::vector<Complex> values_;
};

SparseOperator mode_annihilator(const Basis& basis, Mode mode);
SparseOperator atomic_lowering(const Basis& basis, Branch branch);
/// Total photon number plus atomic excitation.
SparseOperator excitation_number(const Basis& basis);

/// How cavity-1 couplings are treated once cavity 2 holds a photon.
///
/// `chain` keeps the atom-cavity exchange inside the five-state manifold
/// reachable from |I>: cavity 1 only acts on states whose cavity-2 modes are
/// empty, so the emitted pair cannot be reabsorbed. `full` is the complete
/// rotating-wave interaction on every basis state.
enum class CouplingModel { chain, full };

/// Every physical symbol of one run. Rates and couplings share one unit
/// (typically the peak vacuum Rabi frequency g).
struct SystemParams {
    double g = 1.0;
    PulseSchedule pulse1{PulseShape::gaussian, 1.0, 0.0, 1.0};
    PulseSchedule pulse2{PulseShape::gaussian, 1.0, 0.0, 1.0};
    double delta_plus = 0.0;
    double delta_minus = 0.0;
    double gamma = 0.0;
    double kappa = 0.0;
    double eta = 1.0;
    CouplingModel coupling = CouplingModel::chain;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// The static part and the two coupling shapes of H(t) = H0 + g1(t) V1 + g2(t) V2.
struct HamiltonianTerms {
    SparseOperator detuning;
    SparseOperator cavity1;
    SparseOperator cavity2;
};

HamiltonianTerms hamiltonian_terms(const Basis& basis, const SystemParams& params);

/// Rotating-frame Hamiltonian
/// H(t) = -D+ |a><a| - D- |b><b| + sum_i g_i(t) (a_i+^dag S+ + a_i-^dag S- + h.c.).
SparseOperator hamiltonian(const Basis& basis, const SystemParams& params, double t);

/// |I>, |B>, |D>, |E+>, |E-> expressed over the full basis.
struct ManifoldBasis {
    StateVector initial;
    StateVector bright;
    StateVector dark;
    StateVector bell_plus;
    StateVector bell_minus;

    static constexpr std::size_t size = 5;
    const StateVector& operator[](std::size_t k) const;
};

/// Requires n_max >= 2.
ManifoldBasis manifold_basis(const Basis& basis);

/// Populations on (|I>, |B>, |D>, |E+>, |E->).
using ManifoldPopulations = std::array<double, 5>;

ManifoldPopulations manifold_populations(const StateVector& psi, const ManifoldBasis& manifold);
/// <m|rho|m> for each manifold vector.
ManifoldPopulations manifold_populations(const DenseMatrix& rho, const ManifoldBasis& manifold);

/// <u|A|v> for a sparse operator.
Complex matrix_element(const StateVector& u, const SparseOperator& op, const StateVector& v);

}  // namespace cqed
