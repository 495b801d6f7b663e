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

#include "cqed/statespace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cqed {

std::string to_string(Level level) {
    switch (level) {
    case Level::c: return "c";
    case Level::a: return "a";
    case Level::b: return "b";
    }
    return "?";
}

std::string to_string(Mode mode) {
    switch (mode) {
    case Mode::p1: return "1+";
    case Mode::m1: return "1-";
    case Mode::p2: return "2+";
    case Mode::m2: return "2-";
    }
    return "?";
}

int BasisState::excitation() const {
    return n[0] + n[1] + n[2] + n[3] + (atom == Level::c ? 0 : 1);
}

std::string BasisState::label() const {
    std::string s = "|" + to_string(atom) + ";";
    for (std::size_t m = 0; m < 4; ++m) {
        s += std::to_string(n[m]);
        s += m + 1 < 4 ? "," : ">";
    }
    return s;
}

Basis Basis::build(int n_max) {
    if (n_max < 0) throw std::invalid_argument("build_basis: n_max must be >= 0");
    Basis basis;
    basis.n_max_ = n_max;
    for (Level atom : {Level::c, Level::a, Level::b}) {
        const int budget = n_max - (atom == Level::c ? 0 : 1);
        if (budget < 0) continue;
        // Nested loops emit occupations in lexicographic order.
        for (int n0 = 0; n0 <= budget; ++n0)
            for (int n1 = 0; n0 + n1 <= budget; ++n1)
                for (int n2 = 0; n0 + n1 + n2 <= budget; ++n2)
                    for (int n3 = 0; n0 + n1 + n2 + n3 <= budget; ++n3)
                        basis.states_.push_back(BasisState{atom, {n0, n1, n2, n3}});
    }
    return basis;
}

std::optional<std::size_t> Basis::find(const BasisState& s) const {
    auto it = std::lower_bound(states_.begin(), states_.end(), s);
    if (it == states_.end() || *it != s) return std::nullopt;
    return static_cast<std::size_t>(it - states_.begin());
}

std::size_t Basis::index(const BasisState& s) const {
    if (auto k = find(s)) return *k;
    throw std::out_of_range("state " + s.label() + " is not in the basis");
}

// ---------------------------------------------------------------------------

SparseOperator SparseOperator::from_entries(std::size_t dim, std::vector<Entry> entries) {
    for (const auto& e : entries)
        if (e.row >= dim || e.col >= dim)
            throw std::out_of_range("SparseOperator: entry index exceeds dimension");
    std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
        return x.row != y.row ? x.row < y.row : x.col < y.col;
    });
    SparseOperator op(dim);
    std::size_t k = 0;
    while (k < entries.size()) {
        Entry merged = entries[k++];
        while (k < entries.size() && entries[k].row == merged.row && entries[k].col == merged.col)
            merged.value += entries[k++].value;
        if (merged.value == Complex{}) continue;
        op.cols_.push_back(merged.col);
        op.values_.push_back(merged.value);
        ++op.row_ptr_[merged.row + 1];
    }
    for (std::size_t r = 0; r < dim; ++r) op.row_ptr_[r + 1] += op.row_ptr_[r];
    return op;
}

SparseOperator SparseOperator::identity(std::size_t dim) {
    std::vector<Entry> e;
    for (std::size_t k = 0; k < dim; ++k) e.push_back({k, k, 1.0});
    return from_entries(dim, std::move(e));
}

std::vector<SparseOperator::Entry> SparseOperator::entries() const {
    std::vector<Entry> out;
    out.reserve(values_.size());
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
            out.push_back({r, cols_[k], values_[k]});
    return out;
}

Complex SparseOperator::element(std::size_t row, std::size_t col) const {
    for (std::size_t k = row_ptr_.at(row); k < row_ptr_[row + 1]; ++k)
        if (cols_[k] == col) return values_[k];
    return {};
}

StateVector SparseOperator::apply(const StateVector& v) const {
    if (static_cast<std::size_t>(v.size()) != dim_)
        throw std::invalid_argument("SparseOperator::apply: dimension mismatch");
    StateVector out = StateVector::Zero(v.size());
    apply_add({v.data(), dim_}, {out.data(), dim_});
    return out;
}

void SparseOperator::apply_add(std::span<const Complex> in, std::span<Complex> out,
                               Complex scale) const {
    for (std::size_t r = 0; r < dim_; ++r) {
        Complex acc{};
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) acc += values_[k] * in[cols_[k]];
        out[r] += scale * acc;
    }
}

SparseOperator SparseOperator::adjoint() const {
    auto e = entries();
    for (auto& x : e) {
        std::swap(x.row, x.col);
        x.value = std::conj(x.value);
    }
    return from_entries(dim_, std::move(e));
}

SparseOperator SparseOperator::scaled(Complex s) const {
    auto e = entries();
    for (auto& x : e) x.value *= s;
    return from_entries(dim_, std::move(e));
}

DenseMatrix SparseOperator::dense() const {
    DenseMatrix m = DenseMatrix::Zero(dim_, dim_);
    for (const auto& e : entries()) m(e.row, e.col) = e.value;
    return m;
}

SparseOperator operator+(const SparseOperator& x, const SparseOperator& y) {
    if (x.dim() != y.dim()) throw std::invalid_argument("SparseOperator: dimension mismatch");
    auto e = x.entries();
    auto f = y.entries();
    e.insert(e.end(), f.begin(), f.end());
    return SparseOperator::from_entries(x.dim(), std::move(e));
}

SparseOperator operator*(const SparseOperator& x, const SparseOperator& y) {
    if (x.dim() != y.dim()) throw std::invalid_argument("SparseOperator: dimension mismatch");
    std::vector<SparseOperator::Entry> e;
    for (std::size_t r = 0; r < x.dim_; ++r)
        for (std::size_t k = x.row_ptr_[r]; k < x.row_ptr_[r + 1]; ++k) {
            const std::size_t mid = x.cols_[k];
            for (std::size_t j = y.row_ptr_[mid]; j < y.row_ptr_[mid + 1]; ++j)
                e.push_back({r, y.cols_[j], x.values_[k] * y.values_[j]});
        }
    return SparseOperator::from_entries(x.dim(), std::move(e));
}

// ---------------------------------------------------------------------------

SparseOperator mode_annihilator(const Basis& basis, Mode mode) {
    const auto m = static_cast<std::size_t>(mode);
    std::vector<SparseOperator::Entry> e;
    for (std::size_t k = 0; k < basis.dim(); ++k) {
        BasisState s = basis.state(k);
        const int n = s.n[m];
        if (n == 0) continue;
        s.n[m] = n - 1;
        e.push_back({basis.index(s), k, std::sqrt(static_cast<double>(n))});
    }
    return SparseOperator::from_entries(basis.dim(), std::move(e));
}

SparseOperator atomic_lowering(const Basis& basis, Branch branch) {
    const Level upper = branch == Branch::plus ? Level::a : Level::b;
    std::vector<SparseOperator::Entry> e;
    for (std::size_t k = 0; k < basis.dim(); ++k) {
        BasisState s = basis.state(k);
        if (s.atom != upper) continue;
        s.atom = Level::c;
        e.push_back({basis.index(s), k, 1.0});
    }
    return SparseOperator::from_entries(basis.dim(), std::move(e));
}

SparseOperator excitation_number(const Basis& basis) {
    std::vector<SparseOperator::Entry> e;
    for (std::size_t k = 0; k < basis.dim(); ++k)
        e.push_back({k, k, static_cast<double>(basis.state(k).excitation())});
    return SparseOperator::from_entries(basis.dim(), std::move(e));
}

void SystemParams::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw ConfigError(what);
    };
    require(g >= 0.0, "g must be >= 0");
    require(gamma >= 0.0, "gamma must be >= 0");
    require(kappa >= 0.0, "kappa must be >= 0");
    require(eta >= 0.0 && eta <= 1.0, "eta must lie in [0, 1]");
    require(std::isfinite(delta_plus), "delta_plus must be finite");
    require(std::isfinite(delta_minus), "delta_minus must be finite");
    pulse1.validate();
    pulse2.validate();
}

namespace {

// a_{i+}^dag S+ + a_{i-}^dag S- plus hermitian conjugate, for cavity i.
SparseOperator cavity_coupling(const Basis& basis, int cavity, CouplingModel model) {
    const Mode plus = cavity == 1 ? Mode::p1 : Mode::p2;
    const Mode minus = cavity == 1 ? Mode::m1 : Mode::m2;
    std::vector<SparseOperator::Entry> e;
    for (std::size_t k = 0; k < basis.dim(); ++k) {
        const BasisState& s = basis.state(k);
        if (s.atom == Level::c) continue;
        if (model == CouplingModel::chain && cavity == 1 &&
            s.photons(Mode::p2) + s.photons(Mode::m2) > 0)
            continue;
        // Emission |a; n> -> |c; n + 1 in mode i+>, and |b> likewise in i-.
        BasisState t = s;
        t.atom = Level::c;
        const auto m = static_cast<std::size_t>(s.atom == Level::a ? plus : minus);
        t.n[m] += 1;
        const auto target = basis.find(t);
        if (!target) continue;
        const double amp = std::sqrt(static_cast<double>(t.n[m]));
        e.push_back({*target, k, amp});
        e.push_back({k, *target, amp});
    }
    return SparseOperator::from_entries(basis.dim(), std::move(e));
}

}  // namespace

HamiltonianTerms hamiltonian_terms(const Basis& basis, const SystemParams& params) {
    std::vector<SparseOperator::Entry> diag;
    for (std::size_t k = 0; k < basis.dim(); ++k) {
        const Level atom = basis.state(k).atom;
        if (atom == Level::a) diag.push_back({k, k, -params.delta_plus});
        if (atom == Level::b) diag.push_back({k, k, -params.delta_minus});
    }
    return HamiltonianTerms{SparseOperator::from_entries(basis.dim(), std::move(diag)),
                            cavity_coupling(basis, 1, params.coupling),
                            cavity_coupling(basis, 2, params.coupling)};
}

SparseOperator hamiltonian(const Basis& basis, const SystemParams& params, double t) {
    const auto terms = hamiltonian_terms(basis, params);
    return terms.detuning + terms.cavity1.scaled(params.pulse1.evaluate(t)) +
           terms.cavity2.scaled(params.pulse2.evaluate(t));
}

const StateVector& ManifoldBasis::operator[](std::size_t k) const {
    switch (k) {
    case 0: return initial;
    case 1: return bright;
    case 2: return dark;
    case 3: return bell_plus;
    case 4: return bell_minus;
    }
    throw std::out_of_range("ManifoldBasis index");
}

ManifoldBasis manifold_basis(const Basis& basis) {
    if (basis.n_max() < 2) throw std::invalid_argument("manifold_basis: requires n_max >= 2");
    const std::size_t dim = basis.dim();
    auto ket = [&](Level atom, std::array<int, 4> n) {
        StateVector v = StateVector::Zero(dim);
        v(basis.index(BasisState{atom, n})) = 1.0;
        return v;
    };
    const double r = 1.0 / std::numbers::sqrt2;
    // S+^dag a1-^dag |Omega> = |a;0,1,0,0>, S-^dag a1+^dag |Omega> = |b;1,0,0,0>.
    const StateVector up = ket(Level::a, {0, 1, 0, 0});
    const StateVector um = ket(Level::b, {1, 0, 0, 0});
    // a2+^dag a1-^dag |Omega> and a2-^dag a1+^dag |Omega>.
    const StateVector ep = ket(Level::c, {0, 1, 1, 0});
    const StateVector em = ket(Level::c, {1, 0, 0, 1});
    ManifoldBasis mb;
    mb.initial = ket(Level::c, {1, 1, 0, 0});
    mb.bright = r * (up + um);
    mb.dark = r * (up - um);
    mb.bell_plus = r * (ep + em);
    mb.bell_minus = r * (ep - em);
    return mb;
}

ManifoldPopulations manifold_populations(const StateVector& psi, const ManifoldBasis& manifold) {
    if (psi.size() != manifold.initial.size())
        throw std::invalid_argument("manifold_populations: dimension mismatch");
    ManifoldPopulations p{};
    for (std::size_t k = 0; k < ManifoldBasis::size; ++k) p[k] = std::norm(manifold[k].dot(psi));
    return p;
}

ManifoldPopulations manifold_populations(const DenseMatrix& rho, const ManifoldBasis& manifold) {
    if (rho.rows() != manifold.initial.size() || rho.cols() != rho.rows())
        throw std::invalid_argument("manifold_populations: dimension mismatch");
    ManifoldPopulations p{};
    for (std::size_t k = 0; k < ManifoldBasis::size; ++k)
        p[k] = manifold[k].dot(rho * manifold[k]).real();
    return p;
}

Complex matrix_element(const StateVector& u, const SparseOperator& op, const StateVector& v) {
    return u.dot(op.apply(v));
}

}  // namespace cqed
