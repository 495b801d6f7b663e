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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cqed/coherent.hpp"
#include "cqed/statespace.hpp"

using namespace cqed;

namespace {

SystemParams detuned_params(CouplingModel model) {
    SystemParams p;
    p.pulse1 = {PulseShape::gaussian, 0.8, 0.0, 2.0};
    p.pulse2 = {PulseShape::gaussian, 1.1, 1.5, 2.0};
    p.delta_plus = 0.3;
    p.delta_minus = -0.7;
    p.coupling = model;
    return p;
}

double max_abs(const DenseMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("basis sizes and ordering") {
    CHECK(Basis::build(0).dim() == 1);
    CHECK(Basis::build(1).dim() == 7);
    const auto b = Basis::build(2);
    REQUIRE(b.dim() == 25);
    CHECK(b.state(0) == BasisState{Level::c, {0, 0, 0, 0}});
    for (std::size_t k = 1; k < b.dim(); ++k) CHECK(b.state(k - 1) < b.state(k));
    for (const auto& s : b.states()) CHECK(s.excitation() <= 2);
    CHECK(b.index(BasisState{Level::c, {1, 1, 0, 0}}) < b.dim());
    CHECK_FALSE(b.find(BasisState{Level::c, {2, 1, 0, 0}}).has_value());
    CHECK_THROWS(Basis::build(-1));
}

TEST_CASE("ladder operators") {
    const auto b = Basis::build(2);
    const auto a = mode_annihilator(b, Mode::p1);
    const auto from = b.index(BasisState{Level::c, {2, 0, 0, 0}});
    const auto to = b.index(BasisState{Level::c, {1, 0, 0, 0}});
    CHECK(std::abs(a.element(to, from) - std::sqrt(2.0)) < 1e-15);
    const auto s = atomic_lowering(b, Branch::minus);
    CHECK(std::abs(s.element(b.index(BasisState{Level::c, {0, 0, 0, 1}}),
                             b.index(BasisState{Level::b, {0, 0, 0, 1}})) - 1.0) < 1e-15);
    // sum of (a^dag a) over modes plus atomic excitations = excitation number
    SparseOperator n(b.dim());
    for (Mode m : {Mode::p1, Mode::m1, Mode::p2, Mode::m2}) {
        const auto am = mode_annihilator(b, m);
        n = n + am.adjoint() * am;
    }
    for (Branch br : {Branch::plus, Branch::minus}) {
        const auto sl = atomic_lowering(b, br);
        n = n + sl.adjoint() * sl;
    }
    CHECK(max_abs(n.dense() - excitation_number(b).dense()) < 1e-14);
}

TEST_CASE("sparse operator algebra") {
    const auto op = SparseOperator::from_entries(3, {{0, 1, {1.0, 2.0}}, {0, 1, {1.0, 0.0}}, {2, 2, 0.0}});
    CHECK(op.nonzeros() == 1);
    CHECK(op.element(0, 1) == Complex(2.0, 2.0));
    CHECK(op.adjoint().element(1, 0) == Complex(2.0, -2.0));
    StateVector v = StateVector::Zero(3);
    v(1) = 1.0;
    CHECK(op.apply(v)(0) == Complex(2.0, 2.0));
    CHECK(max_abs((op * SparseOperator::identity(3)).dense() - op.dense()) == 0.0);
    CHECK_THROWS(SparseOperator::from_entries(2, {{2, 0, 1.0}}));
}

TEST_CASE("hamiltonian structure") {
    for (auto model : {CouplingModel::chain, CouplingModel::full}) {
        const auto p = detuned_params(model);
        const auto b = Basis::build(2);
        const DenseMatrix n = excitation_number(b).dense();
        for (double t : {-3.0, 0.0, 0.7, 4.0}) {
            const DenseMatrix h = hamiltonian(b, p, t).dense();
            CHECK(max_abs(h - h.adjoint()) < 1e-12);
            CHECK(max_abs(h * n - n * h) < 1e-12);
        }
    }
}

TEST_CASE("manifold chain structure at two-photon resonance") {
    auto p = detuned_params(CouplingModel::chain);
    p.delta_plus = p.delta_minus = 0.4;
    const CavitySystem sys(p);
    const auto& m = sys.manifold();
    const auto h = hamiltonian(sys.basis(), p, 0.5);
    CHECK(std::abs(matrix_element(m.dark, h, m.initial)) < 1e-12);
    CHECK(std::abs(matrix_element(m.dark, h, m.bell_plus)) < 1e-12);
    CHECK(std::abs(matrix_element(m.bright, h, m.bell_minus)) < 1e-12);
    CHECK(std::abs(matrix_element(m.initial, h, m.bell_minus)) < 1e-12);
    // <B|H|I> = 2 sqrt(2) g1 / sqrt(2) * sqrt(2) ... compared against the generalized Rabi split
    const double g1 = p.pulse1.evaluate(0.5);
    CHECK(std::abs(std::abs(matrix_element(m.bright, h, m.initial)) - std::sqrt(2.0) * g1) < 1e-12);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j)
            CHECK(std::abs(m[i].dot(m[j]) - (i == j ? 1.0 : 0.0)) < 1e-12);
}

TEST_CASE("chain model withholds cavity-1 coupling once cavity 2 is loaded") {
    const auto b = Basis::build(2);
    SystemParams p;
    const auto chain = hamiltonian_terms(b, p).cavity1;
    p.coupling = CouplingModel::full;
    const auto full = hamiltonian_terms(b, p).cavity1;
    const auto e = b.index(BasisState{Level::c, {0, 1, 1, 0}});
    const auto up = b.index(BasisState{Level::b, {0, 0, 1, 0}});
    CHECK(std::abs(chain.element(up, e)) == 0.0);
    CHECK(std::abs(full.element(up, e)) > 0.0);
    CHECK(full.nonzeros() > chain.nonzeros());
}

TEST_CASE("populations") {
    const auto b = Basis::build(2);
    const auto m = manifold_basis(b);
    const auto pop = manifold_populations(m.bell_plus, m);
    CHECK(pop[3] == doctest::Approx(1.0));
    CHECK(pop[0] + pop[1] + pop[2] + pop[4] == doctest::Approx(0.0));
    const DenseMatrix rho = 0.5 * (m.dark * m.dark.adjoint() + m.initial * m.initial.adjoint());
    const auto pr = manifold_populations(rho, m);
    CHECK(pr[0] == doctest::Approx(0.5));
    CHECK(pr[2] == doctest::Approx(0.5));
    CHECK_THROWS(manifold_basis(Basis::build(1)));
}

TEST_CASE("parameter validation") {
    SystemParams p;
    p.kappa = -0.1;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p.kappa = 0.0;
    p.eta = 1.5;
    CHECK_THROWS_AS(p.validate(), ConfigError);
}
