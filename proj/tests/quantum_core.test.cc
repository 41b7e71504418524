// Copyright 2026 The mdiqss Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mdiqss/quantum_core.h"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"

using namespace mdiqss;

namespace {

const double r = 1 / std::sqrt(2.0);
const Amplitude I(0, 1);

std::vector<Amplitude> kron(const std::vector<Amplitude>& a, const std::vector<Amplitude>& b) {
    std::vector<Amplitude> out;
    for (auto x : a) {
        for (auto y : b) {
            out.push_back(x * y);
        }
    }
    return out;
}

void expect_amplitudes(const StateVector& s, const std::vector<Amplitude>& want) {
    ASSERT_EQ(s.dimension(), want.size());
    for (std::size_t k = 0; k < want.size(); k++) {
        EXPECT_NEAR(std::abs(s[k] - want[k]), 0, 1e-12) << "index " << k;
    }
}

}  // namespace

TEST(quantum_core, eigenstate_vectors) {
    expect_amplitudes(eigenstate(PauliBasis::Z, Sign::Plus), {1, 0});
    expect_amplitudes(eigenstate(PauliBasis::Z, Sign::Minus), {0, 1});
    expect_amplitudes(eigenstate(PauliBasis::X, Sign::Plus), {r, r});
    expect_amplitudes(eigenstate(PauliBasis::X, Sign::Minus), {r, -r});
    expect_amplitudes(eigenstate(PauliBasis::Y, Sign::Plus), {r, I * r});
    expect_amplitudes(eigenstate(PauliBasis::Y, Sign::Minus), {r, -I * r});
}

TEST(quantum_core, parse_and_print_eigenstates) {
    for (auto e : kXYEigenstates) {
        EXPECT_EQ(parse_eigenstate(to_string(e)), e);
    }
    EXPECT_EQ(parse_eigenstate("-Y"), (Eigenstate{PauliBasis::Y, Sign::Minus}));
    EXPECT_EQ(to_string(Eigenstate{PauliBasis::X, Sign::Minus}), "-x");
    EXPECT_THROW(parse_eigenstate("x"), std::invalid_argument);
    EXPECT_THROW(parse_eigenstate("+w"), std::invalid_argument);
}

TEST(quantum_core, constructor_validates) {
    EXPECT_THROW(StateVector(1, {1, 0, 0}), std::invalid_argument);
    EXPECT_THROW(StateVector(1, {1, 1}), std::invalid_argument);
    EXPECT_NO_THROW(StateVector(1, {r, r}));
    auto s = StateVector::normalized(1, {3, 4});
    EXPECT_NEAR(std::abs(s[0]), 0.6, 1e-15);
    EXPECT_THROW(StateVector::normalized(1, {0, 0}), std::invalid_argument);
    EXPECT_TRUE(StateVector().is_scalar());
}

TEST(quantum_core, tensor_puts_first_factor_on_the_left) {
    auto zero = eigenstate(PauliBasis::Z, Sign::Plus);
    auto one = eigenstate(PauliBasis::Z, Sign::Minus);
    // |01>: qubit 0 is |0>, qubit 1 is |1>, index 0b01.
    expect_amplitudes(tensor(zero, one), {0, 1, 0, 0});
    auto a = eigenstate(PauliBasis::Y, Sign::Plus);
    auto b = eigenstate(PauliBasis::X, Sign::Minus);
    auto c = eigenstate(PauliBasis::Y, Sign::Minus);
    std::vector<Amplitude> want = kron(kron({r, I * r}, {r, -r}), {r, -I * r});
    const StateVector parts[] = {a, b, c};
    expect_amplitudes(tensor(parts), want);
}

TEST(quantum_core, classify_all_six_and_reject_others) {
    for (auto basis : {PauliBasis::X, PauliBasis::Y, PauliBasis::Z}) {
        for (auto sign : {Sign::Plus, Sign::Minus}) {
            auto got = classify_eigenstate(eigenstate(basis, sign));
            ASSERT_TRUE(got);
            EXPECT_EQ(*got, (Eigenstate{basis, sign}));
        }
    }
    // global phase does not matter
    auto phased = StateVector(1, {I * r, -r});
    EXPECT_EQ(*classify_eigenstate(phased), (Eigenstate{PauliBasis::Y, Sign::Plus}));
    // a T-rotated state is no Pauli eigenstate
    auto t_state = StateVector(1, {r, std::polar(r, M_PI / 4)});
    EXPECT_FALSE(classify_eigenstate(t_state));
}

TEST(quantum_core, bell_states) {
    expect_amplitudes(bell_phi_minus(), {0, r, -r, 0});
    expect_amplitudes(bell_state(BellState::PhiPlus), {r, 0, 0, r});
    expect_amplitudes(bell_state(BellState::PhiMinus), {r, 0, 0, -r});
    expect_amplitudes(bell_state(BellState::PsiPlus), {0, r, r, 0});
    expect_amplitudes(bell_state(BellState::PsiMinus), {0, r, -r, 0});
}

TEST(quantum_core, singlet_is_anticorrelated_in_every_basis) {
    for (auto e : kXYEigenstates) {
        auto joint = tensor(eigenstate(e), eigenstate(e));
        EXPECT_NEAR(overlap(bell_phi_minus(), joint), 0, 1e-12);
        auto anti = tensor(eigenstate(e), eigenstate(flipped(e)));
        EXPECT_NEAR(overlap(bell_phi_minus(), anti), 0.5, 1e-12);
    }
}

TEST(quantum_core, project_ghz_qubit) {
    auto ghz = StateVector(3, {r, 0, 0, 0, 0, 0, 0, r});
    const int q0[] = {0};
    auto p = project(ghz, q0, eigenstate(PauliBasis::Z, Sign::Plus));
    EXPECT_NEAR(p.probability, 0.5, 1e-12);
    ASSERT_TRUE(p.residual);
    expect_amplitudes(*p.residual, {1, 0, 0, 0});

    // X on qubit 0 leaves (|00> +/- |11>)/sqrt2 on the rest
    auto px = project(ghz, q0, eigenstate(PauliBasis::X, Sign::Minus));
    EXPECT_NEAR(px.probability, 0.5, 1e-12);
    expect_amplitudes(*px.residual, {r, 0, 0, -r});
}

TEST(quantum_core, project_respects_subsystem_order) {
    // |0> on qubit 0, |1> on qubit 2 -> |0 x 1>
    auto s = tensor(tensor(eigenstate(PauliBasis::Z, Sign::Plus), eigenstate(PauliBasis::X, Sign::Plus)),
                    eigenstate(PauliBasis::Z, Sign::Minus));
    const int order[] = {2, 0};
    auto target = tensor(eigenstate(PauliBasis::Z, Sign::Minus), eigenstate(PauliBasis::Z, Sign::Plus));
    auto p = project(s, order, target);
    EXPECT_NEAR(p.probability, 1, 1e-12);
    expect_amplitudes(*p.residual, {r, r});
    const int wrong[] = {0, 2};
    EXPECT_NEAR(project(s, wrong, target).probability, 0, 1e-12);
    EXPECT_FALSE(project(s, wrong, target).residual);
}

TEST(quantum_core, project_everything_leaves_scalar) {
    auto s = bell_phi_minus();
    const int both[] = {0, 1};
    auto p = project(s, both, bell_state(BellState::PsiMinus));
    EXPECT_NEAR(p.probability, 1, 1e-12);
    ASSERT_TRUE(p.residual);
    EXPECT_TRUE(p.residual->is_scalar());
}

TEST(quantum_core, project_rejects_bad_subsystems) {
    auto s = bell_phi_minus();
    const int repeated[] = {0, 0};
    const int out_of_range[] = {2};
    const int one[] = {0};
    EXPECT_THROW(project(s, repeated, bell_phi_minus()), std::invalid_argument);
    EXPECT_THROW(project(s, out_of_range, eigenstate(PauliBasis::X, Sign::Plus)), std::invalid_argument);
    EXPECT_THROW(project(s, one, bell_phi_minus()), std::invalid_argument);
}

TEST(quantum_core, measurement_statistics) {
    RandomStream rng(11);
    const int n = 10000;
    int plus = 0;
    for (int k = 0; k < n; k++) {
        auto m = measure_in_basis(eigenstate(PauliBasis::X, Sign::Plus), 0, PauliBasis::Y, rng);
        plus += m.sign == Sign::Plus;
        EXPECT_EQ(*classify_eigenstate(m.collapsed), (Eigenstate{PauliBasis::Y, m.sign}));
    }
    // sigma = sqrt(n/4) = 50
    EXPECT_NEAR(plus, n / 2, 150);
    for (int k = 0; k < 100; k++) {
        ASSERT_EQ(measure_in_basis(eigenstate(PauliBasis::Y, Sign::Minus), 0, PauliBasis::Y, rng).sign, Sign::Minus);
    }
}

TEST(quantum_core, measuring_singlet_half_steers_partner) {
    RandomStream rng(3);
    for (int k = 0; k < 200; k++) {
        auto basis = k % 2 ? PauliBasis::X : PauliBasis::Y;
        auto m = measure_in_basis(bell_phi_minus(), 0, basis, rng);
        ASSERT_EQ(m.collapsed.num_qubits(), 1);
        EXPECT_EQ(*classify_eigenstate(m.collapsed), (Eigenstate{basis, flip(m.sign)}));
    }
}

TEST(quantum_core, pauli_action) {
    auto zero = eigenstate(PauliBasis::Z, Sign::Plus);
    expect_amplitudes(apply_pauli(zero, 0, Pauli::X), {0, 1});
    expect_amplitudes(apply_pauli(zero, 0, Pauli::Y), {0, I});
    expect_amplitudes(apply_pauli(eigenstate(PauliBasis::Z, Sign::Minus), 0, Pauli::Y), {-I, 0});
    expect_amplitudes(apply_pauli(eigenstate(PauliBasis::X, Sign::Plus), 0, Pauli::Z), {r, -r});
    // acts on the addressed qubit only
    auto s = tensor(zero, zero);
    expect_amplitudes(apply_pauli(s, 1, Pauli::X), {0, 1, 0, 0});
    expect_amplitudes(apply_pauli(s, 0, Pauli::X), {0, 0, 1, 0});
}

TEST(quantum_core, insert_qubits_places_part) {
    auto zero = eigenstate(PauliBasis::Z, Sign::Plus);
    auto one = eigenstate(PauliBasis::Z, Sign::Minus);
    auto s = insert_qubits(tensor(zero, zero), 1, one);
    expect_amplitudes(s, {0, 0, 1, 0, 0, 0, 0, 0});
    auto front = insert_qubits(tensor(zero, zero), 0, one);
    expect_amplitudes(front, {0, 0, 0, 0, 1, 0, 0, 0});
}

TEST(quantum_core, inner_product_conjugates_bra) {
    auto py = eigenstate(PauliBasis::Y, Sign::Plus);
    auto px = eigenstate(PauliBasis::X, Sign::Plus);
    // <+x|+y> = (1 + i) / 2
    EXPECT_NEAR(std::abs(inner_product(px, py) - Amplitude(0.5, 0.5)), 0, 1e-12);
    EXPECT_NEAR(overlap(px, py), 0.5, 1e-12);
    EXPECT_THROW(inner_product(px, bell_phi_minus()), std::invalid_argument);
}
