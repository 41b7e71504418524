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

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace mdiqss {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::size_t dim_of(int num_qubits) {
    return std::size_t{1} << num_qubits;
}

// Bit position inside an amplitude index for qubit q of an m-qubit state.
int shift_of(int num_qubits, int qubit) {
    return num_qubits - 1 - qubit;
}

void check_qubit_count(int num_qubits) {
    if (num_qubits < 0 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("qubit count out of range: " + std::to_string(num_qubits));
    }
}

void check_qubit(const StateVector& state, int qubit) {
    if (qubit < 0 || qubit >= state.num_qubits()) {
        throw std::invalid_argument(
            "qubit index " + std::to_string(qubit) + " out of range for a " +
            std::to_string(state.num_qubits()) + "-qubit state");
    }
}

// Unnormalized <target|_subsystem state> over the remaining qubits.
std::vector<Amplitude> contract(const StateVector& state, std::span<const int> subsystem, const StateVector& target) {
    const int m = state.num_qubits();
    const int k = static_cast<int>(subsystem.size());
    if (target.num_qubits() != k) {
        throw std::invalid_argument(
            "projection target has " + std::to_string(target.num_qubits()) + " qubits but subsystem has " +
            std::to_string(k));
    }
    std::vector<bool> used(static_cast<std::size_t>(m), false);
    for (int q : subsystem) {
        check_qubit(state, q);
        if (used[static_cast<std::size_t>(q)]) {
            throw std::invalid_argument("repeated qubit index in subsystem: " + std::to_string(q));
        }
        used[static_cast<std::size_t>(q)] = true;
    }
    std::vector<int> rest;
    for (int q = 0; q < m; q++) {
        if (!used[static_cast<std::size_t>(q)]) {
            rest.push_back(q);
        }
    }

    std::vector<Amplitude> out(dim_of(m - k), Amplitude{0, 0});
    const auto amps = state.amplitudes();
    const auto t = target.amplitudes();
    for (std::size_t idx = 0; idx < amps.size(); idx++) {
        if (amps[idx] == Amplitude{0, 0}) {
            continue;
        }
        std::size_t s = 0;
        for (int q : subsystem) {
            s = (s << 1) | ((idx >> shift_of(m, q)) & 1U);
        }
        std::size_t r = 0;
        for (int q : rest) {
            r = (r << 1) | ((idx >> shift_of(m, q)) & 1U);
        }
        out[r] += std::conj(t[s]) * amps[idx];
    }
    return out;
}

double sum_norm(std::span<const Amplitude> v) {
    double total = 0;
    for (const auto& a : v) {
        total += std::norm(a);
    }
    return total;
}

}  // namespace

std::string to_string(PauliBasis basis) {
    switch (basis) {
        case PauliBasis::Z:
            return "z";
        case PauliBasis::X:
            return "x";
        case PauliBasis::Y:
            return "y";
    }
    return "?";
}

std::string to_string(Eigenstate e) {
    return (e.sign == Sign::Plus ? "+" : "-") + to_string(e.basis);
}

PauliBasis parse_basis(std::string_view text) {
    if (text.size() == 1) {
        switch (std::tolower(static_cast<unsigned char>(text[0]))) {
            case 'x':
                return PauliBasis::X;
            case 'y':
                return PauliBasis::Y;
            case 'z':
                return PauliBasis::Z;
        }
    }
    throw std::invalid_argument("not a Pauli basis: '" + std::string(text) + "'");
}

Eigenstate parse_eigenstate(std::string_view text) {
    if (text.size() != 2 || (text[0] != '+' && text[0] != '-')) {
        throw std::invalid_argument("not an eigenstate (expected e.g. +x, -y): '" + std::string(text) + "'");
    }
    return {parse_basis(text.substr(1)), text[0] == '+' ? Sign::Plus : Sign::Minus};
}

StateVector::StateVector() : num_qubits_(0), amplitudes_{Amplitude{1, 0}} {
}

StateVector::StateVector(int num_qubits, std::vector<Amplitude> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
    check_qubit_count(num_qubits);
    if (amplitudes_.size() != dim_of(num_qubits)) {
        throw std::invalid_argument(
            "a " + std::to_string(num_qubits) + "-qubit state needs " + std::to_string(dim_of(num_qubits)) +
            " amplitudes, got " + std::to_string(amplitudes_.size()));
    }
    double n = sum_norm(amplitudes_);
    if (std::abs(n - 1.0) > kNormTolerance) {
        throw std::invalid_argument("state is not normalized (norm^2 = " + std::to_string(n) + ")");
    }
}

StateVector StateVector::normalized(int num_qubits, std::vector<Amplitude> amplitudes) {
    double n = sum_norm(amplitudes);
    if (!(n > 0)) {
        throw std::invalid_argument("cannot normalize a zero vector");
    }
    double scale = 1.0 / std::sqrt(n);
    for (auto& a : amplitudes) {
        a *= scale;
    }
    return StateVector(num_qubits, std::move(amplitudes));
}

StateVector StateVector::basis_state(int num_qubits, std::uint64_t index) {
    check_qubit_count(num_qubits);
    if (index >= dim_of(num_qubits)) {
        throw std::invalid_argument("basis index out of range");
    }
    std::vector<Amplitude> amps(dim_of(num_qubits), Amplitude{0, 0});
    amps[index] = 1;
    return StateVector(num_qubits, std::move(amps));
}

double StateVector::norm_squared() const {
    return sum_norm(amplitudes_);
}

bool StateVector::approx_equal(const StateVector& other, double tolerance) const {
    if (num_qubits_ != other.num_qubits_) {
        return false;
    }
    for (std::size_t i = 0; i < amplitudes_.size(); i++) {
        if (std::abs(amplitudes_[i] - other.amplitudes_[i]) > tolerance) {
            return false;
        }
    }
    return true;
}

Amplitude inner_product(const StateVector& bra, const StateVector& ket) {
    if (bra.num_qubits() != ket.num_qubits()) {
        throw std::invalid_argument("inner product of states with different qubit counts");
    }
    Amplitude total{0, 0};
    for (std::size_t i = 0; i < bra.dimension(); i++) {
        total += std::conj(bra[i]) * ket[i];
    }
    return total;
}

double overlap(const StateVector& a, const StateVector& b) {
    return std::norm(inner_product(a, b));
}

StateVector eigenstate(PauliBasis basis, Sign sign) {
    const double s = sign == Sign::Plus ? 1.0 : -1.0;
    switch (basis) {
        case PauliBasis::Z:
            return StateVector::basis_state(1, sign == Sign::Plus ? 0 : 1);
        case PauliBasis::X:
            return StateVector(1, {kInvSqrt2, s * kInvSqrt2});
        case PauliBasis::Y:
            return StateVector(1, {kInvSqrt2, Amplitude{0, s * kInvSqrt2}});
    }
    throw std::invalid_argument("unknown basis");
}

std::optional<Eigenstate> classify_eigenstate(const StateVector& state) {
    if (state.num_qubits() != 1) {
        return std::nullopt;
    }
    for (PauliBasis b : {PauliBasis::Z, PauliBasis::X, PauliBasis::Y}) {
        for (Sign s : {Sign::Plus, Sign::Minus}) {
            if (overlap(eigenstate(b, s), state) > 1.0 - kZeroTolerance) {
                return Eigenstate{b, s};
            }
        }
    }
    return std::nullopt;
}

StateVector bell_phi_minus() {
    return StateVector(2, {0, kInvSqrt2, -kInvSqrt2, 0});
}

StateVector bell_state(BellState which) {
    switch (which) {
        case BellState::PhiPlus:
            return StateVector(2, {kInvSqrt2, 0, 0, kInvSqrt2});
        case BellState::PhiMinus:
            return StateVector(2, {kInvSqrt2, 0, 0, -kInvSqrt2});
        case BellState::PsiPlus:
            return StateVector(2, {0, kInvSqrt2, kInvSqrt2, 0});
        case BellState::PsiMinus:
            return StateVector(2, {0, kInvSqrt2, -kInvSqrt2, 0});
    }
    throw std::invalid_argument("unknown Bell state");
}

std::string to_string(BellState which) {
    switch (which) {
        case BellState::PhiPlus:
            return "phi+";
        case BellState::PhiMinus:
            return "phi-";
        case BellState::PsiPlus:
            return "psi+";
        case BellState::PsiMinus:
            return "psi-";
    }
    return "?";
}

StateVector tensor(const StateVector& left, const StateVector& right) {
    const int m = left.num_qubits() + right.num_qubits();
    check_qubit_count(m);
    std::vector<Amplitude> amps;
    amps.reserve(dim_of(m));
    for (std::size_t i = 0; i < left.dimension(); i++) {
        for (std::size_t j = 0; j < right.dimension(); j++) {
            amps.push_back(left[i] * right[j]);
        }
    }
    // Re-normalize to absorb rounding from repeated products.
    return StateVector::normalized(m, std::move(amps));
}

StateVector tensor(std::span<const StateVector> parts) {
    if (parts.empty()) {
        throw std::invalid_argument("tensor of an empty list");
    }
    StateVector acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); i++) {
        acc = tensor(acc, parts[i]);
    }
    return acc;
}

Projection project(const StateVector& state, std::span<const int> subsystem, const StateVector& target) {
    auto raw = contract(state, subsystem, target);
    Projection result;
    result.probability = sum_norm(raw);
    if (result.probability < kProbabilityFloor) {
        return result;
    }
    const int remaining = state.num_qubits() - static_cast<int>(subsystem.size());
    if (remaining == 0) {
        result.residual = StateVector();
    } else {
        result.residual = StateVector::normalized(remaining, std::move(raw));
    }
    return result;
}

Measurement measure_in_basis(const StateVector& state, int qubit, PauliBasis basis, RandomStream& rng) {
    check_qubit(state, qubit);
    const int sub[] = {qubit};
    auto plus = contract(state, sub, eigenstate(basis, Sign::Plus));
    const double p_plus = sum_norm(plus);
    const Sign sign = rng.uniform() < p_plus ? Sign::Plus : Sign::Minus;

    Measurement m;
    m.sign = sign;
    if (state.num_qubits() == 1) {
        m.collapsed = eigenstate(basis, sign);
        return m;
    }
    auto branch = sign == Sign::Plus ? std::move(plus) : contract(state, sub, eigenstate(basis, Sign::Minus));
    m.collapsed = StateVector::normalized(state.num_qubits() - 1, std::move(branch));
    return m;
}

StateVector apply_pauli(const StateVector& state, int qubit, Pauli pauli) {
    check_qubit(state, qubit);
    if (pauli == Pauli::I) {
        return state;
    }
    const std::size_t mask = std::size_t{1} << shift_of(state.num_qubits(), qubit);
    std::vector<Amplitude> out(state.dimension());
    const Amplitude i_unit{0, 1};
    for (std::size_t idx = 0; idx < state.dimension(); idx++) {
        const bool one = (idx & mask) != 0;
        switch (pauli) {
            case Pauli::X:
                out[idx ^ mask] = state[idx];
                break;
            case Pauli::Z:
                out[idx] = one ? -state[idx] : state[idx];
                break;
            case Pauli::Y:
                // Y|0> = i|1>, Y|1> = -i|0>.
                out[idx ^ mask] = one ? -i_unit * state[idx] : i_unit * state[idx];
                break;
            case Pauli::I:
                break;
        }
    }
    return StateVector(state.num_qubits(), std::move(out));
}

StateVector insert_qubits(const StateVector& state, int position, const StateVector& part) {
    const int m = state.num_qubits();
    const int k = part.num_qubits();
    if (position < 0 || position > m) {
        throw std::invalid_argument("insert position out of range");
    }
    const int total = m + k;
    check_qubit_count(total);
    const int low_bits = m - position;  // qubits of `state` after the insertion point
    std::vector<Amplitude> amps(dim_of(total));
    for (std::size_t i = 0; i < state.dimension(); i++) {
        const std::size_t high = i >> low_bits;
        const std::size_t low = i & ((std::size_t{1} << low_bits) - 1);
        for (std::size_t j = 0; j < part.dimension(); j++) {
            const std::size_t idx = (((high << k) | j) << low_bits) | low;
            amps[idx] = state[i] * part[j];
        }
    }
    return StateVector::normalized(total, std::move(amps));
}

}  // namespace mdiqss
