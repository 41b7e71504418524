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

#ifndef MDIQSS_QUANTUM_CORE_H
#define MDIQSS_QUANTUM_CORE_H

#include <array>
#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mdiqss/random.h"

namespace mdiqss {

using Amplitude = std::complex<double>;

/// Amplitudes with magnitude at or below this are treated as zero.
inline constexpr double kZeroTolerance = 1e-9;
/// Allowed deviation of the squared norm from one for a StateVector.
inline constexpr double kNormTolerance = 1e-12;
/// Projections with probability below this have no residual state.
inline constexpr double kProbabilityFloor = 1e-12;

/// Largest register this library is meant for.
inline constexpr int kMaxQubits = 20;

enum class PauliBasis : std::uint8_t { Z, X, Y };
enum class Sign : std::uint8_t { Plus, Minus };
enum class Pauli : std::uint8_t { I, X, Y, Z };

inline Sign flip(Sign s) {
    return s == Sign::Plus ? Sign::Minus : Sign::Plus;
}

/// An eigenstate of a Pauli operator, e.g. |+x> or |-y>. For Z, + is |0> and - is |1>.
struct Eigenstate {
    PauliBasis basis = PauliBasis::X;
    Sign sign = Sign::Plus;

    auto operator<=>(const Eigenstate&) const = default;
};

inline Eigenstate flipped(Eigenstate e) {
    return {e.basis, flip(e.sign)};
}

/// The four X/Y eigenstates every party prepares from, in the order +x, -x, +y, -y.
inline constexpr std::array<Eigenstate, 4> kXYEigenstates = {
    Eigenstate{PauliBasis::X, Sign::Plus},
    Eigenstate{PauliBasis::X, Sign::Minus},
    Eigenstate{PauliBasis::Y, Sign::Plus},
    Eigenstate{PauliBasis::Y, Sign::Minus},
};

std::string to_string(PauliBasis basis);
std::string to_string(Eigenstate e);
/// Parses "+x", "-y", "+z", ... (case-insensitive basis letter).
Eigenstate parse_eigenstate(std::string_view text);
PauliBasis parse_basis(std::string_view text);

/// Normalized amplitudes over the 2^m computational basis states.
///
/// Index bit (m - 1 - q) holds qubit q, so qubit 0 is the leftmost symbol of
/// a ket: amplitude index 0b011 is |011> with qubit 0 in |0>. A 0-qubit state
/// is the scalar marker left over when every qubit has been projected away.
class StateVector {
   public:
    /// The 0-qubit scalar 1.
    StateVector();
    /// Throws std::invalid_argument on a length or normalization mismatch.
    StateVector(int num_qubits, std::vector<Amplitude> amplitudes);

    /// Rescales the amplitudes to unit norm. Throws on a zero vector.
    static StateVector normalized(int num_qubits, std::vector<Amplitude> amplitudes);
    static StateVector basis_state(int num_qubits, std::uint64_t index);

    int num_qubits() const {
        return num_qubits_;
    }
    std::size_t dimension() const {
        return amplitudes_.size();
    }
    bool is_scalar() const {
        return num_qubits_ == 0;
    }
    std::span<const Amplitude> amplitudes() const {
        return amplitudes_;
    }
    Amplitude operator[](std::size_t index) const {
        return amplitudes_[index];
    }
    double norm_squared() const;

    /// Exact amplitude-wise comparison within a tolerance (global phase matters).
    bool approx_equal(const StateVector& other, double tolerance = kZeroTolerance) const;

   private:
    int num_qubits_;
    std::vector<Amplitude> amplitudes_;
};

/// <bra|ket>. Throws on dimension mismatch.
Amplitude inner_product(const StateVector& bra, const StateVector& ket);
/// |<a|b>|^2.
double overlap(const StateVector& a, const StateVector& b);

StateVector eigenstate(PauliBasis basis, Sign sign);
inline StateVector eigenstate(Eigenstate e) {
    return eigenstate(e.basis, e.sign);
}

/// Identifies a single-qubit state as one of the six Pauli eigenstates (up to
/// global phase). Returns nullopt for anything else.
std::optional<Eigenstate> classify_eigenstate(const StateVector& state);

/// The protocol's pair state (|01> - |10>)/sqrt(2), i.e. the singlet.
StateVector bell_phi_minus();

/// Standard Bell states: PhiPlus/PhiMinus = (|00> +/- |11>)/sqrt2,
/// PsiPlus/PsiMinus = (|01> +/- |10>)/sqrt2.
enum class BellState : std::uint8_t { PhiPlus, PhiMinus, PsiPlus, PsiMinus };
StateVector bell_state(BellState which);
std::string to_string(BellState which);

StateVector tensor(const StateVector& left, const StateVector& right);
/// Tensor product, leftmost part first. Throws on an empty list.
StateVector tensor(std::span<const StateVector> parts);

struct Projection {
    double probability = 0;
    /// Normalized state of the qubits outside the subsystem (ascending order),
    /// a scalar marker when none remain, or nullopt below kProbabilityFloor.
    std::optional<StateVector> residual;
};

/// Projects `subsystem` (ordered qubit indices) onto `target`.
///
/// Throws std::invalid_argument for repeated or out-of-range indices and when
/// target.num_qubits() != subsystem.size().
Projection project(const StateVector& state, std::span<const int> subsystem, const StateVector& target);

struct Measurement {
    Sign sign = Sign::Plus;
    /// State of the remaining qubits, or the measured eigenstate if none remain.
    StateVector collapsed;
};

/// Born-rule measurement of one qubit in a Pauli basis.
Measurement measure_in_basis(const StateVector& state, int qubit, PauliBasis basis, RandomStream& rng);

StateVector apply_pauli(const StateVector& state, int qubit, Pauli pauli);

/// Inserts `part` so that its first qubit lands at index `position`.
StateVector insert_qubits(const StateVector& state, int position, const StateVector& part);

}  // namespace mdiqss

#endif
