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

#ifndef MDIQSS_CHANNEL_H
#define MDIQSS_CHANNEL_H

#include <cstdint>
#include <span>
#include <vector>

#include "mdiqss/photon_register.h"
#include "mdiqss/quantum_core.h"
#include "mdiqss/random.h"

namespace mdiqss {

using Bits = std::vector<std::uint8_t>;

/// Per-photon noise on one transit leg.
struct NoiseModel {
    /// Probability of a uniformly chosen X, Y or Z flip.
    double depolarizing_p = 0;
    /// Probability of a Z flip.
    double dephasing_q = 0;

    bool noiseless() const {
        return depolarizing_p == 0 && dephasing_q == 0;
    }
    /// Throws std::invalid_argument if a probability is outside [0, 1].
    void validate() const;

    bool operator==(const NoiseModel&) const = default;
};

/// Draws the Pauli the depolarizing channel applies this time (I with
/// probability 1 - p).
Pauli sample_depolarizing(double p, RandomStream& rng);
Pauli sample_dephasing(double q, RandomStream& rng);

StateVector apply_depolarizing(const StateVector& state, int qubit, double p, RandomStream& rng);
StateVector apply_dephasing(const StateVector& state, int qubit, double q, RandomStream& rng);

/// Depolarizing then dephasing on one photon in a register.
void apply_noise(PhotonRegister& reg, PhotonId photon, const NoiseModel& noise, RandomStream& rng);

/// Odd repetition factor.
class RepetitionCode {
   public:
    explicit RepetitionCode(int r = 5);
    int factor() const {
        return r_;
    }

    Bits encode(std::span<const std::uint8_t> bits) const;
    /// Per-block majority vote. Throws std::invalid_argument if the length is
    /// not a multiple of the factor.
    Bits decode(std::span<const std::uint8_t> bits) const;

   private:
    int r_;
};

inline Bits repetition_encode(std::span<const std::uint8_t> bits, int r) {
    return RepetitionCode(r).encode(bits);
}
inline Bits repetition_decode(std::span<const std::uint8_t> bits, int r) {
    return RepetitionCode(r).decode(bits);
}

/// Exact probability that majority decoding of an r-fold block fails when
/// each copy flips independently with probability p.
double logical_error_rate(double p, int r);

/// Monte Carlo estimate of logical_error_rate from `blocks` random blocks.
double estimate_logical_error_rate(double p, int r, std::uint64_t blocks, RandomStream& rng);

}  // namespace mdiqss

#endif
