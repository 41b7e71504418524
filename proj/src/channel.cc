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

#include "mdiqss/channel.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mdiqss {

namespace {

void check_probability(double p, const char* what) {
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument(std::string(what) + " must be in [0, 1], got " + std::to_string(p));
    }
}

}  // namespace

void NoiseModel::validate() const {
    check_probability(depolarizing_p, "depolarizing_p");
    check_probability(dephasing_q, "dephasing_q");
}

Pauli sample_depolarizing(double p, RandomStream& rng) {
    check_probability(p, "depolarizing probability");
    if (p == 0 || !rng.bernoulli(p)) {
        return Pauli::I;
    }
    switch (rng.below(3)) {
        case 0:
            return Pauli::X;
        case 1:
            return Pauli::Y;
        default:
            return Pauli::Z;
    }
}

Pauli sample_dephasing(double q, RandomStream& rng) {
    check_probability(q, "dephasing probability");
    if (q == 0 || !rng.bernoulli(q)) {
        return Pauli::I;
    }
    return Pauli::Z;
}

StateVector apply_depolarizing(const StateVector& state, int qubit, double p, RandomStream& rng) {
    return apply_pauli(state, qubit, sample_depolarizing(p, rng));
}

StateVector apply_dephasing(const StateVector& state, int qubit, double q, RandomStream& rng) {
    return apply_pauli(state, qubit, sample_dephasing(q, rng));
}

void apply_noise(PhotonRegister& reg, PhotonId photon, const NoiseModel& noise, RandomStream& rng) {
    if (noise.noiseless()) {
        return;
    }
    if (Pauli p = sample_depolarizing(noise.depolarizing_p, rng); p != Pauli::I) {
        reg.apply_pauli(photon, p);
    }
    if (Pauli p = sample_dephasing(noise.dephasing_q, rng); p != Pauli::I) {
        reg.apply_pauli(photon, p);
    }
}

RepetitionCode::RepetitionCode(int r) : r_(r) {
    if (r < 1 || r % 2 == 0) {
        throw std::invalid_argument("repetition factor must be odd and positive, got " + std::to_string(r));
    }
}

Bits RepetitionCode::encode(std::span<const std::uint8_t> bits) const {
    Bits out;
    out.reserve(bits.size() * static_cast<std::size_t>(r_));
    for (auto b : bits) {
        out.insert(out.end(), static_cast<std::size_t>(r_), static_cast<std::uint8_t>(b ? 1 : 0));
    }
    return out;
}

Bits RepetitionCode::decode(std::span<const std::uint8_t> bits) const {
    const auto r = static_cast<std::size_t>(r_);
    if (bits.size() % r != 0) {
        throw std::invalid_argument(
            "input length " + std::to_string(bits.size()) + " is not a multiple of " + std::to_string(r_));
    }
    Bits out;
    out.reserve(bits.size() / r);
    for (std::size_t i = 0; i < bits.size(); i += r) {
        std::size_t ones = 0;
        for (std::size_t k = 0; k < r; k++) {
            ones += bits[i + k] ? 1 : 0;
        }
        out.push_back(ones * 2 > r ? 1 : 0);
    }
    return out;
}

double logical_error_rate(double p, int r) {
    check_probability(p, "bit error probability");
    RepetitionCode code(r);
    double total = 0;
    for (int k = (r + 1) / 2; k <= r; k++) {
        // log-space binomial keeps large r well behaved
        const double log_choose = std::lgamma(r + 1.0) - std::lgamma(k + 1.0) - std::lgamma(r - k + 1.0);
        const double term = std::exp(log_choose) * std::pow(p, k) * std::pow(1 - p, r - k);
        total += term;
    }
    return total;
}

double estimate_logical_error_rate(double p, int r, std::uint64_t blocks, RandomStream& rng) {
    check_probability(p, "bit error probability");
    RepetitionCode code(r);
    if (blocks == 0) {
        throw std::invalid_argument("need at least one block");
    }
    std::uint64_t failures = 0;
    for (std::uint64_t b = 0; b < blocks; b++) {
        int flips = 0;
        for (int k = 0; k < r; k++) {
            flips += rng.bernoulli(p);
        }
        failures += flips * 2 > r;
    }
    return static_cast<double>(failures) / static_cast<double>(blocks);
}

}  // namespace mdiqss
