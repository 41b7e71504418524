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

#ifndef MDIQSS_PHOTON_REGISTER_H
#define MDIQSS_PHOTON_REGISTER_H

#include <cstdint>
#include <span>
#include <vector>

#include "mdiqss/ghz.h"
#include "mdiqss/quantum_core.h"
#include "mdiqss/random.h"

namespace mdiqss {

struct PhotonId {
    std::uint32_t value = 0;
    auto operator<=>(const PhotonId&) const = default;
};

enum class AnalyzerKind : std::uint8_t { LinearOptics, Ideal };

/// The joint pure state of every photon alive in one protocol round, addressed
/// by stable photon ids instead of qubit positions.
///
/// Measuring a photon absorbs it; resending means adding a fresh photon.
class PhotonRegister {
   public:
    PhotonRegister() = default;

    /// Appends a (possibly entangled) group of photons, returning their ids in
    /// qubit order.
    std::vector<PhotonId> add(const StateVector& state);
    PhotonId add(Eigenstate e);

    bool contains(PhotonId id) const;
    int size() const {
        return static_cast<int>(ids_.size());
    }
    const StateVector& joint_state() const {
        return state_;
    }

    Sign measure(PhotonId id, PauliBasis basis, RandomStream& rng);
    BellState measure_bell(PhotonId first, PhotonId second, RandomStream& rng);
    void apply_pauli(PhotonId id, Pauli pauli);

    /// Probability that `photons` would be found in `target`.
    double probability_of(std::span<const PhotonId> photons, const StateVector& target) const;
    /// Post-selects `photons` onto `target` and removes them. Throws
    /// std::logic_error when the outcome has zero probability.
    void collapse_onto(std::span<const PhotonId> photons, const StateVector& target);
    /// Drops every photon (e.g. after a failed analysis discards the round).
    void clear();

    /// State of the only photon left. Throws std::logic_error unless exactly
    /// `id` remains.
    StateVector lone_photon_state(PhotonId id) const;

   private:
    int position(PhotonId id) const;
    std::vector<int> positions(std::span<const PhotonId> photons) const;
    void remove_positions(std::span<const int> removed);

    StateVector state_;
    std::vector<PhotonId> ids_;
    std::uint32_t next_id_ = 0;
};

/// Runs a GHZ analyzer on the listed photons (sender's photon first) and
/// removes them. On failure the whole register is cleared since the round is
/// discarded.
AnalyzerOutcome analyze_photons(
    PhotonRegister& reg, std::span<const PhotonId> inputs, AnalyzerKind kind, RandomStream& rng);

}  // namespace mdiqss

#endif
