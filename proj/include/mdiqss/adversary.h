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

#ifndef MDIQSS_ADVERSARY_H
#define MDIQSS_ADVERSARY_H

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "mdiqss/ghz.h"
#include "mdiqss/photon_register.h"
#include "mdiqss/quantum_core.h"
#include "mdiqss/random.h"

namespace mdiqss {

enum class AttackKind : std::uint8_t { None, InterceptResend, TeleportationBased };

std::string to_string(AttackKind kind);
/// Accepts "none", "intercept-resend" and "teleport".
AttackKind parse_attack_kind(std::string_view text);

enum class SlotKind : std::uint8_t { PairHalf, Decoy };

/// What an attacker may touch in a round: the sender's photon while it is in
/// transit, plus whatever photons the attacker prepares itself. The retained
/// photon and the honest receivers' photons are out of reach.
class PhotonTap {
   public:
    PhotonTap(PhotonRegister& reg, PhotonId in_transit);

    PhotonId in_transit() const {
        return in_transit_;
    }
    bool holds(PhotonId id) const;

    Sign measure(PhotonId id, PauliBasis basis, RandomStream& rng);
    BellState measure_bell(PhotonId first, PhotonId second, RandomStream& rng);
    PhotonId prepare(Eigenstate e);
    /// A fresh pair in the protocol's pair state, both halves held.
    std::pair<PhotonId, PhotonId> prepare_pair();

   private:
    void require(PhotonId id) const;

    PhotonRegister* reg_;
    PhotonId in_transit_;
    std::set<PhotonId> held_;
};

/// Public facts about a round once the analyzer result and the decoy
/// positions are announced. `receiver_states` is every receiver's
/// preparation; for pair rounds these are published during decoding.
struct RoundDisclosure {
    std::size_t round = 0;
    SlotKind kind = SlotKind::PairHalf;
    AnalyzerOutcome outcome = AnalyzerOutcome::failure();
    std::span<const Eigenstate> receiver_states;
};

/// Pluggable attack on the sender-to-analyzer channel, mounted by the
/// receiver at `corrupt_receiver()`.
class Adversary {
   public:
    virtual ~Adversary() = default;

    virtual AttackKind kind() const = 0;

    /// Acts on the sender's photon on its way to the analyzer and returns the
    /// photon forwarded in its place.
    virtual PhotonId intercept(std::size_t round, PhotonTap& tap, RandomStream& rng) = 0;

    /// Runs after the analyzer result and the round's slot kind are public.
    virtual void after_disclosure(PhotonTap& tap, const RoundDisclosure& info, RandomStream& rng);

    /// State the corrupt receiver publishes for a decoy round. `earlier`
    /// holds what the other receivers already published.
    virtual Eigenstate announce(
        const RoundDisclosure& info, Eigenstate prepared, std::span<const std::optional<Eigenstate>> earlier,
        RandomStream& rng);

    /// The attacker's guess of the sender's state for a round, if it made one.
    std::optional<Eigenstate> inference(std::size_t round) const;

    int corrupt_receiver() const {
        return 0;
    }

   protected:
    void record_inference(std::size_t round, Eigenstate e);

   private:
    std::map<std::size_t, Eigenstate> inferences_;
};

/// Measures every in-transit photon in a random X/Y basis and resends the
/// outcome eigenstate.
class InterceptResendAttack final : public Adversary {
   public:
    AttackKind kind() const override {
        return AttackKind::InterceptResend;
    }
    PhotonId intercept(std::size_t round, PhotonTap& tap, RandomStream& rng) override;
    /// Returns the eigenstate resent towards the analyzer.
    static Eigenstate intercept_resend_tap(PhotonTap& tap, PhotonId photon, RandomStream& rng);
};

/// Keeps the sender's photon and forwards half of a fresh pair instead.
///
/// After disclosure, pair rounds get a Bell measurement on (sender photon,
/// kept half), which lets the attacker name the sender's retained state.
/// Decoy rounds get a random-basis measurement of the sender photon, and the
/// attacker then shapes its own published state around that guess.
class TeleportationAttack final : public Adversary {
   public:
    AttackKind kind() const override {
        return AttackKind::TeleportationBased;
    }
    PhotonId intercept(std::size_t round, PhotonTap& tap, RandomStream& rng) override;
    void after_disclosure(PhotonTap& tap, const RoundDisclosure& info, RandomStream& rng) override;
    Eigenstate announce(
        const RoundDisclosure& info, Eigenstate prepared, std::span<const std::optional<Eigenstate>> earlier,
        RandomStream& rng) override;

   private:
    struct Held {
        PhotonId sender_photon;
        PhotonId kept_half;
    };
    std::map<std::size_t, Held> held_;
};

/// nullptr for AttackKind::None.
std::unique_ptr<Adversary> make_adversary(AttackKind kind);

/// Substitute and kept sequences for `rounds` rounds: fresh pairs whose first
/// halves go to the analyzer and second halves stay with the attacker.
struct TeleportationSequences {
    std::vector<StateVector> pairs;
};
TeleportationSequences teleportation_attack_setup(std::size_t rounds);

/// The sender's retained photon implied by a Bell outcome on (sender photon,
/// kept half) when the kept half had collapsed to `kept_state` and the sender
/// photon was half of a protocol pair with the retained photon.
Eigenstate infer_retained_state(BellState outcome, Eigenstate kept_state);

}  // namespace mdiqss

#endif
