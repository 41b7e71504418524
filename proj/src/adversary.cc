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

#include "mdiqss/adversary.h"

#include <stdexcept>
#include <vector>

namespace mdiqss {

namespace {

PauliBasis random_xy_basis(RandomStream& rng) {
    return rng.coin() ? PauliBasis::Y : PauliBasis::X;
}

}  // namespace

std::string to_string(AttackKind kind) {
    switch (kind) {
        case AttackKind::None:
            return "none";
        case AttackKind::InterceptResend:
            return "intercept-resend";
        case AttackKind::TeleportationBased:
            return "teleport";
    }
    return "?";
}

AttackKind parse_attack_kind(std::string_view text) {
    if (text == "none") {
        return AttackKind::None;
    }
    if (text == "intercept-resend") {
        return AttackKind::InterceptResend;
    }
    if (text == "teleport") {
        return AttackKind::TeleportationBased;
    }
    throw std::invalid_argument("unknown attack '" + std::string(text) + "' (none, intercept-resend, teleport)");
}

PhotonTap::PhotonTap(PhotonRegister& reg, PhotonId in_transit) : reg_(&reg), in_transit_(in_transit) {
    held_.insert(in_transit);
}

bool PhotonTap::holds(PhotonId id) const {
    return held_.count(id) > 0;
}

void PhotonTap::require(PhotonId id) const {
    if (!holds(id)) {
        throw std::logic_error("attacker has no access to photon " + std::to_string(id.value));
    }
}

Sign PhotonTap::measure(PhotonId id, PauliBasis basis, RandomStream& rng) {
    require(id);
    held_.erase(id);
    return reg_->measure(id, basis, rng);
}

BellState PhotonTap::measure_bell(PhotonId first, PhotonId second, RandomStream& rng) {
    require(first);
    require(second);
    held_.erase(first);
    held_.erase(second);
    return reg_->measure_bell(first, second, rng);
}

PhotonId PhotonTap::prepare(Eigenstate e) {
    PhotonId id = reg_->add(e);
    held_.insert(id);
    return id;
}

std::pair<PhotonId, PhotonId> PhotonTap::prepare_pair() {
    auto ids = reg_->add(bell_phi_minus());
    held_.insert(ids[0]);
    held_.insert(ids[1]);
    return {ids[0], ids[1]};
}

void Adversary::after_disclosure(PhotonTap&, const RoundDisclosure&, RandomStream&) {
}

Eigenstate Adversary::announce(
    const RoundDisclosure&, Eigenstate prepared, std::span<const std::optional<Eigenstate>>, RandomStream&) {
    return prepared;
}

std::optional<Eigenstate> Adversary::inference(std::size_t round) const {
    auto it = inferences_.find(round);
    if (it == inferences_.end()) {
        return std::nullopt;
    }
    return it->second;
}

void Adversary::record_inference(std::size_t round, Eigenstate e) {
    inferences_[round] = e;
}

Eigenstate InterceptResendAttack::intercept_resend_tap(PhotonTap& tap, PhotonId photon, RandomStream& rng) {
    const PauliBasis basis = random_xy_basis(rng);
    const Sign sign = tap.measure(photon, basis, rng);
    return Eigenstate{basis, sign};
}

PhotonId InterceptResendAttack::intercept(std::size_t round, PhotonTap& tap, RandomStream& rng) {
    const Eigenstate seen = intercept_resend_tap(tap, tap.in_transit(), rng);
    record_inference(round, seen);
    return tap.prepare(seen);
}

PhotonId TeleportationAttack::intercept(std::size_t round, PhotonTap& tap, RandomStream&) {
    auto [substitute, kept] = tap.prepare_pair();
    held_[round] = Held{tap.in_transit(), kept};
    return substitute;
}

void TeleportationAttack::after_disclosure(PhotonTap& tap, const RoundDisclosure& info, RandomStream& rng) {
    auto it = held_.find(info.round);
    if (it == held_.end() || !info.outcome.succeeded()) {
        return;
    }
    const Held held = it->second;
    held_.erase(it);
    if (info.kind == SlotKind::PairHalf) {
        // The kept half collapsed exactly as the sender's retained photon
        // would have, so the lookup tables name it.
        const Eigenstate kept_state = collapse_reference(info.outcome.label(), info.receiver_states);
        const BellState b = tap.measure_bell(held.sender_photon, held.kept_half, rng);
        record_inference(info.round, infer_retained_state(b, kept_state));
    } else {
        const PauliBasis basis = random_xy_basis(rng);
        const Sign sign = tap.measure(held.sender_photon, basis, rng);
        record_inference(info.round, Eigenstate{basis, sign});
    }
}

Eigenstate TeleportationAttack::announce(
    const RoundDisclosure& info, Eigenstate prepared, std::span<const std::optional<Eigenstate>> earlier,
    RandomStream&) {
    auto guess = inference(info.round);
    if (info.kind != SlotKind::Decoy || !info.outcome.succeeded() || !guess) {
        return prepared;
    }
    std::vector<Eigenstate> photons{*guess, prepared};
    for (std::size_t j = 0; j < earlier.size(); j++) {
        if (static_cast<int>(j) == corrupt_receiver()) {
            continue;
        }
        if (!earlier[j]) {
            return prepared;
        }
        photons.push_back(*earlier[j]);
    }
    ProductStateSpec as_guessed(photons);
    if (as_guessed.y_count() % 2 != 0) {
        return prepared;
    }
    if (label_allowed(as_guessed, info.outcome.label())) {
        return prepared;
    }
    return flipped(prepared);
}

std::unique_ptr<Adversary> make_adversary(AttackKind kind) {
    switch (kind) {
        case AttackKind::None:
            return nullptr;
        case AttackKind::InterceptResend:
            return std::make_unique<InterceptResendAttack>();
        case AttackKind::TeleportationBased:
            return std::make_unique<TeleportationAttack>();
    }
    throw std::invalid_argument("unknown attack kind");
}

TeleportationSequences teleportation_attack_setup(std::size_t rounds) {
    TeleportationSequences out;
    out.pairs.assign(rounds, bell_phi_minus());
    return out;
}

Eigenstate infer_retained_state(BellState outcome, Eigenstate kept_state) {
    // Retained photon, sender photon, kept half.
    const StateVector joint = tensor(bell_phi_minus(), eigenstate(kept_state));
    const int measured[] = {1, 2};
    auto proj = project(joint, measured, bell_state(outcome));
    if (!proj.residual) {
        throw std::logic_error("Bell outcome impossible for this configuration");
    }
    auto e = classify_eigenstate(*proj.residual);
    if (!e) {
        throw std::logic_error("retained photon is not in a Pauli eigenstate");
    }
    return *e;
}

}  // namespace mdiqss
