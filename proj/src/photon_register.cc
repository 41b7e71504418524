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

#include "mdiqss/photon_register.h"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

namespace mdiqss {

std::vector<PhotonId> PhotonRegister::add(const StateVector& state) {
    std::vector<PhotonId> added;
    for (int q = 0; q < state.num_qubits(); q++) {
        added.push_back(PhotonId{next_id_++});
    }
    state_ = state_.is_scalar() ? state : tensor(state_, state);
    ids_.insert(ids_.end(), added.begin(), added.end());
    return added;
}

PhotonId PhotonRegister::add(Eigenstate e) {
    return add(eigenstate(e)).front();
}

bool PhotonRegister::contains(PhotonId id) const {
    return std::find(ids_.begin(), ids_.end(), id) != ids_.end();
}

int PhotonRegister::position(PhotonId id) const {
    auto it = std::find(ids_.begin(), ids_.end(), id);
    if (it == ids_.end()) {
        throw std::logic_error("photon " + std::to_string(id.value) + " is not in the register");
    }
    return static_cast<int>(it - ids_.begin());
}

std::vector<int> PhotonRegister::positions(std::span<const PhotonId> photons) const {
    std::vector<int> out;
    out.reserve(photons.size());
    for (auto id : photons) {
        out.push_back(position(id));
    }
    return out;
}

void PhotonRegister::remove_positions(std::span<const int> removed) {
    std::vector<PhotonId> kept;
    for (int p = 0; p < static_cast<int>(ids_.size()); p++) {
        if (std::find(removed.begin(), removed.end(), p) == removed.end()) {
            kept.push_back(ids_[static_cast<std::size_t>(p)]);
        }
    }
    ids_ = std::move(kept);
}

Sign PhotonRegister::measure(PhotonId id, PauliBasis basis, RandomStream& rng) {
    const int p = position(id);
    auto m = measure_in_basis(state_, p, basis, rng);
    state_ = ids_.size() == 1 ? StateVector() : std::move(m.collapsed);
    const int removed[] = {p};
    remove_positions(removed);
    return m.sign;
}

BellState PhotonRegister::measure_bell(PhotonId first, PhotonId second, RandomStream& rng) {
    const PhotonId pair[] = {first, second};
    const auto pos = positions(pair);
    constexpr std::array<BellState, 4> kAll = {
        BellState::PhiPlus, BellState::PhiMinus, BellState::PsiPlus, BellState::PsiMinus};
    std::array<Projection, 4> branches;
    std::array<double, 4> probs{};
    for (std::size_t b = 0; b < kAll.size(); b++) {
        branches[b] = project(state_, pos, bell_state(kAll[b]));
        probs[b] = branches[b].probability;
    }
    const std::size_t pick = sample_index(probs, rng);
    state_ = *branches[pick].residual;
    remove_positions(pos);
    return kAll[pick];
}

void PhotonRegister::apply_pauli(PhotonId id, Pauli pauli) {
    state_ = mdiqss::apply_pauli(state_, position(id), pauli);
}

double PhotonRegister::probability_of(std::span<const PhotonId> photons, const StateVector& target) const {
    return project(state_, positions(photons), target).probability;
}

void PhotonRegister::collapse_onto(std::span<const PhotonId> photons, const StateVector& target) {
    const auto pos = positions(photons);
    auto proj = project(state_, pos, target);
    if (!proj.residual) {
        throw std::logic_error("post-selected outcome has zero probability");
    }
    state_ = std::move(*proj.residual);
    remove_positions(pos);
}

void PhotonRegister::clear() {
    state_ = StateVector();
    ids_.clear();
}

StateVector PhotonRegister::lone_photon_state(PhotonId id) const {
    if (ids_.size() != 1 || ids_.front() != id) {
        throw std::logic_error("photon " + std::to_string(id.value) + " is not the only photon left");
    }
    return state_;
}

AnalyzerOutcome analyze_photons(
    PhotonRegister& reg, std::span<const PhotonId> inputs, AnalyzerKind kind, RandomStream& rng) {
    const int m = static_cast<int>(inputs.size());
    check_ghz_photon_count(m);
    if (kind == AnalyzerKind::LinearOptics) {
        const double p_even = reg.probability_of(inputs, ghz_state(GhzLabel(m, 0)));
        const double p_odd = reg.probability_of(inputs, ghz_state(GhzLabel(m, 1)));
        auto outcome = sample_linear_optics(p_even, p_odd, m, rng);
        if (outcome.succeeded()) {
            reg.collapse_onto(inputs, ghz_state(outcome.label()));
        } else {
            reg.clear();
        }
        return outcome;
    }

    const auto basis = ghz_basis(m);
    std::vector<double> probs;
    probs.reserve(basis.size());
    for (const auto& phi : basis) {
        probs.push_back(reg.probability_of(inputs, phi));
    }
    GhzLabel label(m, static_cast<std::uint32_t>(sample_index(probs, rng)));
    reg.collapse_onto(inputs, basis[label.bits()]);
    // The ideal analyzer has no detector readout; report the parity-matched
    // all-but-last-zero pattern so the record stays well formed.
    return AnalyzerOutcome::success(label, ClickPattern{m, static_cast<std::uint32_t>(label.phase_bit())});
}

}  // namespace mdiqss
