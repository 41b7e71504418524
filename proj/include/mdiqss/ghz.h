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

#ifndef MDIQSS_GHZ_H
#define MDIQSS_GHZ_H

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mdiqss/quantum_core.h"
#include "mdiqss/random.h"

namespace mdiqss {

inline constexpr int kMinGhzPhotons = 2;
inline constexpr int kMaxGhzPhotons = 14;

/// Throws std::out_of_range unless kMinGhzPhotons <= m <= kMaxGhzPhotons.
void check_ghz_photon_count(int m);

/// Label a_0 ... a_{m-1} of the GHZ state
///
///     (|0 a_0 ... a_{m-2}> + (-1)^{a_{m-1}} |1 !a_0 ... !a_{m-2}>) / sqrt(2).
///
/// bits() reads the label as a binary number with a_0 most significant, so
/// "110" has bits() == 6. The first m-1 symbols form the prefix and the last
/// one selects the relative phase.
class GhzLabel {
   public:
    GhzLabel(int width, std::uint32_t bits);
    static GhzLabel parse(std::string_view text);

    int width() const {
        return width_;
    }
    std::uint32_t bits() const {
        return bits_;
    }
    /// a_k, k = 0 is the leftmost symbol.
    int symbol(int k) const;
    int phase_bit() const {
        return static_cast<int>(bits_ & 1U);
    }
    std::uint32_t prefix() const {
        return bits_ >> 1;
    }
    /// Only 0...00 and 0...01 can be told apart with linear optics.
    bool linear_optics_identifiable() const {
        return prefix() == 0;
    }
    std::string to_string() const;

    auto operator<=>(const GhzLabel&) const = default;

   private:
    int width_;
    std::uint32_t bits_;
};

StateVector ghz_state(const GhzLabel& label);

/// All 2^m GHZ states ordered by label value. Throws std::out_of_range for m
/// outside [2, 14].
std::vector<StateVector> ghz_basis(int m);

/// Coefficients <Phi_label|state> for every label of an m-photon state.
class Decomposition {
   public:
    Decomposition(int m, std::vector<Amplitude> coefficients);

    int photons() const {
        return m_;
    }
    Amplitude at(const GhzLabel& label) const;
    std::span<const Amplitude> coefficients() const {
        return coefficients_;
    }
    /// Labels with |coefficient| > kZeroTolerance, ascending.
    std::vector<GhzLabel> support() const;
    /// sum_label coefficient * Phi_label.
    StateVector reconstruct() const;

   private:
    int m_;
    std::vector<Amplitude> coefficients_;
};

Decomposition decompose_in_ghz_basis(const StateVector& state);

/// One X/Y eigenstate per photon, in analyzer order (sender first).
class ProductStateSpec {
   public:
    /// Throws std::invalid_argument for Z-basis photons or fewer than 1 photon.
    explicit ProductStateSpec(std::vector<Eigenstate> photons);
    /// Parses tokens such as {"+x", "-y", "+x"}.
    static ProductStateSpec parse(std::span<const std::string> tokens);
    /// Parses a compact form such as "+x-y+x".
    static ProductStateSpec parse(std::string_view compact);

    std::span<const Eigenstate> photons() const {
        return photons_;
    }
    int size() const {
        return static_cast<int>(photons_.size());
    }
    /// Number of Y-basis photons.
    int y_count() const;
    /// Number of photons in |-x> or |-y>.
    int minus_count() const;
    std::string to_string() const;

    StateVector state() const;

   private:
    std::vector<Eigenstate> photons_;
};

/// Every m-photon X/Y product spec (4^m of them), ordered by
/// kXYEigenstates index with photon 0 most significant.
std::vector<ProductStateSpec> all_product_specs(int m);

/// <Phi_label|spec> computed directly from the two contributing basis
/// amplitudes.
Amplitude ghz_coefficient(const ProductStateSpec& spec, const GhzLabel& label);

/// Labels the spec has nonzero weight on. For an even Y count this is one label
/// per prefix (2^(m-1) labels); for an odd Y count it is all 2^m labels.
std::vector<GhzLabel> allowed_label_set(const ProductStateSpec& spec);
bool label_allowed(const ProductStateSpec& spec, const GhzLabel& label);

/// Detector readout of the linear-optics analyzer, one bit per detector.
struct ClickPattern {
    int width = 0;
    std::uint32_t bits = 0;

    int parity() const;
    std::string to_string() const;
    auto operator<=>(const ClickPattern&) const = default;
};

/// The 2^(m-1) patterns that herald `label` (even parity for phase bit 0,
/// odd for phase bit 1). Throws for labels linear optics cannot identify.
std::vector<ClickPattern> click_patterns_for(const GhzLabel& label);

class AnalyzerOutcome {
   public:
    static AnalyzerOutcome success(GhzLabel label, ClickPattern clicks);
    static AnalyzerOutcome failure();

    bool succeeded() const {
        return succeeded_;
    }
    /// Throws std::logic_error on a failed outcome.
    const GhzLabel& label() const;
    const ClickPattern& clicks() const;

    bool operator==(const AnalyzerOutcome&) const = default;

   private:
    AnalyzerOutcome(bool ok, GhzLabel label, ClickPattern clicks);

    bool succeeded_;
    GhzLabel label_;
    ClickPattern clicks_;
};

/// Draws the three-way outcome of the linear-optics analyzer from the two
/// heralded probabilities. The click pattern is uniform over the matching
/// parity class.
AnalyzerOutcome sample_linear_optics(double p_even, double p_odd, int m, RandomStream& rng);

/// |<Phi_0..00|state>|^2 + |<Phi_0..01|state>|^2.
double linear_optics_success_probability(const StateVector& state);

/// POVM {Phi_0..00, Phi_0..01, rest} with Born-rule sampling.
AnalyzerOutcome analyze_linear_optics(const StateVector& state, RandomStream& rng);

/// Complete projective measurement in the GHZ basis.
GhzLabel analyze_ideal(const StateVector& state, RandomStream& rng);

/// Samples an index from a probability vector (sums to ~1).
std::size_t sample_index(std::span<const double> probabilities, RandomStream& rng);

/// State left on the sender's retained photon when her pair half and the
/// receivers' photons are projected onto Phi_label. Computed by explicit
/// projection; valid for every label. Requires receivers in X/Y.
Eigenstate collapse_reference(const GhzLabel& label, std::span<const Eigenstate> receivers);

/// Same quantity read off the sender's lookup tables: the case is chosen by
/// the parities of the receivers' Y count and minus count, and the row by
/// (Y count - 2 * gamma) mod 4, where gamma counts Y-basis receivers whose
/// symbol in the label prefix is 1.
Eigenstate collapse_by_table(const GhzLabel& label, std::span<const Eigenstate> receivers);

enum class CrossCheck { Off, Assert };

/// collapse_reference restricted to labels the linear-optics analyzer can
/// report. With CrossCheck::Assert the table rules are evaluated too and a
/// disagreement throws std::logic_error.
Eigenstate predict_collapse(
    const GhzLabel& label, std::span<const Eigenstate> receivers, CrossCheck check = CrossCheck::Off);

/// Per-component counters of a product state written in the Z basis:
/// gamma counts Y-basis photons reading 1, eta counts minus-sign photons
/// reading 1. The amplitude of |basis_index> is i^gamma (-1)^eta / sqrt(2^m).
struct ComponentCounters {
    std::uint64_t basis_index = 0;
    int gamma = 0;
    int eta = 0;
};

std::vector<ComponentCounters> component_counters(const ProductStateSpec& spec);

/// Tensor product of the spec's eigenstates.
StateVector multiparty_product_state(const ProductStateSpec& spec);
/// sum_j i^gamma_j (-1)^eta_j |w_j> / sqrt(N).
StateVector product_state_from_counters(const ProductStateSpec& spec);
/// sum_j i^(alpha - gamma_j) (-1)^(beta - eta_j) |!w_j> / sqrt(N).
StateVector product_state_from_complements(const ProductStateSpec& spec);
/// sum over w_j with leading 0 of (-1)^eta_j i^gamma_j [|w_j> + i^(alpha - 2 gamma_j) (-1)^beta |!w_j>] / sqrt(N).
///
/// Each bracket is a GHZ-like pair: a real relative phase (even alpha) makes
/// it a single GHZ state, an imaginary one splits it evenly across both
/// phase labels.
StateVector product_state_paired(const ProductStateSpec& spec);

}  // namespace mdiqss

#endif
