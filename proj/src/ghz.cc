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

#include "mdiqss/ghz.h"

#include <array>
#include <bit>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace mdiqss {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::uint64_t all_ones(int m) {
    return (std::uint64_t{1} << m) - 1;
}

// Computational-basis indices of the two kets making up Phi_label.
std::pair<std::uint64_t, std::uint64_t> ghz_support(const GhzLabel& label) {
    const std::uint64_t low = label.prefix();
    return {low, all_ones(label.width()) ^ low};
}

// <bit|e> for a single-photon X/Y eigenstate, scaled by sqrt(2).
Amplitude scaled_component(Eigenstate e, int bit) {
    if (bit == 0) {
        return 1;
    }
    const double s = e.sign == Sign::Plus ? 1.0 : -1.0;
    return e.basis == PauliBasis::Y ? Amplitude{0, s} : Amplitude{s, 0};
}

Amplitude i_power(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0:
            return {1, 0};
        case 1:
            return {0, 1};
        case 2:
            return {-1, 0};
        default:
            return {0, -1};
    }
}

int y_count_of(std::span<const Eigenstate> photons) {
    int n = 0;
    for (const auto& e : photons) {
        n += e.basis == PauliBasis::Y;
    }
    return n;
}

int minus_count_of(std::span<const Eigenstate> photons) {
    int n = 0;
    for (const auto& e : photons) {
        n += e.sign == Sign::Minus;
    }
    return n;
}

void require_xy(std::span<const Eigenstate> photons) {
    for (const auto& e : photons) {
        if (e.basis == PauliBasis::Z) {
            throw std::invalid_argument("photons must be prepared in the X or Y basis");
        }
    }
}

// Sender lookup tables. Rows are (alpha - 2 gamma) mod 4 in the order 0, 2, -1, 1;
// columns by (alpha, beta) parity: even/even, even/odd, odd/even, odd/odd.
using Cell = std::optional<Eigenstate>;
constexpr Eigenstate kPx{PauliBasis::X, Sign::Plus};
constexpr Eigenstate kMx{PauliBasis::X, Sign::Minus};
constexpr Eigenstate kPy{PauliBasis::Y, Sign::Plus};
constexpr Eigenstate kMy{PauliBasis::Y, Sign::Minus};

// Announced Phi_{...0}.
const std::array<std::array<Cell, 4>, 4> kPhaseZeroTable = {{
    {kMx, kPx, std::nullopt, std::nullopt},
    {kPx, kMx, std::nullopt, std::nullopt},
    {std::nullopt, std::nullopt, kMy, kPy},
    {std::nullopt, std::nullopt, kPy, kMy},
}};

// Announced Phi_{...1}.
const std::array<std::array<Cell, 4>, 4> kPhaseOneTable = {{
    {kPx, kMx, std::nullopt, std::nullopt},
    {kMx, kPx, std::nullopt, std::nullopt},
    {std::nullopt, std::nullopt, kPy, kMy},
    {std::nullopt, std::nullopt, kMy, kPy},
}};

int table_row(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0:
            return 0;
        case 2:
            return 1;
        case 3:
            return 2;  // -1
        default:
            return 3;  // 1
    }
}

}  // namespace

void check_ghz_photon_count(int m) {
    if (m < kMinGhzPhotons || m > kMaxGhzPhotons) {
        throw std::out_of_range("GHZ photon count must be in [2, 14], got " + std::to_string(m));
    }
}

GhzLabel::GhzLabel(int width, std::uint32_t bits) : width_(width), bits_(bits) {
    check_ghz_photon_count(width);
    if (bits >= (std::uint32_t{1} << width)) {
        throw std::invalid_argument("GHZ label value does not fit in " + std::to_string(width) + " bits");
    }
}

GhzLabel GhzLabel::parse(std::string_view text) {
    std::uint32_t bits = 0;
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("GHZ label must be a bit string: '" + std::string(text) + "'");
        }
        bits = (bits << 1) | static_cast<std::uint32_t>(c - '0');
    }
    return GhzLabel(static_cast<int>(text.size()), bits);
}

int GhzLabel::symbol(int k) const {
    if (k < 0 || k >= width_) {
        throw std::out_of_range("label symbol index out of range");
    }
    return static_cast<int>((bits_ >> (width_ - 1 - k)) & 1U);
}

std::string GhzLabel::to_string() const {
    std::string s;
    for (int k = 0; k < width_; k++) {
        s.push_back(symbol(k) ? '1' : '0');
    }
    return s;
}

StateVector ghz_state(const GhzLabel& label) {
    const int m = label.width();
    std::vector<Amplitude> amps(std::size_t{1} << m, Amplitude{0, 0});
    auto [lo, hi] = ghz_support(label);
    amps[lo] = kInvSqrt2;
    amps[hi] = label.phase_bit() ? -kInvSqrt2 : kInvSqrt2;
    return StateVector(m, std::move(amps));
}

std::vector<StateVector> ghz_basis(int m) {
    check_ghz_photon_count(m);
    std::vector<StateVector> basis;
    basis.reserve(std::size_t{1} << m);
    for (std::uint32_t b = 0; b < (std::uint32_t{1} << m); b++) {
        basis.push_back(ghz_state(GhzLabel(m, b)));
    }
    return basis;
}

Decomposition::Decomposition(int m, std::vector<Amplitude> coefficients)
    : m_(m), coefficients_(std::move(coefficients)) {
    check_ghz_photon_count(m);
    if (coefficients_.size() != (std::size_t{1} << m)) {
        throw std::invalid_argument("decomposition needs 2^m coefficients");
    }
    double total = 0;
    for (const auto& c : coefficients_) {
        total += std::norm(c);
    }
    if (std::abs(total - 1.0) > kZeroTolerance) {
        throw std::invalid_argument("decomposition weights do not sum to one");
    }
}

Amplitude Decomposition::at(const GhzLabel& label) const {
    if (label.width() != m_) {
        throw std::invalid_argument("label width does not match decomposition");
    }
    return coefficients_[label.bits()];
}

std::vector<GhzLabel> Decomposition::support() const {
    std::vector<GhzLabel> out;
    for (std::uint32_t b = 0; b < coefficients_.size(); b++) {
        if (std::abs(coefficients_[b]) > kZeroTolerance) {
            out.emplace_back(m_, b);
        }
    }
    return out;
}

StateVector Decomposition::reconstruct() const {
    std::vector<Amplitude> amps(coefficients_.size(), Amplitude{0, 0});
    for (std::uint32_t b = 0; b < coefficients_.size(); b++) {
        GhzLabel label(m_, b);
        auto [lo, hi] = ghz_support(label);
        amps[lo] += coefficients_[b] * kInvSqrt2;
        amps[hi] += coefficients_[b] * (label.phase_bit() ? -kInvSqrt2 : kInvSqrt2);
    }
    return StateVector::normalized(m_, std::move(amps));
}

Decomposition decompose_in_ghz_basis(const StateVector& state) {
    const int m = state.num_qubits();
    check_ghz_photon_count(m);
    std::vector<Amplitude> coefficients(state.dimension());
    for (std::uint32_t b = 0; b < coefficients.size(); b++) {
        GhzLabel label(m, b);
        auto [lo, hi] = ghz_support(label);
        const Amplitude sum = label.phase_bit() ? state[lo] - state[hi] : state[lo] + state[hi];
        coefficients[b] = sum * kInvSqrt2;
    }
    return Decomposition(m, std::move(coefficients));
}

ProductStateSpec::ProductStateSpec(std::vector<Eigenstate> photons) : photons_(std::move(photons)) {
    if (photons_.empty()) {
        throw std::invalid_argument("product state needs at least one photon");
    }
    require_xy(photons_);
}

ProductStateSpec ProductStateSpec::parse(std::span<const std::string> tokens) {
    std::vector<Eigenstate> photons;
    for (const auto& t : tokens) {
        photons.push_back(parse_eigenstate(t));
    }
    return ProductStateSpec(std::move(photons));
}

ProductStateSpec ProductStateSpec::parse(std::string_view compact) {
    if (compact.size() % 2 != 0) {
        throw std::invalid_argument("product state must be pairs like +x-y: '" + std::string(compact) + "'");
    }
    std::vector<Eigenstate> photons;
    for (std::size_t i = 0; i < compact.size(); i += 2) {
        photons.push_back(parse_eigenstate(compact.substr(i, 2)));
    }
    return ProductStateSpec(std::move(photons));
}

int ProductStateSpec::y_count() const {
    return y_count_of(photons_);
}

int ProductStateSpec::minus_count() const {
    return minus_count_of(photons_);
}

std::string ProductStateSpec::to_string() const {
    std::string s;
    for (const auto& e : photons_) {
        s += mdiqss::to_string(e);
    }
    return s;
}

StateVector ProductStateSpec::state() const {
    std::vector<StateVector> parts;
    parts.reserve(photons_.size());
    for (const auto& e : photons_) {
        parts.push_back(eigenstate(e));
    }
    return tensor(parts);
}

std::vector<ProductStateSpec> all_product_specs(int m) {
    if (m < 1 || m > 10) {
        throw std::out_of_range("all_product_specs supports 1..10 photons");
    }
    std::vector<ProductStateSpec> out;
    const std::uint64_t count = std::uint64_t{1} << (2 * m);
    out.reserve(count);
    for (std::uint64_t code = 0; code < count; code++) {
        std::vector<Eigenstate> photons(static_cast<std::size_t>(m));
        for (int q = 0; q < m; q++) {
            photons[static_cast<std::size_t>(q)] = kXYEigenstates[(code >> (2 * (m - 1 - q))) & 3U];
        }
        out.emplace_back(std::move(photons));
    }
    return out;
}

Amplitude ghz_coefficient(const ProductStateSpec& spec, const GhzLabel& label) {
    const int m = spec.size();
    if (label.width() != m) {
        throw std::invalid_argument("label width does not match photon count");
    }
    auto [lo, hi] = ghz_support(label);
    Amplitude a_lo = 1;
    Amplitude a_hi = 1;
    for (int q = 0; q < m; q++) {
        const int shift = m - 1 - q;
        a_lo *= scaled_component(spec.photons()[q], static_cast<int>((lo >> shift) & 1U));
        a_hi *= scaled_component(spec.photons()[q], static_cast<int>((hi >> shift) & 1U));
    }
    const Amplitude sum = label.phase_bit() ? a_lo - a_hi : a_lo + a_hi;
    // 2^(-(m+1)/2), exact when m + 1 is even.
    const double scale = (m + 1) % 2 == 0 ? std::ldexp(1.0, -(m + 1) / 2) : std::ldexp(kInvSqrt2, -m / 2);
    return sum * scale;
}

bool label_allowed(const ProductStateSpec& spec, const GhzLabel& label) {
    return std::abs(ghz_coefficient(spec, label)) > kZeroTolerance;
}

std::vector<GhzLabel> allowed_label_set(const ProductStateSpec& spec) {
    const int m = spec.size();
    check_ghz_photon_count(m);
    std::vector<GhzLabel> out;
    for (std::uint32_t b = 0; b < (std::uint32_t{1} << m); b++) {
        GhzLabel label(m, b);
        if (label_allowed(spec, label)) {
            out.push_back(label);
        }
    }
    return out;
}

int ClickPattern::parity() const {
    return std::popcount(bits) & 1;
}

std::string ClickPattern::to_string() const {
    std::string s;
    for (int k = width - 1; k >= 0; k--) {
        s.push_back(((bits >> k) & 1U) ? '1' : '0');
    }
    return s;
}

std::vector<ClickPattern> click_patterns_for(const GhzLabel& label) {
    if (!label.linear_optics_identifiable()) {
        throw std::invalid_argument("label " + label.to_string() + " is not heralded by the linear-optics analyzer");
    }
    std::vector<ClickPattern> out;
    const int m = label.width();
    for (std::uint32_t b = 0; b < (std::uint32_t{1} << m); b++) {
        ClickPattern p{m, b};
        if (p.parity() == label.phase_bit()) {
            out.push_back(p);
        }
    }
    return out;
}

AnalyzerOutcome::AnalyzerOutcome(bool ok, GhzLabel label, ClickPattern clicks)
    : succeeded_(ok), label_(label), clicks_(clicks) {
}

AnalyzerOutcome AnalyzerOutcome::success(GhzLabel label, ClickPattern clicks) {
    return AnalyzerOutcome(true, label, clicks);
}

AnalyzerOutcome AnalyzerOutcome::failure() {
    return AnalyzerOutcome(false, GhzLabel(kMinGhzPhotons, 0), ClickPattern{});
}

const GhzLabel& AnalyzerOutcome::label() const {
    if (!succeeded_) {
        throw std::logic_error("failed analyzer outcome has no label");
    }
    return label_;
}

const ClickPattern& AnalyzerOutcome::clicks() const {
    if (!succeeded_) {
        throw std::logic_error("failed analyzer outcome has no click pattern");
    }
    return clicks_;
}

AnalyzerOutcome sample_linear_optics(double p_even, double p_odd, int m, RandomStream& rng) {
    check_ghz_photon_count(m);
    const double u = rng.uniform();
    int phase;
    if (u < p_even) {
        phase = 0;
    } else if (u < p_even + p_odd) {
        phase = 1;
    } else {
        return AnalyzerOutcome::failure();
    }
    // m-1 free detector bits; the last one fixes the parity class.
    const auto free_bits = static_cast<std::uint32_t>(rng.below(std::uint64_t{1} << (m - 1)));
    const int free_parity = std::popcount(free_bits) & 1;
    const std::uint32_t pattern = (free_bits << 1) | static_cast<std::uint32_t>(free_parity ^ phase);
    return AnalyzerOutcome::success(GhzLabel(m, static_cast<std::uint32_t>(phase)), ClickPattern{m, pattern});
}

double linear_optics_success_probability(const StateVector& state) {
    auto d = decompose_in_ghz_basis(state);
    return std::norm(d.coefficients()[0]) + std::norm(d.coefficients()[1]);
}

AnalyzerOutcome analyze_linear_optics(const StateVector& state, RandomStream& rng) {
    auto d = decompose_in_ghz_basis(state);
    return sample_linear_optics(std::norm(d.coefficients()[0]), std::norm(d.coefficients()[1]), state.num_qubits(), rng);
}

std::size_t sample_index(std::span<const double> probabilities, RandomStream& rng) {
    if (probabilities.empty()) {
        throw std::invalid_argument("cannot sample from an empty distribution");
    }
    const double total = std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
    const double u = rng.uniform() * total;
    double acc = 0;
    std::size_t last_nonzero = 0;
    for (std::size_t i = 0; i < probabilities.size(); i++) {
        if (probabilities[i] <= 0) {
            continue;
        }
        acc += probabilities[i];
        last_nonzero = i;
        if (u < acc) {
            return i;
        }
    }
    return last_nonzero;
}

GhzLabel analyze_ideal(const StateVector& state, RandomStream& rng) {
    auto d = decompose_in_ghz_basis(state);
    std::vector<double> probs;
    probs.reserve(d.coefficients().size());
    for (const auto& c : d.coefficients()) {
        probs.push_back(std::norm(c));
    }
    return GhzLabel(state.num_qubits(), static_cast<std::uint32_t>(sample_index(probs, rng)));
}

Eigenstate collapse_reference(const GhzLabel& label, std::span<const Eigenstate> receivers) {
    require_xy(receivers);
    const int m = static_cast<int>(receivers.size()) + 1;
    if (label.width() != m) {
        throw std::invalid_argument("label width must be the number of receivers plus one");
    }
    std::vector<StateVector> parts{bell_phi_minus()};
    for (const auto& e : receivers) {
        parts.push_back(eigenstate(e));
    }
    const StateVector joint = tensor(parts);
    std::vector<int> subsystem(static_cast<std::size_t>(m));
    std::iota(subsystem.begin(), subsystem.end(), 1);
    auto proj = project(joint, subsystem, ghz_state(label));
    if (!proj.residual) {
        throw std::logic_error("label has zero probability for this configuration");
    }
    auto e = classify_eigenstate(*proj.residual);
    if (!e || e->basis == PauliBasis::Z) {
        throw std::logic_error("retained photon did not collapse to an X/Y eigenstate");
    }
    return *e;
}

Eigenstate collapse_by_table(const GhzLabel& label, std::span<const Eigenstate> receivers) {
    require_xy(receivers);
    const int n = static_cast<int>(receivers.size());
    if (label.width() != n + 1) {
        throw std::invalid_argument("label width must be the number of receivers plus one");
    }
    const int alpha = y_count_of(receivers);
    const int beta = minus_count_of(receivers);
    // Receiver j sits at prefix symbol j in the component where the sender's
    // transmitted photon reads 0.
    int gamma = 0;
    for (int j = 0; j < n; j++) {
        if (receivers[static_cast<std::size_t>(j)].basis == PauliBasis::Y && label.symbol(j) == 1) {
            gamma++;
        }
    }
    const int column = (alpha % 2) * 2 + (beta % 2);
    const int row = table_row(alpha - 2 * gamma);
    const auto& table = label.phase_bit() ? kPhaseOneTable : kPhaseZeroTable;
    const Cell& cell = table[static_cast<std::size_t>(row)][static_cast<std::size_t>(column)];
    if (!cell) {
        throw std::logic_error("lookup table has no entry for this case");
    }
    return *cell;
}

Eigenstate predict_collapse(const GhzLabel& label, std::span<const Eigenstate> receivers, CrossCheck check) {
    if (!label.linear_optics_identifiable()) {
        throw std::invalid_argument("label " + label.to_string() + " cannot be reported by the linear-optics analyzer");
    }
    Eigenstate oracle = collapse_reference(label, receivers);
    if (check == CrossCheck::Assert) {
        Eigenstate table = collapse_by_table(label, receivers);
        if (table != oracle) {
            throw std::logic_error(
                "table rules give " + to_string(table) + " but projection gives " + to_string(oracle) + " for label " +
                label.to_string());
        }
    }
    return oracle;
}

std::vector<ComponentCounters> component_counters(const ProductStateSpec& spec) {
    const int m = spec.size();
    std::vector<ComponentCounters> out;
    out.reserve(std::size_t{1} << m);
    for (std::uint64_t j = 0; j < (std::uint64_t{1} << m); j++) {
        ComponentCounters c{j, 0, 0};
        for (int q = 0; q < m; q++) {
            if (((j >> (m - 1 - q)) & 1U) == 0) {
                continue;
            }
            const auto& e = spec.photons()[static_cast<std::size_t>(q)];
            c.gamma += e.basis == PauliBasis::Y;
            c.eta += e.sign == Sign::Minus;
        }
        out.push_back(c);
    }
    return out;
}

StateVector multiparty_product_state(const ProductStateSpec& spec) {
    return spec.state();
}

StateVector product_state_from_counters(const ProductStateSpec& spec) {
    const int m = spec.size();
    const double scale = std::pow(kInvSqrt2, m);
    std::vector<Amplitude> amps(std::size_t{1} << m);
    for (const auto& c : component_counters(spec)) {
        amps[c.basis_index] = i_power(c.gamma) * (c.eta % 2 ? -scale : scale);
    }
    return StateVector(m, std::move(amps));
}

StateVector product_state_from_complements(const ProductStateSpec& spec) {
    const int m = spec.size();
    const int alpha = spec.y_count();
    const int beta = spec.minus_count();
    const double scale = std::pow(kInvSqrt2, m);
    std::vector<Amplitude> amps(std::size_t{1} << m);
    for (const auto& c : component_counters(spec)) {
        amps[all_ones(m) ^ c.basis_index] = i_power(alpha - c.gamma) * ((beta - c.eta) % 2 ? -scale : scale);
    }
    return StateVector(m, std::move(amps));
}

StateVector product_state_paired(const ProductStateSpec& spec) {
    const int m = spec.size();
    const int alpha = spec.y_count();
    const int beta = spec.minus_count();
    const double scale = std::pow(kInvSqrt2, m);
    std::vector<Amplitude> amps(std::size_t{1} << m, Amplitude{0, 0});
    const std::uint64_t leading = std::uint64_t{1} << (m - 1);
    for (const auto& c : component_counters(spec)) {
        if (c.basis_index & leading) {
            continue;
        }
        const Amplitude weight = i_power(c.gamma) * (c.eta % 2 ? -scale : scale);
        const Amplitude relative = i_power(alpha - 2 * c.gamma) * (beta % 2 ? -1.0 : 1.0);
        amps[c.basis_index] += weight;
        amps[all_ones(m) ^ c.basis_index] += weight * relative;
    }
    return StateVector(m, std::move(amps));
}

}  // namespace mdiqss
