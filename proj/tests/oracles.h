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

// Independent reference computations shared by the unit tests and the
// acceptance run. Nothing here calls into the library's decomposition or
// collapse code.

#ifndef MDIQSS_TESTS_ORACLES_H
#define MDIQSS_TESTS_ORACLES_H

#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "mdiqss/quantum_core.h"

namespace oracle {

using mdiqss::Amplitude;
using mdiqss::Eigenstate;
using mdiqss::PauliBasis;
using mdiqss::Sign;

inline const double r = 1 / std::sqrt(2.0);
inline const Amplitude I(0, 1);

inline std::vector<Amplitude> single(Eigenstate e) {
    const Amplitude one = e.basis == PauliBasis::X ? Amplitude(1) : I;
    const double s = e.sign == Sign::Plus ? 1 : -1;
    return {r, s * one * r};
}

/// Product state by explicit Kronecker products.
inline std::vector<Amplitude> product(const std::string& compact) {
    std::vector<Amplitude> v{1};
    for (std::size_t k = 0; k < compact.size(); k += 2) {
        auto e = single(mdiqss::parse_eigenstate(compact.substr(k, 2)));
        std::vector<Amplitude> next;
        for (auto a : v) {
            next.push_back(a * e[0]);
            next.push_back(a * e[1]);
        }
        v = next;
    }
    return v;
}

/// (|0 a_0..a_{m-2}> + (-1)^{a_{m-1}} |1 !a_0..!a_{m-2}>)/sqrt2 from the label text.
inline std::vector<Amplitude> ghz_vector(const std::string& label) {
    const int m = static_cast<int>(label.size());
    std::size_t lo = 0;
    for (int k = 0; k < m - 1; k++) {
        lo = (lo << 1) | static_cast<std::size_t>(label[static_cast<std::size_t>(k)] == '1');
    }
    const std::size_t hi = ((std::size_t{1} << m) - 1) ^ lo;
    std::vector<Amplitude> v(std::size_t{1} << m);
    v[lo] += r;
    v[hi] += (label.back() == '1' ? -r : r);
    return v;
}

inline Amplitude dot(const std::vector<Amplitude>& bra, const std::vector<Amplitude>& ket) {
    Amplitude s = 0;
    for (std::size_t k = 0; k < bra.size(); k++) {
        s += std::conj(bra[k]) * ket[k];
    }
    return s;
}

/// The 32 even-Y three-photon expansions, frozen by hand. Each
/// term a coefficient times 1/2. "+i010" means +i |Phi_010>.
struct Expansion {
    const char* state;
    std::vector<const char*> terms;
};
inline const std::vector<Expansion> kFrozenExpansions = {
    {"+x+x+x", {"+000", "+010", "+100", "+110"}},
    {"+x+x-x", {"+001", "-011", "+101", "-111"}},
    {"+x-x+x", {"+001", "+011", "-101", "-111"}},
    {"-x+x+x", {"+001", "+011", "+101", "+111"}},
    {"+x-x-x", {"+000", "-010", "-100", "+110"}},
    {"-x+x-x", {"+000", "-010", "+100", "-110"}},
    {"-x-x+x", {"+000", "+010", "-100", "-110"}},
    {"-x-x-x", {"+001", "-011", "-101", "+111"}},
    {"+x+y+y", {"+001", "+i010", "+i100", "-111"}},
    {"+x+y-y", {"+000", "-i011", "+i101", "+110"}},
    {"+x-y+y", {"+000", "+i011", "-i101", "+110"}},
    {"-x+y+y", {"+000", "+i011", "+i101", "-110"}},
    {"+x-y-y", {"+001", "-i010", "-i100", "-111"}},
    {"-x+y-y", {"+001", "-i010", "+i100", "+111"}},
    {"-x-y+y", {"+001", "+i010", "-i100", "+111"}},
    {"-x-y-y", {"+000", "-i011", "-i101", "-110"}},
    {"+y+x+y", {"+001", "+i010", "+101", "+i110"}},
    {"+y+x-y", {"+000", "-i011", "+100", "-i111"}},
    {"+y-x+y", {"+000", "+i011", "-100", "-i111"}},
    {"-y+x+y", {"+000", "+i011", "+100", "+i111"}},
    {"+y-x-y", {"+001", "-i010", "-101", "+i110"}},
    {"-y+x-y", {"+001", "-i010", "+101", "-i110"}},
    {"-y-x+y", {"+001", "+i010", "-101", "-i110"}},
    {"-y-x-y", {"+000", "-i011", "-100", "+i111"}},
    {"+y+y+x", {"+001", "+011", "+i100", "+i110"}},
    {"+y+y-x", {"+000", "-010", "+i101", "-i111"}},
    {"+y-y+x", {"+000", "+010", "-i101", "-i111"}},
    {"-y+y+x", {"+000", "+010", "+i101", "+i111"}},
    {"+y-y-x", {"+001", "-011", "-i100", "+i110"}},
    {"-y+y-x", {"+001", "-011", "+i100", "-i110"}},
    {"-y-y+x", {"+001", "+011", "-i100", "-i110"}},
    {"-y-y-x", {"+000", "-010", "-i101", "+i111"}},
};

inline std::map<std::string, Amplitude> frozen_coefficients(const Expansion& e) {
    std::map<std::string, Amplitude> out;
    for (std::string t : e.terms) {
        Amplitude c = t[0] == '-' ? -0.5 : 0.5;
        if (t[1] == 'i') {
            c *= I;
        }
        out[t.substr(t.size() - 3)] = c;
    }
    return out;
}


/// Retained photon of the pair (|01> - |10>)/sqrt2 after the other half and
/// the receivers' photons land on Phi_label, by direct contraction.
inline Eigenstate contract(const std::string& label, const std::vector<Eigenstate>& receivers) {
    std::string compact;
    for (auto e : receivers) {
        compact += mdiqss::to_string(e);
    }
    const auto rx = product(compact);
    const auto phi = ghz_vector(label);
    const std::size_t rdim = rx.size();
    // amplitude for retained photon value k
    Amplitude out[2] = {0, 0};
    for (int k = 0; k < 2; k++) {
        for (int a = 0; a < 2; a++) {
            const double pair = (k == 0 && a == 1) ? r : ((k == 1 && a == 0) ? -r : 0);
            if (pair == 0) {
                continue;
            }
            for (std::size_t j = 0; j < rdim; j++) {
                out[k] += pair * rx[j] * std::conj(phi[static_cast<std::size_t>(a) * rdim + j]);
            }
        }
    }
    const double n = std::sqrt(std::norm(out[0]) + std::norm(out[1]));
    auto s = mdiqss::StateVector(1, {out[0] / n, out[1] / n});
    return *mdiqss::classify_eigenstate(s);
}

}  // namespace oracle

#endif
