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

#ifndef MDIQSS_RANDOM_H
#define MDIQSS_RANDOM_H

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace mdiqss {

/// Mixes a master seed with a stream name and index into an independent seed.
///
/// Every party, channel and analyzer in a session draws from its own named
/// sub-stream so a component can be replayed without touching the others.
std::uint64_t derive_seed(std::uint64_t master, std::string_view name, std::uint64_t index = 0);

/// A seeded random stream.
///
/// Draws are defined purely in terms of the raw 64-bit engine output (no
/// standard distributions), so sequences are identical across standard
/// library implementations.
class RandomStream {
   public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {
    }
    RandomStream(std::uint64_t master, std::string_view name, std::uint64_t index = 0)
        : engine_(derive_seed(master, name, index)) {
    }

    std::uint64_t next_u64() {
        return engine_();
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) {
        return uniform() < p;
    }

    bool coin() {
        return (engine_() >> 63) != 0;
    }

    /// Uniform integer in [0, n). Requires n > 0.
    std::uint64_t below(std::uint64_t n);

   private:
    std::mt19937_64 engine_;
};

}  // namespace mdiqss

#endif
