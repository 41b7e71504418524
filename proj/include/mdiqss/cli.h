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

#ifndef MDIQSS_CLI_H
#define MDIQSS_CLI_H

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "mdiqss/records.h"

namespace mdiqss {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitCheckFailed = 2;

struct SweepGrid {
    std::vector<AttackKind> attacks{AttackKind::None, AttackKind::InterceptResend, AttackKind::TeleportationBased};
    std::vector<double> noise_p{0.0, 0.05};
    std::vector<int> n_receivers{2, 3};

    std::size_t cell_count() const {
        return attacks.size() * noise_p.size() * n_receivers.size();
    }
    bool operator==(const SweepGrid&) const = default;
};

/// Everything a config file can set.
struct HarnessConfig {
    SessionConfig session;
    SweepGrid sweep;
    std::size_t trials = 200;
    unsigned jobs = 1;
};

/// Parses a config document with optional sections "session", "sweep" and
/// "detect". Unknown keys raise ConfigError.
HarnessConfig harness_config_from_json(const Json& j, HarnessConfig base = {});
HarnessConfig load_harness_config(const std::string& path);

/// One session config per grid cell, attack-major then noise then receiver
/// count. Each cell's seed is derived from (base seed, cell index).
std::vector<SessionConfig> sweep_cells(const SessionConfig& base, const SweepGrid& grid);
/// Runs every cell; reports come back in cell order whatever `jobs` is.
std::vector<RunReport> run_sweep(const SessionConfig& base, const SweepGrid& grid, unsigned jobs = 1);

/// Entry point shared by the command-line tool and the tests. Records go to
/// `out` (or the --out file), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mdiqss

#endif
