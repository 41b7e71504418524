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

#ifndef MDIQSS_DETECTION_H
#define MDIQSS_DETECTION_H

#include <cstddef>
#include <cstdint>

#include "mdiqss/adversary.h"
#include "mdiqss/protocol.h"

namespace mdiqss {

struct DetectionStats {
    std::size_t sessions = 0;
    std::size_t aborted = 0;
    std::size_t checked = 0;
    std::size_t check_errors = 0;
    /// check_errors / checked over all sessions (0 when nothing was checked).
    double per_check_error_rate = 0;
    /// aborted / sessions.
    double detection_rate = 0;

    bool operator==(const DetectionStats&) const = default;
};

/// Runs `trials` independent sessions of `config` with `attack` installed.
/// Session t uses the seed derived from (config.master_seed, t), so the
/// result does not depend on `jobs`.
DetectionStats measure_detection_rate(
    const SessionConfig& config, AttackKind attack, std::size_t trials, unsigned jobs = 1);

}  // namespace mdiqss

#endif
