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

#include "mdiqss/detection.h"

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace mdiqss {

namespace {

struct TrialResult {
    bool aborted = false;
    std::size_t checked = 0;
    std::size_t errors = 0;
};

TrialResult run_trial(SessionConfig config, std::size_t t) {
    config.master_seed = derive_seed(config.master_seed, "detect", t);
    const Transcript tr = run_session(config);
    return TrialResult{tr.verdict == Verdict::Abort, tr.check.checked_rounds.size(), tr.check.errors};
}

}  // namespace

DetectionStats measure_detection_rate(const SessionConfig& config, AttackKind attack, std::size_t trials, unsigned jobs) {
    if (trials < 1) {
        throw std::invalid_argument("need at least one trial");
    }
    SessionConfig base = config;
    base.attack = attack;
    base.validate();

    std::vector<TrialResult> results(trials);
    const std::size_t workers = std::clamp<std::size_t>(jobs, 1, trials);
    if (workers == 1) {
        for (std::size_t t = 0; t < trials; t++) {
            results[t] = run_trial(base, t);
        }
    } else {
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; w++) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t t = w; t < trials; t += workers) {
                        results[t] = run_trial(base, t);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) {
            th.join();
        }
        for (auto& e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }

    DetectionStats s;
    s.sessions = trials;
    for (const auto& r : results) {
        s.aborted += r.aborted;
        s.checked += r.checked;
        s.check_errors += r.errors;
    }
    s.detection_rate = static_cast<double>(s.aborted) / static_cast<double>(s.sessions);
    s.per_check_error_rate =
        s.checked == 0 ? 0.0 : static_cast<double>(s.check_errors) / static_cast<double>(s.checked);
    return s;
}

}  // namespace mdiqss
