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

#ifndef MDIQSS_RECORDS_H
#define MDIQSS_RECORDS_H

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mdiqss/detection.h"
#include "mdiqss/ghz.h"
#include "mdiqss/protocol.h"

namespace mdiqss {

using Json = nlohmann::ordered_json;

/// Bits as a string of '0' and '1'.
std::string bits_to_string(const Bits& bits);
Bits bits_from_string(std::string_view text);

/// Session fields in a fixed order, noise as a nested object. Accepted back by
/// config_from_json.
Json config_to_json(const SessionConfig& config);
/// Overlays the keys present in `j` onto `base`. Unknown keys and badly
/// typed values raise ConfigError.
SessionConfig config_from_json(const Json& j, SessionConfig base = {});

/// Summary of one session.
struct RunReport {
    SessionConfig config;
    Verdict verdict = Verdict::Proceed;
    double check_error_rate = 0;
    std::size_t checked_rounds = 0;
    std::size_t eligible_check_rounds = 0;
    bool no_checks = true;
    std::size_t rounds = 0;
    double analyzer_success_fraction = 0;
    std::size_t usable_round_count = 0;
    std::size_t message_bits = 0;
    bool message_truncated = false;
    std::optional<double> message_bit_error_rate;
    bool integrity_ok = false;
    /// Only filled when timing was requested; it is the one field that varies
    /// between identical runs.
    std::optional<double> wall_time_s;

    bool operator==(const RunReport&) const = default;
};

RunReport make_report(const Transcript& transcript);

/// Records carry a "kind" field naming their type.
Json report_to_json(const RunReport& report, std::string_view kind = "run");
RunReport report_from_json(const Json& j);

Json transcript_to_json(const Transcript& t);
Transcript transcript_from_json(const Json& j);

struct DetectionRecord {
    SessionConfig config;
    AttackKind attack = AttackKind::None;
    DetectionStats stats;

    bool operator==(const DetectionRecord&) const = default;
};
Json detection_to_json(const DetectionRecord& r);
DetectionRecord detection_from_json(const Json& j);

struct DecompositionTerm {
    GhzLabel label;
    Amplitude amplitude;

    bool operator==(const DecompositionTerm&) const = default;
};
struct DecompositionRecord {
    ProductStateSpec spec;
    /// Nonzero terms in label order.
    std::vector<DecompositionTerm> terms;

    bool operator==(const DecompositionRecord&) const;
};
DecompositionRecord make_decomposition_record(const ProductStateSpec& spec);
Json decomposition_to_json(const DecompositionRecord& r);
DecompositionRecord decomposition_from_json(const Json& j);

struct TableCase {
    GhzLabel label;
    std::vector<Eigenstate> receivers;
    Eigenstate table;
    Eigenstate oracle;

    bool agree() const {
        return table == oracle;
    }
    bool operator==(const TableCase&) const = default;
};
/// Every two-receiver X/Y pair against each label in `labels`.
std::vector<TableCase> table_cases(std::span<const GhzLabel> labels);
Json table_case_to_json(const TableCase& c);
TableCase table_case_from_json(const Json& j);

/// CSV header and row for a run report (sweeps use an extra leading cell
/// column).
std::string report_csv_header();
std::string report_csv_row(const RunReport& report);

/// Single-line JSON text.
std::string dump_line(const Json& j);

}  // namespace mdiqss

#endif
