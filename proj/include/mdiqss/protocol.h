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

#ifndef MDIQSS_PROTOCOL_H
#define MDIQSS_PROTOCOL_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mdiqss/adversary.h"
#include "mdiqss/channel.h"
#include "mdiqss/ghz.h"
#include "mdiqss/photon_register.h"
#include "mdiqss/quantum_core.h"
#include "mdiqss/random.h"

namespace mdiqss {

/// Bad session parameters. Raised before any round runs.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A protocol rule was broken (missing announcement, wrong publication order).
struct ProtocolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// I: one receiver (the reader) gets the encoded photons and measures them
/// once every other receiver has published its state. II: the sender measures
/// her own photons after the receivers publish their bases and announces the
/// results.
enum class DecodeMethod : std::uint8_t { I, II };

std::string to_string(DecodeMethod method);
DecodeMethod parse_decode_method(std::string_view text);
std::string to_string(AnalyzerKind kind);
/// Accepts "linear" and "ideal".
AnalyzerKind parse_analyzer_kind(std::string_view text);

enum class Verdict : std::uint8_t { Proceed, Abort };
std::string to_string(Verdict verdict);
Verdict parse_verdict(std::string_view text);

struct SessionConfig {
    int n_receivers = 2;
    std::size_t k1 = 200;
    std::size_t k2 = 100;
    AnalyzerKind analyzer = AnalyzerKind::LinearOptics;
    AttackKind attack = AttackKind::None;
    NoiseModel noise;
    double error_threshold = 0.05;
    double sampling_bit_fraction = 0.10;
    DecodeMethod decode_method = DecodeMethod::I;
    std::uint64_t master_seed = 0;
    /// Secret to send. When absent, random bits fill the available capacity.
    std::optional<Bits> message;
    /// Odd repetition factor applied to the message (1 = uncoded).
    int repetition = 1;
    /// Abort when fewer checkable decoy rounds than this are available.
    std::size_t min_checked_rounds = 0;
    /// Number of checkable decoy rounds the sender inspects (0 = all).
    std::size_t check_sample_size = 0;
    /// Receiver that gets the encoded photons in decode method I.
    int reader = 0;

    /// Throws ConfigError describing the first bad field.
    void validate() const;

    bool operator==(const SessionConfig&) const = default;
};

struct PairHalf {
    std::size_t pair_id = 0;
    bool operator==(const PairHalf&) const = default;
};
struct Decoy {
    Eigenstate prepared;
    bool operator==(const Decoy&) const = default;
};
using SequenceSlot = std::variant<PairHalf, Decoy>;

inline SlotKind slot_kind(const SequenceSlot& slot) {
    return std::holds_alternative<PairHalf>(slot) ? SlotKind::PairHalf : SlotKind::Decoy;
}

struct SenderSequences {
    /// One entry per pair, the sender's retained half (always the first
    /// qubit of the pair state).
    std::vector<std::size_t> retained;
    std::vector<SequenceSlot> outgoing;
    /// Ascending.
    std::vector<std::size_t> decoy_positions;
};

/// Interleaves k1 pair halves (in pair order) with k2 decoys at uniformly
/// random positions. Decoys are uniform over the four X/Y eigenstates.
SenderSequences prepare_sender_sequences(std::size_t k1, std::size_t k2, RandomStream& rng);

struct RoundRecord {
    std::size_t index = 0;
    SequenceSlot slot;
    std::vector<Eigenstate> receivers;
    AnalyzerOutcome outcome = AnalyzerOutcome::failure();
    /// The sender's retained photon after the round; only for pair rounds
    /// with a successful analysis.
    std::optional<Eigenstate> alice_collapsed;
    /// States the receivers published for a decoy round, in receiver order.
    std::vector<Eigenstate> announced;
    /// What the attacker believes the sender holds for this round.
    std::optional<Eigenstate> attacker_inference;

    SlotKind kind() const {
        return slot_kind(slot);
    }
    bool operator==(const RoundRecord&) const = default;
};

/// Independent random streams a round draws from.
struct RoundStreams {
    RandomStream noise;
    RandomStream analyzer;
    RandomStream attack;

    explicit RoundStreams(std::uint64_t master_seed);
};

/// Sends one slot and the receivers' photons through the channels (and the
/// attacker, if any) to the analyzer.
///
/// The attacker's post-announcement actions for this round run here as well:
/// rounds share no quantum state, so running them now or after the whole
/// sequence has gone out gives the same joint distribution.
RoundRecord run_round(
    std::size_t index, const SequenceSlot& slot, std::span<const Eigenstate> receiver_preparations,
    AnalyzerKind analyzer, const NoiseModel& noise, Adversary* adversary, RoundStreams& streams);

struct CheckResult {
    /// Successful decoy rounds with an even Y count, before sampling.
    std::size_t eligible = 0;
    /// Rounds actually inspected.
    std::vector<std::size_t> checked_rounds;
    std::size_t errors = 0;
    double error_rate = 0;
    /// No rounds were available to check.
    bool no_checks = true;
    Verdict verdict = Verdict::Proceed;

    bool operator==(const CheckResult&) const = default;
};

/// The sender's eavesdropping check. Every successful decoy round must carry
/// one announcement per receiver (ProtocolError otherwise). Rounds whose
/// total Y count is odd are skipped. With sample_size > 0 only that many
/// eligible rounds, chosen by `rng`, are inspected.
CheckResult security_check(
    std::span<const RoundRecord> rounds, double threshold, std::size_t min_checked = 0,
    std::size_t sample_size = 0, RandomStream* rng = nullptr);

/// The sender's phase-flip operation on an X/Y eigenstate: bit 1 flips the
/// sign. Throws std::invalid_argument for Z-basis input.
Eigenstate encode_bit(Eigenstate state, int bit);

enum class PositionRole : std::uint8_t { Sampling, Message, Padding };
std::string to_string(PositionRole role);
PositionRole parse_position_role(std::string_view text);

struct EncodedPosition {
    std::size_t round = 0;
    PositionRole role = PositionRole::Message;
    std::uint8_t bit = 0;
    /// Retained photon after encoding.
    Eigenstate encoded;

    bool operator==(const EncodedPosition&) const = default;
};

enum class AnnouncementKind : std::uint8_t {
    DecoyPositions,
    DecoyState,
    ReceiverState,
    ReceiverBasis,
    SenderResult,
    SamplingReveal,
    ReaderMeasurement,
};
std::string to_string(AnnouncementKind kind);
AnnouncementKind parse_announcement_kind(std::string_view text);

inline constexpr int kSenderParty = -1;

/// One published (or, for ReaderMeasurement, privately recorded) message.
struct Announcement {
    std::size_t seq = 0;
    /// kSenderParty or a receiver index.
    int party = kSenderParty;
    AnnouncementKind kind = AnnouncementKind::DecoyPositions;
    std::optional<std::size_t> round;
    std::string value;

    bool operator==(const Announcement&) const = default;
};

struct DecodeResult {
    DecodeMethod method = DecodeMethod::I;
    /// One entry per receiver; a receiver that cannot decode has none.
    std::vector<std::optional<Bits>> bits;
    bool integrity_ok = false;
    /// Message recovered after repetition decoding, per the first receiver
    /// that decoded.
    Bits message;
    std::vector<Announcement> log;

    bool operator==(const DecodeResult&) const = default;
};

struct Transcript {
    SessionConfig config;
    std::vector<RoundRecord> rounds;
    CheckResult check;
    Verdict verdict = Verdict::Proceed;
    /// Successful pair rounds, ascending. Empty after an abort.
    std::vector<EncodedPosition> encoded;
    /// Message bits actually sent, before repetition coding.
    Bits message_sent;
    /// The configured message did not fit and was cut to whole blocks.
    bool message_truncated = false;
    /// Announcements up to and including the security check.
    std::vector<Announcement> announcements;
    std::optional<DecodeResult> decoded;

    std::size_t analyzer_successes() const;
    /// Pair rounds with a successful analysis.
    std::size_t usable_round_count() const;
    bool integrity_ok() const {
        return decoded && decoded->integrity_ok;
    }
    /// Fraction of sent message bits recovered wrongly; none when nothing was
    /// sent.
    std::optional<double> message_bit_error_rate() const;

    bool operator==(const Transcript&) const = default;
};

/// Decodes the encoded positions of a Proceed transcript. The bit at a
/// position is 0 when the measured or announced retained state matches the
/// collapse reference and 1 otherwise. Noise on the sender-to-reader leg in
/// method I is drawn from `rng`. Throws ProtocolError on an aborted
/// transcript.
DecodeResult decode_message(const Transcript& transcript, DecodeMethod method, RandomStream& rng);

/// Checks the publication order of a decode log: in method II every
/// receiver's basis for a position precedes the sender's result, and in
/// method I every other receiver's state precedes the reader's measurement.
/// Throws ProtocolError on a violation.
void verify_announcement_order(std::span<const Announcement> log, DecodeMethod method, int n_receivers, int reader);

/// Reference state of the retained photon for a successful round: the table
/// rules for three photons and linear-optics labels (cross-checked against
/// projection), the projection oracle otherwise.
Eigenstate collapse_reference_for(const GhzLabel& label, std::span<const Eigenstate> receivers);

/// Runs all protocol steps. Throws ConfigError before any round if the
/// config is invalid.
Transcript run_session(const SessionConfig& config);

}  // namespace mdiqss

#endif
