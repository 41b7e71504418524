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

#include "mdiqss/protocol.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace mdiqss {

namespace {

/// k distinct indices from [0, n), ascending. Partial Fisher-Yates over our
/// own `below` so the draw does not depend on the standard library.
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k, RandomStream& rng) {
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; i++) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

Eigenstate random_xy_eigenstate(RandomStream& rng) {
    return kXYEigenstates[static_cast<std::size_t>(rng.below(kXYEigenstates.size()))];
}

void fail(const std::string& message) {
    throw ConfigError(message);
}

void check_fraction(double v, const char* name) {
    if (!(v >= 0 && v <= 1)) {
        fail(std::string(name) + " must be in [0, 1], got " + std::to_string(v));
    }
}

ProductStateSpec decoy_spec(const RoundRecord& r) {
    std::vector<Eigenstate> photons{std::get<Decoy>(r.slot).prepared};
    photons.insert(photons.end(), r.announced.begin(), r.announced.end());
    return ProductStateSpec(std::move(photons));
}

class Log {
   public:
    explicit Log(std::size_t first_seq) : next_(first_seq) {
    }
    void add(int party, AnnouncementKind kind, std::optional<std::size_t> round, std::string value) {
        entries.push_back(Announcement{next_++, party, kind, round, std::move(value)});
    }
    std::vector<Announcement> entries;

   private:
    std::size_t next_;
};

}  // namespace

std::string to_string(DecodeMethod method) {
    return method == DecodeMethod::I ? "I" : "II";
}

DecodeMethod parse_decode_method(std::string_view text) {
    if (text == "I" || text == "1") {
        return DecodeMethod::I;
    }
    if (text == "II" || text == "2") {
        return DecodeMethod::II;
    }
    throw std::invalid_argument("unknown decode method '" + std::string(text) + "' (I, II)");
}

std::string to_string(AnalyzerKind kind) {
    return kind == AnalyzerKind::LinearOptics ? "linear" : "ideal";
}

AnalyzerKind parse_analyzer_kind(std::string_view text) {
    if (text == "linear") {
        return AnalyzerKind::LinearOptics;
    }
    if (text == "ideal") {
        return AnalyzerKind::Ideal;
    }
    throw std::invalid_argument("unknown analyzer '" + std::string(text) + "' (linear, ideal)");
}

std::string to_string(Verdict verdict) {
    return verdict == Verdict::Proceed ? "proceed" : "abort";
}

Verdict parse_verdict(std::string_view text) {
    if (text == "proceed") {
        return Verdict::Proceed;
    }
    if (text == "abort") {
        return Verdict::Abort;
    }
    throw std::invalid_argument("unknown verdict '" + std::string(text) + "'");
}

std::string to_string(PositionRole role) {
    switch (role) {
        case PositionRole::Sampling:
            return "sampling";
        case PositionRole::Message:
            return "message";
        case PositionRole::Padding:
            return "padding";
    }
    return "?";
}

PositionRole parse_position_role(std::string_view text) {
    if (text == "sampling") {
        return PositionRole::Sampling;
    }
    if (text == "message") {
        return PositionRole::Message;
    }
    if (text == "padding") {
        return PositionRole::Padding;
    }
    throw std::invalid_argument("unknown position role '" + std::string(text) + "'");
}

namespace {

constexpr std::pair<AnnouncementKind, const char*> kAnnouncementNames[] = {
    {AnnouncementKind::DecoyPositions, "decoy-positions"},
    {AnnouncementKind::DecoyState, "decoy-state"},
    {AnnouncementKind::ReceiverState, "receiver-state"},
    {AnnouncementKind::ReceiverBasis, "receiver-basis"},
    {AnnouncementKind::SenderResult, "sender-result"},
    {AnnouncementKind::SamplingReveal, "sampling-reveal"},
    {AnnouncementKind::ReaderMeasurement, "reader-measurement"},
};

}  // namespace

std::string to_string(AnnouncementKind kind) {
    for (const auto& [k, name] : kAnnouncementNames) {
        if (k == kind) {
            return name;
        }
    }
    return "?";
}

AnnouncementKind parse_announcement_kind(std::string_view text) {
    for (const auto& [k, name] : kAnnouncementNames) {
        if (text == name) {
            return k;
        }
    }
    throw std::invalid_argument("unknown announcement kind '" + std::string(text) + "'");
}

void SessionConfig::validate() const {
    if (n_receivers < 2 || n_receivers + 1 > kMaxGhzPhotons) {
        fail("n_receivers must be in [2, " + std::to_string(kMaxGhzPhotons - 1) + "], got " +
             std::to_string(n_receivers));
    }
    if (k1 < 1) {
        fail("k1 must be at least 1");
    }
    check_fraction(error_threshold, "error_threshold");
    check_fraction(sampling_bit_fraction, "sampling_bit_fraction");
    try {
        noise.validate();
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }
    if (repetition < 1 || repetition % 2 == 0) {
        fail("repetition must be odd and positive, got " + std::to_string(repetition));
    }
    if (reader < 0 || reader >= n_receivers) {
        fail("reader must name a receiver in [0, " + std::to_string(n_receivers - 1) + "]");
    }
    if (message) {
        for (auto b : *message) {
            if (b > 1) {
                fail("message bits must be 0 or 1");
            }
        }
    }
}

SenderSequences prepare_sender_sequences(std::size_t k1, std::size_t k2, RandomStream& rng) {
    if (k1 < 1) {
        throw std::invalid_argument("k1 must be at least 1");
    }
    SenderSequences out;
    out.decoy_positions = sample_without_replacement(k1 + k2, k2, rng);
    out.outgoing.reserve(k1 + k2);
    std::size_t next_decoy = 0;
    std::size_t next_pair = 0;
    for (std::size_t i = 0; i < k1 + k2; i++) {
        if (next_decoy < out.decoy_positions.size() && out.decoy_positions[next_decoy] == i) {
            out.outgoing.emplace_back(Decoy{random_xy_eigenstate(rng)});
            next_decoy++;
        } else {
            out.retained.push_back(next_pair);
            out.outgoing.emplace_back(PairHalf{next_pair});
            next_pair++;
        }
    }
    return out;
}

RoundStreams::RoundStreams(std::uint64_t master_seed)
    : noise(master_seed, "channel"), analyzer(master_seed, "analyzer"), attack(master_seed, "attack") {
}

RoundRecord run_round(
    std::size_t index, const SequenceSlot& slot, std::span<const Eigenstate> receiver_preparations,
    AnalyzerKind analyzer, const NoiseModel& noise, Adversary* adversary, RoundStreams& streams) {
    RoundRecord rec;
    rec.index = index;
    rec.slot = slot;
    rec.receivers.assign(receiver_preparations.begin(), receiver_preparations.end());

    PhotonRegister reg;
    std::optional<PhotonId> retained;
    PhotonId sent;
    if (const auto* decoy = std::get_if<Decoy>(&slot)) {
        sent = reg.add(decoy->prepared);
    } else {
        auto ids = reg.add(bell_phi_minus());
        retained = ids[0];
        sent = ids[1];
    }
    std::vector<PhotonId> inputs{sent};
    for (auto e : receiver_preparations) {
        if (e.basis == PauliBasis::Z) {
            throw std::invalid_argument("receiver preparations must be X or Y eigenstates");
        }
        inputs.push_back(reg.add(e));
    }
    for (auto id : inputs) {
        apply_noise(reg, id, noise, streams.noise);
    }

    std::optional<PhotonTap> tap;
    if (adversary != nullptr) {
        tap.emplace(reg, sent);
        inputs[0] = adversary->intercept(index, *tap, streams.attack);
    }

    rec.outcome = analyze_photons(reg, inputs, analyzer, streams.analyzer);

    if (adversary != nullptr) {
        RoundDisclosure info{index, rec.kind(), rec.outcome, rec.receivers};
        adversary->after_disclosure(*tap, info, streams.attack);
        rec.attacker_inference = adversary->inference(index);
    }

    if (retained && rec.outcome.succeeded()) {
        auto e = classify_eigenstate(reg.lone_photon_state(*retained));
        if (!e) {
            throw std::logic_error("retained photon left in a non-eigenstate");
        }
        rec.alice_collapsed = e;
    }
    return rec;
}

CheckResult security_check(
    std::span<const RoundRecord> rounds, double threshold, std::size_t min_checked, std::size_t sample_size,
    RandomStream* rng) {
    CheckResult res;
    std::vector<std::size_t> eligible;
    for (std::size_t k = 0; k < rounds.size(); k++) {
        const auto& r = rounds[k];
        if (r.kind() != SlotKind::Decoy || !r.outcome.succeeded()) {
            continue;
        }
        if (r.announced.size() != r.receivers.size()) {
            throw ProtocolError("decoy round " + std::to_string(r.index) + " is missing receiver announcements");
        }
        if (decoy_spec(r).y_count() % 2 == 0) {
            eligible.push_back(k);
        }
    }
    res.eligible = eligible.size();

    std::vector<std::size_t> chosen = eligible;
    if (sample_size > 0 && eligible.size() > sample_size) {
        if (rng == nullptr) {
            throw std::invalid_argument("sampling the check needs a random stream");
        }
        chosen.clear();
        for (auto j : sample_without_replacement(eligible.size(), sample_size, *rng)) {
            chosen.push_back(eligible[j]);
        }
    }
    for (auto k : chosen) {
        const auto& r = rounds[k];
        res.checked_rounds.push_back(r.index);
        if (!label_allowed(decoy_spec(r), r.outcome.label())) {
            res.errors++;
        }
    }
    res.no_checks = chosen.empty();
    res.error_rate = chosen.empty() ? 0.0 : static_cast<double>(res.errors) / static_cast<double>(chosen.size());
    const bool too_few = chosen.size() < min_checked;
    res.verdict = (res.error_rate > threshold || too_few) ? Verdict::Abort : Verdict::Proceed;
    return res;
}

Eigenstate encode_bit(Eigenstate state, int bit) {
    if (state.basis == PauliBasis::Z) {
        throw std::invalid_argument("encoding needs an X or Y eigenstate");
    }
    if (bit != 0 && bit != 1) {
        throw std::invalid_argument("bit must be 0 or 1");
    }
    return bit ? flipped(state) : state;
}

Eigenstate collapse_reference_for(const GhzLabel& label, std::span<const Eigenstate> receivers) {
    if (label.width() == 3 && label.linear_optics_identifiable()) {
        return predict_collapse(label, receivers, CrossCheck::Assert);
    }
    return collapse_reference(label, receivers);
}

std::size_t Transcript::analyzer_successes() const {
    return static_cast<std::size_t>(
        std::count_if(rounds.begin(), rounds.end(), [](const RoundRecord& r) { return r.outcome.succeeded(); }));
}

std::size_t Transcript::usable_round_count() const {
    return static_cast<std::size_t>(std::count_if(rounds.begin(), rounds.end(), [](const RoundRecord& r) {
        return r.kind() == SlotKind::PairHalf && r.outcome.succeeded();
    }));
}

std::optional<double> Transcript::message_bit_error_rate() const {
    if (!decoded || message_sent.empty()) {
        return std::nullopt;
    }
    const Bits& got = decoded->message;
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < message_sent.size(); i++) {
        if (i >= got.size() || got[i] != message_sent[i]) {
            wrong++;
        }
    }
    return static_cast<double>(wrong) / static_cast<double>(message_sent.size());
}

DecodeResult decode_message(const Transcript& transcript, DecodeMethod method, RandomStream& rng) {
    if (transcript.verdict != Verdict::Proceed) {
        throw ProtocolError("an aborted session has nothing to decode");
    }
    const int n = transcript.config.n_receivers;
    const int reader = transcript.config.reader;
    const NoiseModel& noise = transcript.config.noise;

    DecodeResult out;
    out.method = method;
    out.bits.assign(static_cast<std::size_t>(n), std::nullopt);
    Log log(transcript.announcements.size());
    Bits decoded;
    decoded.reserve(transcript.encoded.size());

    for (const auto& pos : transcript.encoded) {
        const RoundRecord& r = transcript.rounds.at(pos.round);
        const Eigenstate ref = collapse_reference_for(r.outcome.label(), r.receivers);
        Sign seen;
        if (method == DecodeMethod::I) {
            for (int j = 0; j < n; j++) {
                if (j != reader) {
                    log.add(j, AnnouncementKind::ReceiverState, pos.round, to_string(r.receivers[j]));
                }
            }
            StateVector photon = eigenstate(pos.encoded);
            photon = apply_depolarizing(photon, 0, noise.depolarizing_p, rng);
            photon = apply_dephasing(photon, 0, noise.dephasing_q, rng);
            seen = measure_in_basis(photon, 0, ref.basis, rng).sign;
            log.add(reader, AnnouncementKind::ReaderMeasurement, pos.round, to_string(ref.basis));
        } else {
            for (int j = 0; j < n; j++) {
                log.add(j, AnnouncementKind::ReceiverBasis, pos.round, to_string(r.receivers[j].basis));
            }
            seen = measure_in_basis(eigenstate(pos.encoded), 0, ref.basis, rng).sign;
            log.add(kSenderParty, AnnouncementKind::SenderResult, pos.round, to_string(Eigenstate{ref.basis, seen}));
            for (int j = 0; j < n; j++) {
                log.add(j, AnnouncementKind::ReceiverState, pos.round, to_string(r.receivers[j]));
            }
        }
        decoded.push_back(seen == ref.sign ? 0 : 1);
    }

    bool ok = true;
    for (std::size_t i = 0; i < transcript.encoded.size(); i++) {
        const auto& pos = transcript.encoded[i];
        if (pos.role == PositionRole::Sampling) {
            log.add(kSenderParty, AnnouncementKind::SamplingReveal, pos.round, std::to_string(pos.bit));
            ok = ok && decoded[i] == pos.bit;
        }
    }
    out.integrity_ok = ok;

    if (method == DecodeMethod::I) {
        out.bits[static_cast<std::size_t>(reader)] = decoded;
    } else {
        for (auto& b : out.bits) {
            b = decoded;
        }
    }

    Bits coded;
    for (std::size_t i = 0; i < transcript.encoded.size(); i++) {
        if (transcript.encoded[i].role == PositionRole::Message) {
            coded.push_back(decoded[i]);
        }
    }
    out.message = repetition_decode(coded, transcript.config.repetition);
    out.log = std::move(log.entries);
    return out;
}

void verify_announcement_order(std::span<const Announcement> log, DecodeMethod method, int n_receivers, int reader) {
    std::map<std::size_t, std::set<int>> published;
    std::optional<std::size_t> last_seq;
    for (const auto& a : log) {
        if (last_seq && a.seq <= *last_seq) {
            throw ProtocolError("announcement sequence numbers are not increasing at " + std::to_string(a.seq));
        }
        last_seq = a.seq;
        if (!a.round) {
            continue;
        }
        const std::size_t round = *a.round;
        if (method == DecodeMethod::II) {
            if (a.kind == AnnouncementKind::ReceiverBasis) {
                published[round].insert(a.party);
            } else if (a.kind == AnnouncementKind::SenderResult) {
                if (published[round].size() != static_cast<std::size_t>(n_receivers)) {
                    throw ProtocolError(
                        "sender published a result for round " + std::to_string(round) +
                        " before every receiver announced a basis");
                }
            }
        } else {
            if (a.kind == AnnouncementKind::ReceiverState && a.party != reader) {
                published[round].insert(a.party);
            } else if (a.kind == AnnouncementKind::ReaderMeasurement) {
                if (published[round].size() != static_cast<std::size_t>(n_receivers - 1)) {
                    throw ProtocolError(
                        "reader measured round " + std::to_string(round) +
                        " before the other receivers published their states");
                }
            }
        }
    }
}

Transcript run_session(const SessionConfig& config) {
    config.validate();
    const std::uint64_t seed = config.master_seed;
    RandomStream prepare_rng(seed, "sender.prepare");
    RandomStream receiver_rng(seed, "receivers");
    RandomStream check_rng(seed, "check");
    RandomStream sampling_rng(seed, "sampling");
    RandomStream message_rng(seed, "message");
    RandomStream decode_rng(seed, "decode");
    RoundStreams streams(seed);

    Transcript t;
    t.config = config;
    const auto n = static_cast<std::size_t>(config.n_receivers);
    const SenderSequences seqs = prepare_sender_sequences(config.k1, config.k2, prepare_rng);
    auto adversary = make_adversary(config.attack);

    t.rounds.reserve(seqs.outgoing.size());
    std::vector<Eigenstate> preps(n);
    for (std::size_t i = 0; i < seqs.outgoing.size(); i++) {
        for (auto& e : preps) {
            e = random_xy_eigenstate(receiver_rng);
        }
        t.rounds.push_back(run_round(i, seqs.outgoing[i], preps, config.analyzer, config.noise, adversary.get(), streams));
    }

    // Decoy positions go public, then each receiver states its photon for
    // every successful decoy round. A corrupt receiver speaks last.
    Log log(0);
    std::string positions;
    for (auto p : seqs.decoy_positions) {
        positions += (positions.empty() ? "" : ",") + std::to_string(p);
    }
    log.add(kSenderParty, AnnouncementKind::DecoyPositions, std::nullopt, positions);
    const int corrupt = adversary ? adversary->corrupt_receiver() : -1;
    for (auto& r : t.rounds) {
        if (r.kind() != SlotKind::Decoy || !r.outcome.succeeded()) {
            continue;
        }
        std::vector<std::optional<Eigenstate>> said(n);
        for (std::size_t j = 0; j < n; j++) {
            if (static_cast<int>(j) != corrupt) {
                said[j] = r.receivers[j];
                log.add(static_cast<int>(j), AnnouncementKind::DecoyState, r.index, to_string(r.receivers[j]));
            }
        }
        if (adversary) {
            const auto c = static_cast<std::size_t>(corrupt);
            RoundDisclosure info{r.index, r.kind(), r.outcome, r.receivers};
            said[c] = adversary->announce(info, r.receivers[c], said, streams.attack);
            log.add(corrupt, AnnouncementKind::DecoyState, r.index, to_string(*said[c]));
        }
        r.announced.clear();
        for (auto& s : said) {
            r.announced.push_back(*s);
        }
    }

    t.check = security_check(
        t.rounds, config.error_threshold, config.min_checked_rounds, config.check_sample_size, &check_rng);
    t.verdict = t.check.verdict;
    t.announcements = std::move(log.entries);
    if (t.verdict == Verdict::Abort) {
        return t;
    }

    std::vector<std::size_t> usable;
    for (const auto& r : t.rounds) {
        if (r.alice_collapsed) {
            usable.push_back(r.index);
        }
    }
    const auto n_sampling = static_cast<std::size_t>(
        std::llround(config.sampling_bit_fraction * static_cast<double>(usable.size())));
    const auto sampling = sample_without_replacement(usable.size(), n_sampling, sampling_rng);
    const std::size_t capacity = usable.size() - n_sampling;
    const auto r = static_cast<std::size_t>(config.repetition);
    const std::size_t max_message = capacity / r;
    if (config.message) {
        t.message_sent = *config.message;
        if (t.message_sent.size() > max_message) {
            t.message_sent.resize(max_message);
            t.message_truncated = true;
        }
    } else {
        t.message_sent.resize(max_message);
        for (auto& b : t.message_sent) {
            b = message_rng.coin() ? 1 : 0;
        }
    }
    const Bits coded = repetition_encode(t.message_sent, config.repetition);

    std::size_t next_sampling = 0;
    std::size_t next_coded = 0;
    for (std::size_t k = 0; k < usable.size(); k++) {
        EncodedPosition pos;
        pos.round = usable[k];
        if (next_sampling < sampling.size() && sampling[next_sampling] == k) {
            pos.role = PositionRole::Sampling;
            pos.bit = sampling_rng.coin() ? 1 : 0;
            next_sampling++;
        } else if (next_coded < coded.size()) {
            pos.role = PositionRole::Message;
            pos.bit = coded[next_coded++];
        } else {
            pos.role = PositionRole::Padding;
            pos.bit = message_rng.coin() ? 1 : 0;
        }
        pos.encoded = encode_bit(*t.rounds[pos.round].alice_collapsed, pos.bit);
        t.encoded.push_back(pos);
    }

    DecodeResult d = decode_message(t, config.decode_method, decode_rng);
    verify_announcement_order(d.log, d.method, config.n_receivers, config.reader);
    t.decoded = std::move(d);
    return t;
}

}  // namespace mdiqss
