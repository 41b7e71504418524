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

#include "mdiqss/records.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace mdiqss {

namespace {

template <typename T>
T read(const Json& j, const char* key) {
    if (!j.contains(key)) {
        throw std::invalid_argument(std::string("record is missing '") + key + "'");
    }
    return j.at(key).get<T>();
}

Json optional_double(const std::optional<double>& v) {
    return v ? Json(*v) : Json(nullptr);
}

std::optional<double> read_optional_double(const Json& j, const char* key) {
    const Json& v = j.at(key);
    if (v.is_null()) {
        return std::nullopt;
    }
    return v.get<double>();
}

Json eigenstates_to_json(std::span<const Eigenstate> states) {
    Json out = Json::array();
    for (auto e : states) {
        out.push_back(to_string(e));
    }
    return out;
}

std::vector<Eigenstate> eigenstates_from_json(const Json& j) {
    std::vector<Eigenstate> out;
    for (const auto& v : j) {
        out.push_back(parse_eigenstate(v.get<std::string>()));
    }
    return out;
}

Json optional_eigenstate(const std::optional<Eigenstate>& e) {
    return e ? Json(to_string(*e)) : Json(nullptr);
}

std::optional<Eigenstate> read_optional_eigenstate(const Json& j, const char* key) {
    const Json& v = j.at(key);
    if (v.is_null()) {
        return std::nullopt;
    }
    return parse_eigenstate(v.get<std::string>());
}

ClickPattern click_pattern_from_string(std::string_view text) {
    ClickPattern c;
    c.width = static_cast<int>(text.size());
    for (char ch : text) {
        if (ch != '0' && ch != '1') {
            throw std::invalid_argument("bad click pattern '" + std::string(text) + "'");
        }
        c.bits = (c.bits << 1) | static_cast<std::uint32_t>(ch == '1');
    }
    return c;
}

Json outcome_to_json(const AnalyzerOutcome& o) {
    Json j;
    j["success"] = o.succeeded();
    j["label"] = o.succeeded() ? Json(o.label().to_string()) : Json(nullptr);
    j["clicks"] = o.succeeded() ? Json(o.clicks().to_string()) : Json(nullptr);
    return j;
}

AnalyzerOutcome outcome_from_json(const Json& j) {
    if (!read<bool>(j, "success")) {
        return AnalyzerOutcome::failure();
    }
    return AnalyzerOutcome::success(
        GhzLabel::parse(read<std::string>(j, "label")), click_pattern_from_string(read<std::string>(j, "clicks")));
}

Json check_to_json(const CheckResult& c) {
    Json j;
    j["eligible"] = c.eligible;
    j["checked_rounds"] = c.checked_rounds;
    j["errors"] = c.errors;
    j["error_rate"] = c.error_rate;
    j["no_checks"] = c.no_checks;
    j["verdict"] = to_string(c.verdict);
    return j;
}

CheckResult check_from_json(const Json& j) {
    CheckResult c;
    c.eligible = read<std::size_t>(j, "eligible");
    c.checked_rounds = read<std::vector<std::size_t>>(j, "checked_rounds");
    c.errors = read<std::size_t>(j, "errors");
    c.error_rate = read<double>(j, "error_rate");
    c.no_checks = read<bool>(j, "no_checks");
    c.verdict = parse_verdict(read<std::string>(j, "verdict"));
    return c;
}

Json announcements_to_json(std::span<const Announcement> log) {
    Json out = Json::array();
    for (const auto& a : log) {
        Json j;
        j["seq"] = a.seq;
        j["party"] = a.party;
        j["kind"] = to_string(a.kind);
        j["round"] = a.round ? Json(*a.round) : Json(nullptr);
        j["value"] = a.value;
        out.push_back(std::move(j));
    }
    return out;
}

std::vector<Announcement> announcements_from_json(const Json& j) {
    std::vector<Announcement> out;
    for (const auto& v : j) {
        Announcement a;
        a.seq = read<std::size_t>(v, "seq");
        a.party = read<int>(v, "party");
        a.kind = parse_announcement_kind(read<std::string>(v, "kind"));
        if (!v.at("round").is_null()) {
            a.round = v.at("round").get<std::size_t>();
        }
        a.value = read<std::string>(v, "value");
        out.push_back(std::move(a));
    }
    return out;
}

Json round_to_json(const RoundRecord& r) {
    Json j;
    j["index"] = r.index;
    if (const auto* p = std::get_if<PairHalf>(&r.slot)) {
        j["slot"] = "pair";
        j["pair_id"] = p->pair_id;
    } else {
        j["slot"] = "decoy";
        j["decoy"] = to_string(std::get<Decoy>(r.slot).prepared);
    }
    j["receivers"] = eigenstates_to_json(r.receivers);
    j["outcome"] = outcome_to_json(r.outcome);
    j["alice_collapsed"] = optional_eigenstate(r.alice_collapsed);
    j["announced"] = eigenstates_to_json(r.announced);
    j["attacker_inference"] = optional_eigenstate(r.attacker_inference);
    return j;
}

RoundRecord round_from_json(const Json& j) {
    RoundRecord r;
    r.index = read<std::size_t>(j, "index");
    const auto slot = read<std::string>(j, "slot");
    if (slot == "pair") {
        r.slot = PairHalf{read<std::size_t>(j, "pair_id")};
    } else if (slot == "decoy") {
        r.slot = Decoy{parse_eigenstate(read<std::string>(j, "decoy"))};
    } else {
        throw std::invalid_argument("unknown slot '" + slot + "'");
    }
    r.receivers = eigenstates_from_json(j.at("receivers"));
    r.outcome = outcome_from_json(j.at("outcome"));
    r.alice_collapsed = read_optional_eigenstate(j, "alice_collapsed");
    r.announced = eigenstates_from_json(j.at("announced"));
    r.attacker_inference = read_optional_eigenstate(j, "attacker_inference");
    return r;
}

Json decode_to_json(const DecodeResult& d) {
    Json j;
    j["method"] = to_string(d.method);
    Json bits = Json::array();
    for (const auto& b : d.bits) {
        bits.push_back(b ? Json(bits_to_string(*b)) : Json(nullptr));
    }
    j["bits"] = std::move(bits);
    j["integrity_ok"] = d.integrity_ok;
    j["message"] = bits_to_string(d.message);
    j["log"] = announcements_to_json(d.log);
    return j;
}

DecodeResult decode_from_json(const Json& j) {
    DecodeResult d;
    d.method = parse_decode_method(read<std::string>(j, "method"));
    for (const auto& b : j.at("bits")) {
        d.bits.push_back(b.is_null() ? std::nullopt : std::optional<Bits>(bits_from_string(b.get<std::string>())));
    }
    d.integrity_ok = read<bool>(j, "integrity_ok");
    d.message = bits_from_string(read<std::string>(j, "message"));
    d.log = announcements_from_json(j.at("log"));
    return d;
}

/// Shortest text that reads back as the same double.
std::string csv_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace

std::string bits_to_string(const Bits& bits) {
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits) {
        s.push_back(b ? '1' : '0');
    }
    return s;
}

Bits bits_from_string(std::string_view text) {
    Bits out;
    out.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("bit strings may only contain 0 and 1, got '" + std::string(text) + "'");
        }
        out.push_back(c == '1' ? 1 : 0);
    }
    return out;
}

Json config_to_json(const SessionConfig& c) {
    Json j;
    j["n_receivers"] = c.n_receivers;
    j["k1"] = c.k1;
    j["k2"] = c.k2;
    j["analyzer"] = to_string(c.analyzer);
    j["attack"] = to_string(c.attack);
    j["noise"] = Json{{"depolarizing_p", c.noise.depolarizing_p}, {"dephasing_q", c.noise.dephasing_q}};
    j["error_threshold"] = c.error_threshold;
    j["sampling_bit_fraction"] = c.sampling_bit_fraction;
    j["decode_method"] = to_string(c.decode_method);
    j["master_seed"] = c.master_seed;
    j["message"] = c.message ? Json(bits_to_string(*c.message)) : Json(nullptr);
    j["repetition"] = c.repetition;
    j["min_checked_rounds"] = c.min_checked_rounds;
    j["check_sample_size"] = c.check_sample_size;
    j["reader"] = c.reader;
    return j;
}

SessionConfig config_from_json(const Json& j, SessionConfig c) {
    if (!j.is_object()) {
        throw ConfigError("session config must be an object");
    }
    for (const auto& [key, v] : j.items()) {
        try {
            if (key == "n_receivers") {
                c.n_receivers = v.get<int>();
            } else if (key == "k1") {
                c.k1 = v.get<std::size_t>();
            } else if (key == "k2") {
                c.k2 = v.get<std::size_t>();
            } else if (key == "analyzer") {
                c.analyzer = parse_analyzer_kind(v.get<std::string>());
            } else if (key == "attack") {
                c.attack = parse_attack_kind(v.get<std::string>());
            } else if (key == "noise") {
                if (!v.is_object()) {
                    throw ConfigError("noise must be an object");
                }
                for (const auto& [nk, nv] : v.items()) {
                    if (nk == "depolarizing_p") {
                        c.noise.depolarizing_p = nv.get<double>();
                    } else if (nk == "dephasing_q") {
                        c.noise.dephasing_q = nv.get<double>();
                    } else {
                        throw ConfigError("unknown noise key '" + nk + "'");
                    }
                }
            } else if (key == "error_threshold") {
                c.error_threshold = v.get<double>();
            } else if (key == "sampling_bit_fraction") {
                c.sampling_bit_fraction = v.get<double>();
            } else if (key == "decode_method") {
                c.decode_method = parse_decode_method(v.get<std::string>());
            } else if (key == "master_seed") {
                c.master_seed = v.get<std::uint64_t>();
            } else if (key == "message") {
                if (v.is_null()) {
                    c.message.reset();
                } else {
                    c.message = bits_from_string(v.get<std::string>());
                }
            } else if (key == "repetition") {
                c.repetition = v.get<int>();
            } else if (key == "min_checked_rounds") {
                c.min_checked_rounds = v.get<std::size_t>();
            } else if (key == "check_sample_size") {
                c.check_sample_size = v.get<std::size_t>();
            } else if (key == "reader") {
                c.reader = v.get<int>();
            } else {
                throw ConfigError("unknown session key '" + key + "'");
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("bad value for '" + key + "': " + e.what());
        } catch (const std::invalid_argument& e) {
            throw ConfigError("bad value for '" + key + "': " + e.what());
        }
    }
    return c;
}

RunReport make_report(const Transcript& t) {
    RunReport r;
    r.config = t.config;
    r.verdict = t.verdict;
    r.check_error_rate = t.check.error_rate;
    r.checked_rounds = t.check.checked_rounds.size();
    r.eligible_check_rounds = t.check.eligible;
    r.no_checks = t.check.no_checks;
    r.rounds = t.rounds.size();
    r.analyzer_success_fraction =
        t.rounds.empty() ? 0.0 : static_cast<double>(t.analyzer_successes()) / static_cast<double>(t.rounds.size());
    r.usable_round_count = t.usable_round_count();
    r.message_bits = t.message_sent.size();
    r.message_truncated = t.message_truncated;
    r.message_bit_error_rate = t.message_bit_error_rate();
    r.integrity_ok = t.integrity_ok();
    return r;
}

Json report_to_json(const RunReport& r, std::string_view kind) {
    Json j;
    j["kind"] = kind;
    j["config"] = config_to_json(r.config);
    j["verdict"] = to_string(r.verdict);
    j["check_error_rate"] = r.check_error_rate;
    j["checked_rounds"] = r.checked_rounds;
    j["eligible_check_rounds"] = r.eligible_check_rounds;
    j["no_checks"] = r.no_checks;
    j["rounds"] = r.rounds;
    j["analyzer_success_fraction"] = r.analyzer_success_fraction;
    j["usable_round_count"] = r.usable_round_count;
    j["message_bits"] = r.message_bits;
    j["message_truncated"] = r.message_truncated;
    j["message_bit_error_rate"] = optional_double(r.message_bit_error_rate);
    j["integrity_ok"] = r.integrity_ok;
    j["wall_time_s"] = optional_double(r.wall_time_s);
    return j;
}

RunReport report_from_json(const Json& j) {
    RunReport r;
    r.config = config_from_json(j.at("config"));
    r.verdict = parse_verdict(read<std::string>(j, "verdict"));
    r.check_error_rate = read<double>(j, "check_error_rate");
    r.checked_rounds = read<std::size_t>(j, "checked_rounds");
    r.eligible_check_rounds = read<std::size_t>(j, "eligible_check_rounds");
    r.no_checks = read<bool>(j, "no_checks");
    r.rounds = read<std::size_t>(j, "rounds");
    r.analyzer_success_fraction = read<double>(j, "analyzer_success_fraction");
    r.usable_round_count = read<std::size_t>(j, "usable_round_count");
    r.message_bits = read<std::size_t>(j, "message_bits");
    r.message_truncated = read<bool>(j, "message_truncated");
    r.message_bit_error_rate = read_optional_double(j, "message_bit_error_rate");
    r.integrity_ok = read<bool>(j, "integrity_ok");
    r.wall_time_s = read_optional_double(j, "wall_time_s");
    return r;
}

Json transcript_to_json(const Transcript& t) {
    Json j;
    j["kind"] = "transcript";
    j["config"] = config_to_json(t.config);
    Json rounds = Json::array();
    for (const auto& r : t.rounds) {
        rounds.push_back(round_to_json(r));
    }
    j["rounds"] = std::move(rounds);
    j["check"] = check_to_json(t.check);
    j["verdict"] = to_string(t.verdict);
    Json encoded = Json::array();
    for (const auto& p : t.encoded) {
        encoded.push_back(Json{
            {"round", p.round}, {"role", to_string(p.role)}, {"bit", p.bit}, {"encoded", to_string(p.encoded)}});
    }
    j["encoded"] = std::move(encoded);
    j["message_sent"] = bits_to_string(t.message_sent);
    j["message_truncated"] = t.message_truncated;
    j["announcements"] = announcements_to_json(t.announcements);
    j["decoded"] = t.decoded ? decode_to_json(*t.decoded) : Json(nullptr);
    return j;
}

Transcript transcript_from_json(const Json& j) {
    Transcript t;
    t.config = config_from_json(j.at("config"));
    for (const auto& r : j.at("rounds")) {
        t.rounds.push_back(round_from_json(r));
    }
    t.check = check_from_json(j.at("check"));
    t.verdict = parse_verdict(read<std::string>(j, "verdict"));
    for (const auto& p : j.at("encoded")) {
        EncodedPosition pos;
        pos.round = read<std::size_t>(p, "round");
        pos.role = parse_position_role(read<std::string>(p, "role"));
        pos.bit = read<std::uint8_t>(p, "bit");
        pos.encoded = parse_eigenstate(read<std::string>(p, "encoded"));
        t.encoded.push_back(pos);
    }
    t.message_sent = bits_from_string(read<std::string>(j, "message_sent"));
    t.message_truncated = read<bool>(j, "message_truncated");
    t.announcements = announcements_from_json(j.at("announcements"));
    if (!j.at("decoded").is_null()) {
        t.decoded = decode_from_json(j.at("decoded"));
    }
    return t;
}

Json detection_to_json(const DetectionRecord& r) {
    Json j;
    j["kind"] = "detection";
    j["config"] = config_to_json(r.config);
    j["attack"] = to_string(r.attack);
    j["sessions"] = r.stats.sessions;
    j["aborted"] = r.stats.aborted;
    j["checked"] = r.stats.checked;
    j["check_errors"] = r.stats.check_errors;
    j["per_check_error_rate"] = r.stats.per_check_error_rate;
    j["detection_rate"] = r.stats.detection_rate;
    return j;
}

DetectionRecord detection_from_json(const Json& j) {
    DetectionRecord r;
    r.config = config_from_json(j.at("config"));
    r.attack = parse_attack_kind(read<std::string>(j, "attack"));
    r.stats.sessions = read<std::size_t>(j, "sessions");
    r.stats.aborted = read<std::size_t>(j, "aborted");
    r.stats.checked = read<std::size_t>(j, "checked");
    r.stats.check_errors = read<std::size_t>(j, "check_errors");
    r.stats.per_check_error_rate = read<double>(j, "per_check_error_rate");
    r.stats.detection_rate = read<double>(j, "detection_rate");
    return r;
}

bool DecompositionRecord::operator==(const DecompositionRecord& other) const {
    return std::ranges::equal(spec.photons(), other.spec.photons()) && terms == other.terms;
}

DecompositionRecord make_decomposition_record(const ProductStateSpec& spec) {
    check_ghz_photon_count(spec.size());
    DecompositionRecord r{spec, {}};
    for (std::uint32_t b = 0; b < (std::uint32_t{1} << spec.size()); b++) {
        GhzLabel label(spec.size(), b);
        Amplitude a = ghz_coefficient(spec, label);
        if (std::abs(a) > kZeroTolerance) {
            r.terms.push_back(DecompositionTerm{label, a});
        }
    }
    return r;
}

Json decomposition_to_json(const DecompositionRecord& r) {
    Json j;
    j["kind"] = "decomposition";
    j["spec"] = r.spec.to_string();
    j["photons"] = r.spec.size();
    j["y_count"] = r.spec.y_count();
    Json terms = Json::array();
    for (const auto& t : r.terms) {
        terms.push_back(Json{
            {"label", t.label.to_string()},
            {"re", t.amplitude.real()},
            {"im", t.amplitude.imag()},
            {"weight", std::norm(t.amplitude)}});
    }
    j["terms"] = std::move(terms);
    return j;
}

DecompositionRecord decomposition_from_json(const Json& j) {
    DecompositionRecord r{ProductStateSpec::parse(read<std::string>(j, "spec")), {}};
    for (const auto& t : j.at("terms")) {
        r.terms.push_back(DecompositionTerm{
            GhzLabel::parse(read<std::string>(t, "label")), Amplitude(read<double>(t, "re"), read<double>(t, "im"))});
    }
    return r;
}

std::vector<TableCase> table_cases(std::span<const GhzLabel> labels) {
    std::vector<TableCase> out;
    for (const auto& label : labels) {
        for (auto a : kXYEigenstates) {
            for (auto b : kXYEigenstates) {
                const Eigenstate rx[] = {a, b};
                out.push_back(TableCase{label, {a, b}, collapse_by_table(label, rx), collapse_reference(label, rx)});
            }
        }
    }
    return out;
}

Json table_case_to_json(const TableCase& c) {
    Json j;
    j["kind"] = "table-case";
    j["label"] = c.label.to_string();
    j["receivers"] = eigenstates_to_json(c.receivers);
    j["table"] = to_string(c.table);
    j["oracle"] = to_string(c.oracle);
    j["agree"] = c.agree();
    return j;
}

TableCase table_case_from_json(const Json& j) {
    TableCase c{
        GhzLabel::parse(read<std::string>(j, "label")),
        eigenstates_from_json(j.at("receivers")),
        parse_eigenstate(read<std::string>(j, "table")),
        parse_eigenstate(read<std::string>(j, "oracle"))};
    if (read<bool>(j, "agree") != c.agree()) {
        throw std::invalid_argument("table-case record has an inconsistent 'agree' field");
    }
    return c;
}

std::string report_csv_header() {
    return "n_receivers,k1,k2,analyzer,attack,depolarizing_p,dephasing_q,error_threshold,master_seed,verdict,"
           "check_error_rate,checked_rounds,analyzer_success_fraction,usable_round_count,message_bits,"
           "message_bit_error_rate,integrity_ok";
}

std::string report_csv_row(const RunReport& r) {
    std::ostringstream s;
    s << r.config.n_receivers << ',' << r.config.k1 << ',' << r.config.k2 << ',' << to_string(r.config.analyzer) << ','
      << to_string(r.config.attack) << ',' << csv_double(r.config.noise.depolarizing_p) << ','
      << csv_double(r.config.noise.dephasing_q) << ',' << csv_double(r.config.error_threshold) << ','
      << r.config.master_seed << ',' << to_string(r.verdict) << ',' << csv_double(r.check_error_rate) << ','
      << r.checked_rounds << ',' << csv_double(r.analyzer_success_fraction) << ',' << r.usable_round_count << ','
      << r.message_bits << ',' << (r.message_bit_error_rate ? csv_double(*r.message_bit_error_rate) : "") << ','
      << (r.integrity_ok ? "true" : "false");
    return s.str();
}

std::string dump_line(const Json& j) {
    return j.dump();
}

}  // namespace mdiqss
