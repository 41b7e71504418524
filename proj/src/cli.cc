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

#include "mdiqss/cli.h"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

namespace mdiqss {

namespace {

bool looks_like_states(const std::string& token) {
    if (token.empty() || token.size() % 2 != 0) {
        return false;
    }
    for (std::size_t i = 0; i < token.size(); i += 2) {
        const char sign = token[i];
        const char axis = static_cast<char>(std::tolower(static_cast<unsigned char>(token[i + 1])));
        if ((sign != '+' && sign != '-') || (axis != 'x' && axis != 'y' && axis != 'z')) {
            return false;
        }
    }
    return true;
}

// "-y" would otherwise be read as a flag, so decompose's state tokens are
// moved behind "--".
std::vector<std::string> move_state_tokens(const std::vector<std::string>& args) {
    auto it = std::find(args.begin(), args.end(), "decompose");
    if (it == args.end()) {
        return args;
    }
    std::vector<std::string> out(args.begin(), it + 1);
    std::vector<std::string> states;
    for (auto k = it + 1; k != args.end(); ++k) {
        if (*k == "--") {
            continue;
        }
        (looks_like_states(*k) ? states : out).push_back(*k);
    }
    if (!states.empty()) {
        out.push_back("--");
        out.insert(out.end(), states.begin(), states.end());
    }
    return out;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

double parse_double(const std::string& text, const char* what) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty()) {
        throw ConfigError(std::string("bad ") + what + " '" + text + "'");
    }
    return v;
}

int parse_int(const std::string& text, const char* what) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty()) {
        throw ConfigError(std::string("bad ") + what + " '" + text + "'");
    }
    return v;
}

SweepGrid sweep_from_json(const Json& j, SweepGrid g) {
    if (!j.is_object()) {
        throw ConfigError("sweep section must be an object");
    }
    for (const auto& [key, v] : j.items()) {
        try {
            if (key == "attacks") {
                g.attacks.clear();
                for (const auto& a : v) {
                    g.attacks.push_back(parse_attack_kind(a.get<std::string>()));
                }
            } else if (key == "noise_p") {
                g.noise_p = v.get<std::vector<double>>();
            } else if (key == "n_receivers") {
                g.n_receivers = v.get<std::vector<int>>();
            } else {
                throw ConfigError("unknown sweep key '" + key + "'");
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError("bad value for sweep '" + key + "': " + e.what());
        }
    }
    return g;
}

void check_grid(const SweepGrid& g) {
    if (g.attacks.empty() || g.noise_p.empty() || g.n_receivers.empty()) {
        throw ConfigError("every sweep axis needs at least one value");
    }
}

/// Options shared by the session-running subcommands.
struct SessionFlags {
    std::string config_path;
    std::uint64_t seed = 0;
    std::string attack;
    std::string analyzer;
    int receivers = 0;
    std::size_t k1 = 0;
    std::size_t k2 = 0;
    double noise_p = 0;
    double dephasing_q = 0;
    double threshold = 0;
    double sampling_fraction = 0;
    std::string decode;
    std::string message;
    int repetition = 1;
    std::size_t min_checked = 0;
    std::size_t check_sample = 0;
    int reader = 0;

    std::vector<std::pair<std::string, CLI::Option*>> opts;

    void attach(CLI::App* app) {
        opts.emplace_back("config", app->add_option("--config", config_path, "JSON config file"));
        opts.emplace_back("seed", app->add_option("--seed", seed, "master seed"));
        opts.emplace_back("attack", app->add_option("--attack", attack, "none, intercept-resend or teleport"));
        opts.emplace_back("analyzer", app->add_option("--analyzer", analyzer, "linear or ideal"));
        opts.emplace_back("receivers", app->add_option("--receivers", receivers, "number of receivers"));
        opts.emplace_back("k1", app->add_option("--k1", k1, "entangled pairs"));
        opts.emplace_back("k2", app->add_option("--k2", k2, "decoy photons"));
        opts.emplace_back("noise-p", app->add_option("--noise-p", noise_p, "depolarizing probability per photon"));
        opts.emplace_back(
            "dephasing-q", app->add_option("--dephasing-q", dephasing_q, "dephasing probability per photon"));
        opts.emplace_back("threshold", app->add_option("--threshold", threshold, "abort threshold"));
        opts.emplace_back(
            "sampling-fraction",
            app->add_option("--sampling-fraction", sampling_fraction, "fraction of usable rounds used as sampling bits"));
        opts.emplace_back("decode", app->add_option("--decode", decode, "decoding method, I or II"));
        opts.emplace_back("message", app->add_option("--message", message, "message bits, e.g. 10110"));
        opts.emplace_back("repetition", app->add_option("--repetition", repetition, "odd repetition factor"));
        opts.emplace_back(
            "min-checked", app->add_option("--min-checked", min_checked, "abort below this many checked rounds"));
        opts.emplace_back(
            "check-sample", app->add_option("--check-sample", check_sample, "decoy rounds inspected (0 = all)"));
        opts.emplace_back("reader", app->add_option("--reader", reader, "receiver decoding in method I"));
    }

    bool given(const std::string& name) const {
        for (const auto& [n, o] : opts) {
            if (n == name) {
                return o->count() > 0;
            }
        }
        return false;
    }

    HarnessConfig resolve() const {
        HarnessConfig h;
        if (given("config")) {
            h = load_harness_config(config_path);
        }
        SessionConfig& c = h.session;
        try {
            if (given("seed")) {
                c.master_seed = seed;
            }
            if (given("attack")) {
                c.attack = parse_attack_kind(attack);
            }
            if (given("analyzer")) {
                c.analyzer = parse_analyzer_kind(analyzer);
            }
            if (given("decode")) {
                c.decode_method = parse_decode_method(decode);
            }
            if (given("message")) {
                c.message = bits_from_string(message);
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        if (given("receivers")) {
            c.n_receivers = receivers;
        }
        if (given("k1")) {
            c.k1 = k1;
        }
        if (given("k2")) {
            c.k2 = k2;
        }
        if (given("noise-p")) {
            c.noise.depolarizing_p = noise_p;
        }
        if (given("dephasing-q")) {
            c.noise.dephasing_q = dephasing_q;
        }
        if (given("threshold")) {
            c.error_threshold = threshold;
        }
        if (given("sampling-fraction")) {
            c.sampling_bit_fraction = sampling_fraction;
        }
        if (given("repetition")) {
            c.repetition = repetition;
        }
        if (given("min-checked")) {
            c.min_checked_rounds = min_checked;
        }
        if (given("check-sample")) {
            c.check_sample_size = check_sample;
        }
        if (given("reader")) {
            c.reader = reader;
        }
        c.validate();
        return h;
    }
};

enum class Format { Lines, Csv };

Format parse_format(const std::string& text) {
    if (text == "lines") {
        return Format::Lines;
    }
    if (text == "csv") {
        return Format::Csv;
    }
    throw ConfigError("unknown format '" + text + "' (lines, csv)");
}

}  // namespace

HarnessConfig harness_config_from_json(const Json& j, HarnessConfig h) {
    if (!j.is_object()) {
        throw ConfigError("config document must be an object");
    }
    for (const auto& [key, v] : j.items()) {
        if (key == "session") {
            h.session = config_from_json(v, h.session);
        } else if (key == "sweep") {
            h.sweep = sweep_from_json(v, h.sweep);
        } else if (key == "detect") {
            if (!v.is_object()) {
                throw ConfigError("detect section must be an object");
            }
            for (const auto& [dk, dv] : v.items()) {
                try {
                    if (dk == "trials") {
                        h.trials = dv.get<std::size_t>();
                    } else if (dk == "jobs") {
                        h.jobs = dv.get<unsigned>();
                    } else {
                        throw ConfigError("unknown detect key '" + dk + "'");
                    }
                } catch (const ConfigError&) {
                    throw;
                } catch (const std::exception& e) {
                    throw ConfigError("bad value for detect '" + dk + "': " + e.what());
                }
            }
        } else {
            throw ConfigError("unknown config section '" + key + "'");
        }
    }
    return h;
}

HarnessConfig load_harness_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    return harness_config_from_json(j);
}

std::vector<SessionConfig> sweep_cells(const SessionConfig& base, const SweepGrid& grid) {
    check_grid(grid);
    std::vector<SessionConfig> cells;
    cells.reserve(grid.cell_count());
    for (auto attack : grid.attacks) {
        for (double p : grid.noise_p) {
            for (int n : grid.n_receivers) {
                SessionConfig c = base;
                c.attack = attack;
                c.noise.depolarizing_p = p;
                c.n_receivers = n;
                c.master_seed = derive_seed(base.master_seed, "sweep-cell", cells.size());
                c.validate();
                cells.push_back(c);
            }
        }
    }
    return cells;
}

std::vector<RunReport> run_sweep(const SessionConfig& base, const SweepGrid& grid, unsigned jobs) {
    const auto cells = sweep_cells(base, grid);
    std::vector<RunReport> reports(cells.size());
    const std::size_t workers = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(cells.size(), 1));
    std::vector<std::exception_ptr> errors(workers);
    auto work = [&](std::size_t w) {
        try {
            for (std::size_t i = w; i < cells.size(); i += workers) {
                reports[i] = make_report(run_session(cells[i]));
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; w++) {
            pool.emplace_back(work, w);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return reports;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Simulator for sender-controlled measurement-device-independent quantum secret sharing", "mdiqss"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string out_path;
    std::string format_text = "lines";
    app.add_option("--out", out_path, "write records to this file instead of standard output");
    app.add_option("--format", format_text, "lines or csv")->check(CLI::IsMember({"lines", "csv"}));

    auto* run_cmd = app.add_subcommand("run", "run one session and print its report");
    SessionFlags run_flags;
    run_flags.attach(run_cmd);
    bool emit_transcript = false;
    bool timing = false;
    run_cmd->add_flag("--emit-transcript", emit_transcript, "print the full transcript before the report");
    run_cmd->add_flag("--timing", timing, "include wall-clock time (output then varies between runs)");

    auto* sweep_cmd = app.add_subcommand("sweep", "run a grid of sessions, one record per cell");
    SessionFlags sweep_flags;
    sweep_flags.attach(sweep_cmd);
    std::string attacks_text;
    std::string noise_text;
    std::string receivers_text;
    unsigned sweep_jobs = 0;
    auto* attacks_opt = sweep_cmd->add_option("--attacks", attacks_text, "comma-separated attack axis");
    auto* noise_opt = sweep_cmd->add_option("--noise-ps", noise_text, "comma-separated depolarizing axis");
    auto* receivers_opt = sweep_cmd->add_option("--receivers-list", receivers_text, "comma-separated receiver axis");
    auto* sweep_jobs_opt = sweep_cmd->add_option("--jobs", sweep_jobs, "worker threads");

    auto* decompose_cmd = app.add_subcommand("decompose", "print the GHZ-basis decomposition of a product state");
    std::vector<std::string> spec_tokens;
    decompose_cmd->add_option("spec", spec_tokens, "photon states, e.g. +x +x +x or +x+x+x")->required();

    auto* tables_cmd = app.add_subcommand("check-tables", "compare the lookup tables against projection");
    bool all_labels = false;
    tables_cmd->add_flag("--all-labels", all_labels, "also cover labels linear optics cannot report");

    auto* detect_cmd = app.add_subcommand("detect", "estimate how often an attack is caught");
    SessionFlags detect_flags;
    detect_flags.attach(detect_cmd);
    std::size_t trials = 0;
    unsigned detect_jobs = 0;
    auto* trials_opt = detect_cmd->add_option("--trials", trials, "independent sessions");
    auto* detect_jobs_opt = detect_cmd->add_option("--jobs", detect_jobs, "worker threads");

    const auto ordered = move_state_tokens(args);
    std::vector<std::string> reversed(ordered.rbegin(), ordered.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    }

    std::ofstream file;
    std::ostream* sink = &out;
    try {
        const Format format = parse_format(format_text);
        if (!out_path.empty()) {
            file.open(out_path);
            if (!file) {
                throw ConfigError("cannot open output file '" + out_path + "'");
            }
            sink = &file;
        }
        auto emit = [&](const Json& j) { *sink << dump_line(j) << "\n"; };

        if (run_cmd->parsed()) {
            const HarnessConfig h = run_flags.resolve();
            const auto start = std::chrono::steady_clock::now();
            const Transcript t = run_session(h.session);
            RunReport report = make_report(t);
            if (timing) {
                report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            }
            if (format == Format::Csv) {
                *sink << report_csv_header() << "\n" << report_csv_row(report) << "\n";
            } else {
                if (emit_transcript) {
                    emit(transcript_to_json(t));
                }
                emit(report_to_json(report));
            }
        } else if (sweep_cmd->parsed()) {
            HarnessConfig h = sweep_flags.resolve();
            if (attacks_opt->count() > 0) {
                h.sweep.attacks.clear();
                for (const auto& a : split_list(attacks_text)) {
                    try {
                        h.sweep.attacks.push_back(parse_attack_kind(a));
                    } catch (const std::invalid_argument& e) {
                        throw ConfigError(e.what());
                    }
                }
            }
            if (noise_opt->count() > 0) {
                h.sweep.noise_p.clear();
                for (const auto& p : split_list(noise_text)) {
                    h.sweep.noise_p.push_back(parse_double(p, "noise probability"));
                }
            }
            if (receivers_opt->count() > 0) {
                h.sweep.n_receivers.clear();
                for (const auto& n : split_list(receivers_text)) {
                    h.sweep.n_receivers.push_back(parse_int(n, "receiver count"));
                }
            }
            if (sweep_jobs_opt->count() > 0) {
                h.jobs = sweep_jobs;
            }
            const auto reports = run_sweep(h.session, h.sweep, h.jobs);
            if (format == Format::Csv) {
                *sink << "cell," << report_csv_header() << "\n";
            }
            for (std::size_t i = 0; i < reports.size(); i++) {
                if (format == Format::Csv) {
                    *sink << i << "," << report_csv_row(reports[i]) << "\n";
                } else {
                    Json j = report_to_json(reports[i], "sweep-cell");
                    j["cell"] = i;
                    emit(j);
                }
            }
        } else if (decompose_cmd->parsed()) {
            if (format == Format::Csv) {
                throw ConfigError("decompose only writes lines");
            }
            ProductStateSpec spec = [&] {
                try {
                    return spec_tokens.size() == 1 ? ProductStateSpec::parse(spec_tokens.front())
                                                   : ProductStateSpec::parse(spec_tokens);
                } catch (const std::invalid_argument& e) {
                    throw ConfigError(e.what());
                }
            }();
            try {
                emit(decomposition_to_json(make_decomposition_record(spec)));
            } catch (const std::out_of_range& e) {
                throw ConfigError(e.what());
            }
        } else if (tables_cmd->parsed()) {
            if (format == Format::Csv) {
                throw ConfigError("check-tables only writes lines");
            }
            std::vector<GhzLabel> labels;
            const std::uint32_t count = all_labels ? 8 : 2;
            for (std::uint32_t b = 0; b < count; b++) {
                labels.emplace_back(3, b);
            }
            const auto cases = table_cases(labels);
            std::size_t agreements = 0;
            for (const auto& c : cases) {
                agreements += c.agree();
                emit(table_case_to_json(c));
            }
            emit(Json{{"kind", "table-summary"}, {"cases", cases.size()}, {"agreements", agreements}});
            if (agreements != cases.size()) {
                err << "table rules disagree with projection on " << (cases.size() - agreements) << " case(s)\n";
                return kExitCheckFailed;
            }
        } else if (detect_cmd->parsed()) {
            if (format == Format::Csv) {
                throw ConfigError("detect only writes lines");
            }
            HarnessConfig h = detect_flags.resolve();
            if (trials_opt->count() > 0) {
                h.trials = trials;
            }
            if (detect_jobs_opt->count() > 0) {
                h.jobs = detect_jobs;
            }
            if (h.trials < 1) {
                throw ConfigError("--trials must be at least 1");
            }
            DetectionRecord rec{h.session, h.session.attack, {}};
            rec.stats = measure_detection_rate(h.session, h.session.attack, h.trials, h.jobs);
            emit(detection_to_json(rec));
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    sink->flush();
    return kExitOk;
}

}  // namespace mdiqss
