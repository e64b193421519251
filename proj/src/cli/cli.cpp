/*
 * Copyright (C) 2026 The sca authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 * SPDX-License-Identifier: Apache-2.0
 * License-Filename: LICENSE
 */

#include "sca/cli/cli.hpp"

#include "sca/core/clock.hpp"
#include "sca/core/error.hpp"
#include "sca/core/text.hpp"
#include "sca/eval/eval.hpp"
#include "sca/pipeline/pipeline.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <fstream>
#include <ostream>

namespace fs = std::filesystem;

namespace sca::cli {

namespace {

/// Flat JSON config: {"max-loops": 2, "backend": "replay", ...}. Keys match
/// the long flag names; underscores are accepted for dashes.
class JsonConfig : public CLI::Config {
public:
    std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}\n"; }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(input);
        } catch (const nlohmann::json::exception& e) {
            throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
        }
        if (!j.is_object()) throw CLI::ConversionError("config file must hold a JSON object");
        std::vector<CLI::ConfigItem> items;
        flatten(j, {}, items);
        return items;
    }

private:
    static std::string scalar(const nlohmann::json& v) {
        if (v.is_string()) return v.get<std::string>();
        return v.dump();
    }

    static void flatten(const nlohmann::json& obj, const std::vector<std::string>& parents,
                        std::vector<CLI::ConfigItem>& out) {
        for (const auto& [key, value] : obj.items()) {
            std::string name = key;
            std::replace(name.begin(), name.end(), '_', '-');
            if (value.is_object()) {
                auto p = parents;
                p.push_back(name);
                flatten(value, p, out);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = name;
            if (value.is_array()) {
                for (const auto& v : value) item.inputs.push_back(scalar(v));
            } else if (!value.is_null()) {
                item.inputs.push_back(scalar(value));
            }
            out.push_back(std::move(item));
        }
    }
};

struct Options {
    std::string backend = "replay";
    std::string cassette;
    int max_loops = 3;
    int search_pages = 2;
    std::size_t min_string_len = 10;
    int top_k = 3;
    std::string format = "json";
    bool verbose = false;
    std::size_t jobs = 0;
    std::uint64_t token_budget = 60'000;
    double time_budget_s = 180.0;
    std::string out;

    std::string so_path;
    std::string project_dir;
    std::string manifest;
    std::string report;
};

/// The CLI11 formatter is picked before parsing, from the extension of the
/// --config argument, since one parser cannot read both TOML and JSON.
bool config_is_json(int argc, const char* const* argv) {
    for (int i = 1; i < argc; ++i) {
        std::string_view a = argv[i];
        std::string path;
        if (a == "--config" && i + 1 < argc) path = argv[i + 1];
        else if (a.rfind("--config=", 0) == 0) path = std::string(a.substr(9));
        if (!path.empty()) return text::to_lower(fs::path(path).extension().string()) == ".json";
    }
    return false;
}

pipeline::PipelineConfig to_pipeline_config(const Options& o) {
    pipeline::PipelineConfig cfg;
    cfg.max_feedback_loops = o.max_loops;
    cfg.search_pages = o.search_pages;
    cfg.validator_top_k = o.top_k;
    cfg.strings.min_keep_length = o.min_string_len;
    cfg.jobs = o.jobs;
    cfg.token_budget = o.token_budget;
    cfg.wall_budget = std::chrono::milliseconds(static_cast<std::int64_t>(o.time_budget_s * 1000.0));
    cfg.validate();
    return cfg;
}

/// SOURCE_DATE_EPOCH wins; a replayed run reuses the cassette's recording
/// time so its SBOM is reproducible; otherwise the current time.
UtcTime sbom_timestamp(const backends::BackendSession& session, const backends::EnvLookup& env, const Clock& clock) {
    if (auto epoch = env("SOURCE_DATE_EPOCH")) {
        try {
            return UtcTime(std::chrono::seconds(std::stoll(*epoch)));
        } catch (const std::exception&) {
            throw UsageError("SOURCE_DATE_EPOCH must be an integer number of seconds");
        }
    }
    if (session.mode == backends::BackendMode::Replay && session.cassette) {
        if (auto t = parse_utc(session.cassette->created_at)) return *t;
    }
    return clock.now_utc();
}

void write_document(const std::string& doc, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << doc;
        out.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write " + path);
    f << doc;
    if (!f) throw IoError("failed writing " + path);
}

class LoggerScope {
public:
    LoggerScope(std::ostream& err, bool verbose) : previous_(spdlog::default_logger()) {
        auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err, true);
        auto logger = std::make_shared<spdlog::logger>("sca", sink);
        logger->set_pattern("[%l] %v");
        logger->set_level(verbose ? spdlog::level::debug : spdlog::level::warn);
        spdlog::set_default_logger(logger);
    }
    ~LoggerScope() { spdlog::set_default_logger(previous_); }
    LoggerScope(const LoggerScope&) = delete;
    LoggerScope& operator=(const LoggerScope&) = delete;

private:
    std::shared_ptr<spdlog::logger> previous_;
};

int execute(const CLI::App* so, const CLI::App* project, const Options& o, std::ostream& out,
            const backends::EnvLookup& env) {
    if (o.format != "json") throw UsageError("--format: only json is supported");
    const auto cfg = to_pipeline_config(o);
    const auto mode = backends::parse_backend_mode(o.backend);
    if (!mode) throw UsageError("--backend must be live, record or replay, got '" + o.backend + "'");

    backends::BackendOptions bopts;
    bopts.mode = *mode;
    if (!o.cassette.empty()) bopts.cassette_path = fs::path(o.cassette);
    bopts.tool_version = SCA_VERSION;
    auto session = backends::open_backends(bopts, env);
    SystemClock clock;

    if (so->parsed()) {
        if (!fs::is_regular_file(o.so_path)) throw IoError("no such file: " + o.so_path);
        auto reports = pipeline::analyze_so(o.so_path, cfg, session.backends, clock);
        session.finish();
        auto doc = pipeline::make_sbom(reports, sbom_timestamp(session, env, clock));
        write_document(serialize_sbom(doc), o.out, out);
        return kExitOk;
    }
    if (project->parsed()) {
        if (!fs::is_directory(o.project_dir)) throw IoError("no such directory: " + o.project_dir);
        auto analysis = pipeline::analyze_project(o.project_dir, cfg, session.backends, clock);
        session.finish();
        auto doc = pipeline::make_sbom(analysis.reports, sbom_timestamp(session, env, clock));
        write_document(serialize_sbom(doc), o.out, out);
        return kExitOk;
    }
    const auto manifest = eval::load_manifest(o.manifest);
    const std::size_t jobs = o.jobs > 0 ? o.jobs : 1;
    auto report = eval::run_eval(manifest, cfg, session.backends, clock, jobs);
    session.finish();
    write_document(eval::serialize_report(report), o.report.empty() ? o.out : o.report, out);
    return kExitOk;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err, const backends::EnvLookup& env) {
    Options o;
    CLI::App app{"Database-less software composition analysis: identify third-party C/C++ libraries and emit an SBOM",
                 "sca"};
    app.set_version_flag("--version", std::string(SCA_VERSION));
    app.require_subcommand(1);
    app.fallthrough();

    if (config_is_json(argc, argv)) app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "TOML or JSON file with flag values (keys are the long flag names)");

    app.add_option("--backend", o.backend, "live, record or replay")
        ->check(CLI::IsMember({"live", "record", "replay"}))
        ->capture_default_str();
    app.add_option("--cassette", o.cassette, "Cassette file to replay from or record into");
    app.add_option("--max-loops", o.max_loops, "Validation iterations per library")
        ->check(CLI::Range(1, 10))
        ->capture_default_str();
    app.add_option("--search-pages", o.search_pages, "Search result pages per query")
        ->check(CLI::Range(1, 10))
        ->capture_default_str();
    app.add_option("--min-string-len", o.min_string_len, "Shortest binary string passed on")
        ->check(CLI::Range(1, 4096))
        ->capture_default_str();
    app.add_option("--top-k", o.top_k, "Ranked pages shown to the validator")
        ->check(CLI::Range(1, 20))
        ->capture_default_str();
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json"}))->capture_default_str();
    app.add_flag("-v,--verbose", o.verbose, "Debug logging on stderr");
    app.add_option("--jobs", o.jobs, "Libraries (project) or cases (eval) processed in parallel")
        ->check(CLI::Range(1, 64));
    app.add_option("--token-budget", o.token_budget, "Token budget per library")->capture_default_str();
    app.add_option("--time-budget", o.time_budget_s, "Wall-clock budget per library, seconds")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("-o,--out", o.out, "Output file (default stdout)");

    auto* so = app.add_subcommand("so", "Identify the library an ELF shared object was built from");
    so->add_option("file", o.so_path, "Path to the .so file")->required();
    auto* project = app.add_subcommand("project", "Identify libraries vendored into a C/C++ source tree");
    project->add_option("dir", o.project_dir, "Project root directory")->required();
    auto* ev = app.add_subcommand("eval", "Run a labeled case manifest and report metrics");
    ev->add_option("--manifest", o.manifest, "Case manifest (JSON)")->required();
    ev->add_option("--report", o.report, "Report file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << SCA_VERSION << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        if (argc <= 1) err << app.help();
        return kExitUsage;
    }

    LoggerScope logging(err, o.verbose);
    try {
        return execute(so, project, o, out, env);
    } catch (const ReplayMiss& e) {
        err << "error: " << e.what() << "\n"
            << "the cassette has no recording for this request; re-record it with --backend record\n";
        return kExitReplayMiss;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

} // namespace sca::cli
