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

#include "sca/backends/cassette.hpp"
#include "sca/cli/cli.hpp"
#include "sca/core/error.hpp"
#include "sca/core/sbom.hpp"
#include "sca/eval/eval.hpp"
#include "sca/fixtures/corpus.hpp"

#include "support/support.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <map>
#include <random>
#include <sstream>

namespace fs = std::filesystem;
using namespace sca;
using json = nlohmann::json;

namespace {

const FixedClock kClock{test::fixed_time()};

eval::EvalReport run_fixture_eval() {
    const auto manifest = eval::load_manifest(test::fixtures_dir() / "cases.json");
    return eval::run_eval(manifest, {}, test::replay_backends(test::cassettes_dir() / "eval.json"), kClock);
}

/// Σ prompt + completion tokens over every recorded model reply.
std::uint64_t cassette_llm_tokens(const fs::path& p) {
    const auto j = json::parse(test::read_file(p));
    std::uint64_t sum = 0;
    for (const auto& i : j["interactions"])
        if (i["channel"] == "llm" && i["response"].contains("content"))
            sum += i["response"]["prompt_tokens"].get<std::uint64_t>() +
                   i["response"]["completion_tokens"].get<std::uint64_t>();
    return sum;
}

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args, std::map<std::string, std::string> env = {}) {
    args.insert(args.begin(), "sca");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const auto lookup = [&env](const char* name) -> std::optional<std::string> {
        auto it = env.find(name);
        if (it == env.end()) return std::nullopt;
        return it->second;
    };
    const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err, lookup);
    return {code, out.str(), err.str()};
}

std::string glad_so() { return (test::fixtures_dir() / "so" / "libglad.so").string(); }
std::string cassette(const char* name) { return (test::cassettes_dir() / name).string(); }

} // namespace

// ---- metrics over the shipped fixture --------------------------------------

TEST(Eval, FixtureManifestCounters) {
    const auto report = run_fixture_eval();
    EXPECT_EQ(report.total, 3u);
    EXPECT_EQ(report.collected_url, 1u);
    EXPECT_EQ(report.correct, 1u);
    EXPECT_EQ(report.hints_found, 2u);
    ASSERT_EQ(report.cases.size(), 3u);
    EXPECT_EQ(report.cases[0].status, ReportStatus::Located);
    EXPECT_TRUE(report.cases[0].matched);
    EXPECT_EQ(report.cases[1].status, ReportStatus::HintsOnly);
    EXPECT_EQ(report.cases[2].failure_reason, FailureReason::NetworkFailure);
}

TEST(Eval, MeanTokensMatchesCassette) {
    const auto report = run_fixture_eval();
    const double expected = static_cast<double>(cassette_llm_tokens(test::cassettes_dir() / "eval.json")) / 3.0;
    EXPECT_EQ(report.mean_tokens, expected);
    std::uint64_t rows = 0;
    for (const auto& c : report.cases) rows += c.token_usage;
    EXPECT_EQ(report.mean_tokens, static_cast<double>(rows) / 3.0);
}

TEST(Eval, ReportRoundTrips) {
    const auto report = run_fixture_eval();
    const auto text = eval::serialize_report(report);
    EXPECT_EQ(eval::parse_report(text), report);
    const auto j = json::parse(text);
    EXPECT_EQ(j["total"], 3);
    EXPECT_TRUE(j["aggregates"].contains("mean_tokens"));
}

TEST(Eval, EmptyManifest) {
    const auto report = eval::run_eval({}, {}, fixtures::make_corpus().backends(), kClock);
    EXPECT_EQ(report, eval::EvalReport{});
    EXPECT_EQ(report.mean_tokens, 0.0);
}

TEST(Eval, NonAliasedForkCountsAsCollectedButNotCorrect) {
    eval::EvalCase c{"glad", eval::CaseKind::So, "libglad.so", {std::string(fixtures::kGladOrigin)}, "", {}};
    LibraryReport r;
    r.name = "glad";
    r.status = ReportStatus::Located;
    r.origin_url = "https://github.com/example-fork/glad";
    const auto fork = eval::EvalReport::from_rows({eval::grade(c, r)});
    EXPECT_EQ(fork.collected_url, 1u);
    EXPECT_EQ(fork.correct, 0u);
    r.origin_url = "https://GITHUB.com/dav1dde/glad/";
    EXPECT_TRUE(eval::grade(c, r).matched);
}

TEST(Eval, CounterInequalitiesOnRandomManifests) {
    std::mt19937 rng(41);
    const std::vector<std::pair<std::string, eval::CaseKind>> inputs = {
        {"so/libglad.so", eval::CaseKind::So},
        {"so/libtinyexpr.so", eval::CaseKind::So},
        {"project", eval::CaseKind::Project},
    };
    const std::vector<std::string> urls = {std::string(fixtures::kGladOrigin), "https://glad.dav1d.de/",
                                           std::string(fixtures::kSemverOrigin), std::string(fixtures::kSemverDocsSite),
                                           "https://github.com/example-fork/glad", "https://example.org/"};
    for (int n = 0; n < 40; ++n) {
        json cases = json::array();
        const int count = static_cast<int>(rng() % 6);
        for (int i = 0; i < count; ++i) {
            const auto& [path, kind] = inputs[rng() % inputs.size()];
            json gt = json::array();
            for (int k = 0; k < 1 + static_cast<int>(rng() % 2); ++k) gt.push_back(urls[rng() % urls.size()]);
            cases.push_back({{"id", "c" + std::to_string(i)},
                             {"kind", kind == eval::CaseKind::So ? "so" : "project"},
                             {"input_path", path},
                             {"ground_truth_urls", gt}});
        }
        const auto manifest = eval::parse_manifest(json{{"cases", cases}}.dump(), test::fixtures_dir());
        const auto report = eval::run_eval(manifest, {}, fixtures::make_corpus().backends(), kClock, 1 + rng() % 3);
        EXPECT_LE(report.correct, report.collected_url);
        EXPECT_LE(report.collected_url, report.hints_found);
        EXPECT_LE(report.hints_found, report.total);
        EXPECT_EQ(report.total, static_cast<std::size_t>(count));
        EXPECT_NO_THROW(report.validate());
        std::uint64_t tokens = 0;
        for (const auto& c : report.cases) tokens += c.token_usage;
        if (count > 0) EXPECT_DOUBLE_EQ(report.mean_tokens, static_cast<double>(tokens) / count);
    }
}

TEST(Eval, ManifestErrors) {
    EXPECT_THROW(eval::parse_manifest("not json", "."), ManifestError);
    EXPECT_THROW(eval::parse_manifest(R"({"cases":[{"id":"a","kind":"so","input_path":"x","ground_truth_urls":[]}]})", "."),
                 ManifestError);
    EXPECT_THROW(eval::parse_manifest(R"({"cases":[{"id":"a","kind":"so","input_path":"x","ground_truth_urls":["u"]}]})",
                                      "."),
                 ManifestError);
    EXPECT_THROW(eval::parse_manifest(R"({"cases":[{"id":"a","kind":"apk","input_path":"x","ground_truth_urls":["https://a.org"]}]})",
                                      "."),
                 ManifestError);
    const std::string dup =
        R"({"cases":[{"id":"a","kind":"so","input_path":"x","ground_truth_urls":["https://a.org"]},
                     {"id":"a","kind":"so","input_path":"y","ground_truth_urls":["https://a.org"]}]})";
    EXPECT_THROW(eval::parse_manifest(dup, "."), ManifestError);
    test::TempDir dir;
    test::write_file(dir.path() / "m.json",
                     R"({"cases":[{"id":"a","kind":"so","input_path":"missing.so","ground_truth_urls":["https://a.org"]}]})");
    EXPECT_THROW(eval::load_manifest(dir.path() / "m.json"), Error);
}

TEST(Eval, ReplayMissBecomesFailedRow) {
    const auto manifest = eval::load_manifest(test::fixtures_dir() / "cases.json");
    const auto report = eval::run_eval(manifest, {}, test::replay_backends(test::cassettes_dir() / "glad.json"), kClock);
    EXPECT_EQ(report.total, 3u);
    EXPECT_EQ(report.cases[0].status, ReportStatus::Located);
    EXPECT_EQ(report.cases[1].failure_reason, FailureReason::NetworkFailure);
    EXPECT_NE(report.cases[1].note.find("replay miss"), std::string::npos);
}

// ---- command line ----------------------------------------------------------

TEST(Cli, SoReplayPrintsOnlyTheSbom) {
    const auto r = run({"so", glad_so(), "--backend", "replay", "--cassette", cassette("glad.json")});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const auto doc = parse_sbom(r.out);
    ASSERT_EQ(doc.components.size(), 1u);
    EXPECT_EQ(doc.components[0].name, "glad");
    EXPECT_EQ(format_utc(doc.generated_at), fixtures::kCassetteCreatedAt);
}

TEST(Cli, ProjectReplay) {
    const auto r = run({"project", (test::fixtures_dir() / "project").string(), "--cassette", cassette("semver.json")});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_EQ(parse_sbom(r.out).components.size(), 1u);
}

TEST(Cli, EvalReplayWritesReportFile) {
    test::TempDir dir;
    const auto out = dir.path() / "report.json";
    const auto r = run({"eval", "--manifest", (test::fixtures_dir() / "cases.json").string(), "--report", out.string(),
                        "--cassette", cassette("eval.json")});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_TRUE(r.out.empty());
    const auto report = eval::parse_report(test::read_file(out));
    EXPECT_EQ(report.hints_found, 2u);
}

TEST(Cli, OutputFileAndSourceDateEpoch) {
    test::TempDir dir;
    const auto out = dir.path() / "sbom.json";
    const auto r = run({"so", glad_so(), "--cassette", cassette("glad.json"), "-o", out.string()},
                       {{"SOURCE_DATE_EPOCH", "0"}});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_EQ(format_utc(parse_sbom(test::read_file(out)).generated_at), "1970-01-01T00:00:00Z");
}

TEST(Cli, ReplayMissExitsTwo) {
    const auto r = run({"so", glad_so(), "--cassette", cassette("tinyexpr.json")});
    EXPECT_EQ(r.code, cli::kExitReplayMiss);
    EXPECT_TRUE(r.out.empty());
    EXPECT_NE(r.err.find("llm"), std::string::npos);
}

TEST(Cli, LiveWithoutSearchKeyNamesIt) {
    const auto r = run({"project", (test::fixtures_dir() / "project").string(), "--backend", "live"},
                       {{"LLM_API_KEY", "k"}});
    EXPECT_EQ(r.code, cli::kExitUsage);
    EXPECT_NE(r.err.find("SEARCH_API_KEY"), std::string::npos);
    EXPECT_TRUE(r.out.empty());
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, cli::kExitUsage);
    EXPECT_EQ(run({"so"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"so", glad_so(), "--backend", "offline"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"so", glad_so()}).code, cli::kExitUsage); // replay without a cassette
    EXPECT_EQ(run({"so", "/nonexistent/libq.so", "--cassette", cassette("glad.json")}).code, cli::kExitUsage);
    EXPECT_EQ(run({"so", glad_so(), "--cassette", cassette("glad.json"), "--max-loops", "0"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"--version"}).code, cli::kExitOk);
}

TEST(Cli, TomlAndJsonConfigFiles) {
    test::TempDir dir;
    test::write_file(dir.path() / "sca.toml", "backend = \"replay\"\ncassette = \"" + cassette("glad.json") + "\"\n");
    test::write_file(dir.path() / "sca.json",
                     json{{"backend", "replay"}, {"cassette", cassette("glad.json")}, {"max_loops", 3}}.dump());
    for (const char* f : {"sca.toml", "sca.json"}) {
        const auto r = run({"--config", (dir.path() / f).string(), "so", glad_so()});
        EXPECT_EQ(r.code, cli::kExitOk) << f << ": " << r.err;
        EXPECT_EQ(parse_sbom(r.out).components.size(), 1u);
    }
}

TEST(Cli, RecordNeedsLiveCredentials) {
    test::TempDir dir;
    const auto r = run({"so", glad_so(), "--backend", "record", "--cassette", (dir.path() / "c.json").string()});
    EXPECT_EQ(r.code, cli::kExitUsage);
    EXPECT_NE(r.err.find("LLM_API_KEY"), std::string::npos);
}
