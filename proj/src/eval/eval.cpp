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

#include "sca/eval/eval.hpp"

#include "sca/core/error.hpp"
#include "sca/core/parallel.hpp"
#include "sca/core/url.hpp"

#include <json.hpp>
#include <spdlog/spdlog.h>

#include <fstream>
#include <set>
#include <sstream>

namespace fs = std::filesystem;

namespace sca::eval {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

std::optional<CaseKind> parse_kind(const std::string& s) {
    if (s == "so") return CaseKind::So;
    if (s == "project") return CaseKind::Project;
    return std::nullopt;
}

CaseResult failed_row(const EvalCase& c, FailureReason reason, std::string note) {
    CaseResult r;
    r.id = c.id;
    r.status = ReportStatus::Failed;
    r.failure_reason = reason;
    r.note = std::move(note);
    return r;
}

CaseResult run_case(const EvalCase& c, const pipeline::PipelineConfig& cfg, const backends::Backends& backends,
                    const Clock& clock) {
    const auto start = clock.elapsed();
    auto elapsed_ms = [&] {
        const auto d = (clock.elapsed() - start).count();
        return d > 0 ? static_cast<std::uint64_t>(d) : 0;
    };
    try {
        if (c.kind == CaseKind::So) {
            auto reports = pipeline::analyze_so(c.input_path, cfg, backends, clock);
            auto row = grade(c, reports.front());
            row.wall_time_ms = elapsed_ms();
            return row;
        }
        auto analysis = pipeline::analyze_project(c.input_path, cfg, backends, clock);
        std::uint64_t other_tokens = analysis.selection_tokens;
        const LibraryReport* graded = nullptr;
        for (const auto& r : analysis.reports) {
            if (!graded && (!c.library || r.name == *c.library)) graded = &r;
            else other_tokens += r.token_usage;
        }
        CaseResult row;
        if (graded) {
            row = grade(c, *graded, other_tokens);
        } else {
            row = failed_row(c, FailureReason::NoDistinctiveEvidence,
                             c.library ? "library '" + *c.library + "' was not selected" : "no library selected");
            row.token_usage = other_tokens;
        }
        row.wall_time_ms = elapsed_ms();
        return row;
    } catch (const ReplayMiss& e) {
        auto row = failed_row(c, FailureReason::NetworkFailure, std::string("replay miss: ") + e.what());
        row.wall_time_ms = elapsed_ms();
        return row;
    } catch (const ProviderError& e) {
        auto row = failed_row(c, FailureReason::NetworkFailure, e.what());
        row.wall_time_ms = elapsed_ms();
        return row;
    } catch (const Error& e) {
        auto row = failed_row(c, FailureReason::NoDistinctiveEvidence, e.what());
        row.wall_time_ms = elapsed_ms();
        return row;
    }
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw IoError("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

void CaseManifest::validate() const {
    std::set<std::string> ids;
    for (const auto& c : cases) {
        if (c.id.empty()) throw ManifestError("case without id");
        if (!ids.insert(c.id).second) throw ManifestError("duplicate case id: " + c.id);
        if (c.input_path.empty()) throw ManifestError("case " + c.id + " has no input_path");
        if (c.ground_truth_urls.empty()) throw ManifestError("case " + c.id + " has no ground_truth_urls");
        for (const auto& u : c.ground_truth_urls) {
            try {
                normalize_url(u);
            } catch (const MalformedUrl&) {
                throw ManifestError("case " + c.id + ": ground-truth URL is not an http(s) URL: " + u);
            }
        }
    }
}

CaseManifest parse_manifest(const std::string& json_text, const fs::path& base_dir) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ManifestError(std::string("manifest is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("cases") || !j["cases"].is_array())
        throw ManifestError("manifest must be an object with a \"cases\" array");
    CaseManifest m;
    for (const auto& item : j["cases"]) {
        if (!item.is_object()) throw ManifestError("cases must be objects");
        try {
            EvalCase c;
            c.id = item.at("id").get<std::string>();
            const auto kind = parse_kind(item.at("kind").get<std::string>());
            if (!kind) throw ManifestError("case " + c.id + ": kind must be \"so\" or \"project\"");
            c.kind = *kind;
            fs::path input = item.at("input_path").get<std::string>();
            c.input_path = input.is_absolute() ? input : (base_dir / input).lexically_normal();
            c.ground_truth_urls = item.at("ground_truth_urls").get<std::vector<std::string>>();
            c.notes = item.value("notes", "");
            if (item.contains("library") && !item["library"].is_null())
                c.library = item["library"].get<std::string>();
            m.cases.push_back(std::move(c));
        } catch (const json::exception& e) {
            throw ManifestError(std::string("malformed case: ") + e.what());
        }
    }
    m.validate();
    return m;
}

CaseManifest load_manifest(const fs::path& path) {
    auto m = parse_manifest(read_file(path), path.parent_path());
    for (const auto& c : m.cases) {
        std::error_code ec;
        if (!fs::exists(c.input_path, ec))
            throw ManifestError("case " + c.id + ": input does not exist: " + c.input_path.string());
    }
    return m;
}

bool origin_matches(const std::string& origin, const std::vector<std::string>& ground_truth) {
    std::string key;
    try {
        key = normalize_url(origin);
    } catch (const MalformedUrl&) {
        return false;
    }
    for (const auto& g : ground_truth) {
        try {
            if (normalize_url(g) == key) return true;
        } catch (const MalformedUrl&) {
        }
    }
    return false;
}

CaseResult grade(const EvalCase& c, const LibraryReport& report, std::uint64_t extra_tokens) {
    CaseResult r;
    r.id = c.id;
    r.status = report.status;
    r.failure_reason = report.failure_reason;
    r.origin_url = report.origin_url;
    r.matched = report.status == ReportStatus::Located && report.origin_url &&
                origin_matches(*report.origin_url, c.ground_truth_urls);
    r.token_usage = report.token_usage + extra_tokens;
    r.wall_time_ms = report.wall_time_ms;
    if (!report.notes.empty()) r.note = report.notes.back();
    return r;
}

EvalReport EvalReport::from_rows(std::vector<CaseResult> rows) {
    EvalReport rep;
    rep.cases = std::move(rows);
    rep.total = rep.cases.size();
    std::uint64_t tokens = 0;
    std::uint64_t wall = 0;
    for (const auto& r : rep.cases) {
        if (r.status == ReportStatus::Located) ++rep.collected_url;
        if (r.matched) ++rep.correct;
        if (r.status == ReportStatus::Located || r.status == ReportStatus::HintsOnly) ++rep.hints_found;
        tokens += r.token_usage;
        wall += r.wall_time_ms;
    }
    if (rep.total > 0) {
        rep.mean_tokens = static_cast<double>(tokens) / static_cast<double>(rep.total);
        rep.mean_wall_time_ms = static_cast<double>(wall) / static_cast<double>(rep.total);
    }
    return rep;
}

void EvalReport::validate() const {
    if (total != cases.size()) throw InvariantViolation("eval total differs from row count");
    if (!(correct <= collected_url && collected_url <= total))
        throw InvariantViolation("eval counters violate correct <= collected_url <= total");
    if (hints_found > total || hints_found < collected_url)
        throw InvariantViolation("eval hints_found out of range");
    for (const auto& r : cases)
        if (r.matched && r.status != ReportStatus::Located) throw InvariantViolation("matched row is not located");
}

EvalReport run_eval(const CaseManifest& manifest, const pipeline::PipelineConfig& cfg,
                    const backends::Backends& backends, const Clock& clock, std::size_t jobs) {
    manifest.validate();
    cfg.validate();
    std::vector<CaseResult> rows(manifest.cases.size());
    parallel_for(manifest.cases.size(), jobs, [&](std::size_t i) {
        const auto& c = manifest.cases[i];
        rows[i] = run_case(c, cfg, backends, clock);
        spdlog::info("case {}: {}{}", c.id, to_string(rows[i].status), rows[i].matched ? " (matched)" : "");
    });
    auto rep = EvalReport::from_rows(std::move(rows));
    rep.validate();
    return rep;
}

std::string serialize_report(const EvalReport& report) {
    ordered_json j;
    j["total"] = report.total;
    j["collected_url"] = report.collected_url;
    j["correct"] = report.correct;
    j["hints_found"] = report.hints_found;
    j["cases"] = ordered_json::array();
    for (const auto& r : report.cases) {
        ordered_json row;
        row["id"] = r.id;
        row["status"] = to_string(r.status);
        if (r.failure_reason) row["failure_reason"] = to_string(*r.failure_reason);
        if (r.origin_url) row["origin_url"] = *r.origin_url;
        row["matched"] = r.matched;
        row["token_usage"] = r.token_usage;
        row["wall_time_ms"] = r.wall_time_ms;
        if (!r.note.empty()) row["note"] = r.note;
        j["cases"].push_back(std::move(row));
    }
    j["aggregates"] = {{"mean_wall_time_ms", report.mean_wall_time_ms}, {"mean_tokens", report.mean_tokens}};
    return j.dump(2, ' ', false, ordered_json::error_handler_t::replace) + "\n";
}

EvalReport parse_report(const std::string& json_text) {
    try {
        const auto j = json::parse(json_text);
        EvalReport rep;
        rep.total = j.at("total").get<std::size_t>();
        rep.collected_url = j.at("collected_url").get<std::size_t>();
        rep.correct = j.at("correct").get<std::size_t>();
        rep.hints_found = j.at("hints_found").get<std::size_t>();
        for (const auto& row : j.at("cases")) {
            CaseResult r;
            r.id = row.at("id").get<std::string>();
            const auto status = parse_report_status(row.at("status").get<std::string>());
            if (!status) throw Error("unknown status in eval report");
            r.status = *status;
            if (row.contains("failure_reason")) {
                const auto reason = parse_failure_reason(row["failure_reason"].get<std::string>());
                if (!reason) throw Error("unknown failure_reason in eval report");
                r.failure_reason = reason;
            }
            if (row.contains("origin_url")) r.origin_url = row["origin_url"].get<std::string>();
            r.matched = row.at("matched").get<bool>();
            r.token_usage = row.at("token_usage").get<std::uint64_t>();
            r.wall_time_ms = row.at("wall_time_ms").get<std::uint64_t>();
            r.note = row.value("note", "");
            rep.cases.push_back(std::move(r));
        }
        rep.mean_wall_time_ms = j.at("aggregates").at("mean_wall_time_ms").get<double>();
        rep.mean_tokens = j.at("aggregates").at("mean_tokens").get<double>();
        rep.validate();
        return rep;
    } catch (const json::exception& e) {
        throw Error(std::string("malformed eval report: ") + e.what());
    }
}

} // namespace sca::eval
