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

#pragma once

#include "sca/backends/backend.hpp"
#include "sca/core/clock.hpp"
#include "sca/core/model.hpp"
#include "sca/pipeline/pipeline.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace sca::eval {

enum class CaseKind { So, Project };

struct EvalCase {
    std::string id;
    CaseKind kind = CaseKind::So;
    /// Absolute, or relative to the manifest's directory once loaded.
    std::filesystem::path input_path;
    /// Accepted origins; forks and mirrors are listed here when they count.
    std::vector<std::string> ground_truth_urls;
    std::string notes;
    /// Project cases: the component to grade. Defaults to the first one.
    std::optional<std::string> library;
};

struct CaseManifest {
    std::vector<EvalCase> cases;

    /// Unique ids, non-empty ground truth, every ground-truth URL
    /// normalizable. Throws ManifestError.
    void validate() const;
};

/// Parses a manifest; relative input paths are resolved against base_dir.
CaseManifest parse_manifest(const std::string& json_text, const std::filesystem::path& base_dir);
/// Also checks that every input exists. Throws ManifestError or IoError.
CaseManifest load_manifest(const std::filesystem::path& path);

struct CaseResult {
    std::string id;
    ReportStatus status = ReportStatus::Failed;
    std::optional<FailureReason> failure_reason;
    std::optional<std::string> origin_url;
    bool matched = false;
    std::uint64_t token_usage = 0;
    std::uint64_t wall_time_ms = 0;
    std::string note;

    bool operator==(const CaseResult&) const = default;
};

struct EvalReport {
    std::size_t total = 0;
    std::size_t collected_url = 0;
    std::size_t correct = 0;
    std::size_t hints_found = 0;
    std::vector<CaseResult> cases;
    double mean_wall_time_ms = 0.0;
    double mean_tokens = 0.0;

    /// Counters and means recomputed from the rows.
    static EvalReport from_rows(std::vector<CaseResult> rows);
    void validate() const;
    bool operator==(const EvalReport&) const = default;
};

/// True when normalize(origin) equals the normalization of any ground-truth URL.
bool origin_matches(const std::string& origin, const std::vector<std::string>& ground_truth);

CaseResult grade(const EvalCase& c, const LibraryReport& report, std::uint64_t extra_tokens = 0);

/// Runs every case (up to `jobs` at once) and never stops on a failing case:
/// provider errors and replay misses become Failed/NetworkFailure rows.
/// Rows follow manifest order.
EvalReport run_eval(const CaseManifest& manifest, const pipeline::PipelineConfig& cfg,
                    const backends::Backends& backends, const Clock& clock, std::size_t jobs = 1);

std::string serialize_report(const EvalReport& report);
EvalReport parse_report(const std::string& json_text);

} // namespace sca::eval
