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
#include "sca/core/sbom.hpp"
#include "sca/evidence/strings.hpp"
#include "sca/evidence/tree.hpp"

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace sca::pipeline {

struct PipelineConfig {
    int max_feedback_loops = 3;
    int search_pages = 2;
    int validator_top_k = 3;
    std::chrono::milliseconds wall_budget{180'000};
    std::uint64_t token_budget = 60'000;
    /// Concurrent page fetch + summary tasks per iteration.
    std::size_t fetch_concurrency = 3;
    /// Concurrent libraries in a project run; 0 means min(candidates, 4).
    std::size_t jobs = 0;
    evidence::StringExtractionConfig strings;
    evidence::TreeDumpConfig tree;

    void validate() const;
};

/// What happened inside one validation iteration, for tests and --trace.
struct IterationTrace {
    KeywordSet keywords;
    std::vector<SearchHit> hits;
    std::vector<PageRecord> pages;
    std::optional<RankedOrigins> ranked;
    std::optional<ValidationVerdict> verdict;
    /// Session ids of every model call made in this iteration, in stage order.
    std::vector<std::string> sessions;
};

struct RunTrace {
    std::vector<IterationTrace> iterations;
    std::vector<std::string> notes;
};

/// Keywords -> search -> page summaries -> ranking -> validation, repeated
/// until the validator accepts or max_feedback_loops iterations ran, then
/// aggregation. Provider failures end the run as Failed/NetworkFailure and
/// the wall-clock and token budgets end it as Failed/BudgetExceeded; hints
/// found up to that point are kept. ReplayMiss propagates.
LibraryReport run_library(const Evidence& ev, const PipelineConfig& cfg, const backends::Backends& backends,
                          const Clock& clock, RunTrace* trace = nullptr, const std::string& session_prefix = "");

struct ProjectAnalysis {
    std::vector<LibraryReport> reports;
    /// Tokens spent by the candidate-selection agent.
    std::uint64_t selection_tokens = 0;
    std::vector<std::string> warnings;
};

std::vector<LibraryReport> analyze_so(const std::filesystem::path& so_path, const PipelineConfig& cfg,
                                      const backends::Backends& backends, const Clock& clock);

/// One report per candidate, in selection order. A candidate's failure is
/// confined to its own report.
ProjectAnalysis analyze_project(const std::filesystem::path& root, const PipelineConfig& cfg,
                                const backends::Backends& backends, const Clock& clock);

SbomDocument make_sbom(const std::vector<LibraryReport>& reports, UtcTime generated_at);

SbomDocument run_so(const std::filesystem::path& so_path, const PipelineConfig& cfg,
                    const backends::Backends& backends, const Clock& clock);
SbomDocument run_project(const std::filesystem::path& root, const PipelineConfig& cfg,
                         const backends::Backends& backends, const Clock& clock);

} // namespace sca::pipeline
