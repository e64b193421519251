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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sca {

// Every type below is a plain value. Producers call validate() before
// handing a value out, and deserializers call it on the way in, so a value
// obtained from any public API satisfies its invariants.

enum class EvidenceKind { ElfSharedObject, CppSourceClone };

struct FileExcerpt {
    std::string relative_path;
    std::string content;
    bool truncated = false;

    bool operator==(const FileExcerpt&) const = default;
};

struct EvidenceLimits {
    std::size_t min_string_length = 10;
    std::size_t excerpt_byte_cap = 8192;

    bool operator==(const EvidenceLimits&) const = default;
};

/// Identity material for one suspected library.
struct Evidence {
    EvidenceKind kind = EvidenceKind::ElfSharedObject;
    std::string name_hint;
    std::vector<std::string> strings;
    std::optional<std::string> tree_text;
    std::vector<FileExcerpt> file_excerpts;
    std::filesystem::path origin_artifact;
    EvidenceLimits limits;
    /// Set when nothing but the name hint survived extraction.
    bool empty_evidence = false;
    /// Per-file problems that were downgraded instead of failing.
    std::vector<std::string> notes;

    void validate() const;
    bool operator==(const Evidence&) const = default;
};

inline constexpr std::size_t kMaxKeywords = 8;

struct KeywordSet {
    std::vector<std::string> keywords;
    std::string rationale;
    int generation = 0;

    void validate(int max_generation = 3) const;
    std::string query() const;
    bool operator==(const KeywordSet&) const = default;
};

struct SearchHit {
    std::string title;
    std::string snippet;
    std::string url;
    int page_index = 1;
    int rank_on_page = 1;

    void validate(int max_pages = 2) const;
    bool operator==(const SearchHit&) const = default;
};

enum class FetchStatus { Fetched, FetchFailed, Skipped };
enum class SummarySource { LlmSummary, SnippetFallback };

struct PageRecord {
    SearchHit hit;
    FetchStatus fetch_status = FetchStatus::Skipped;
    std::optional<std::string> extracted_text;
    std::string summary;
    SummarySource summary_source = SummarySource::SnippetFallback;

    void validate() const;
    bool operator==(const PageRecord&) const = default;
};

struct RankedEntry {
    PageRecord page;
    std::string originality_rationale;

    bool operator==(const RankedEntry&) const = default;
};

struct RankedOrigins {
    std::vector<RankedEntry> entries;
    std::optional<std::string> vendor_hint;
    std::optional<std::string> version_hint;

    void validate() const;
    /// Also checks that every entry is one of `inputs` and none repeats.
    void validate_against(const std::vector<PageRecord>& inputs) const;
    bool operator==(const RankedOrigins&) const = default;
};

enum class Decision { Accept, Reject };

struct ValidationVerdict {
    Decision decision = Decision::Reject;
    std::string reasons;
    std::optional<std::vector<std::string>> refined_keywords;

    void validate() const;
    bool accepted() const noexcept { return decision == Decision::Accept; }
    bool operator==(const ValidationVerdict&) const = default;
};

enum class ReportStatus { Located, HintsOnly, Failed };

enum class FailureReason {
    NetworkFailure,
    NoDistinctiveEvidence,
    SourceInaccessible,
    AmbiguousKeywords,
    BudgetExceeded,
};

struct LibraryReport {
    std::string name;
    ReportStatus status = ReportStatus::Failed;
    std::optional<std::string> origin_url;
    std::optional<std::string> vendor_hint;
    std::optional<std::string> version_hint;
    std::optional<std::string> description;
    int iterations_used = 0;
    std::uint64_t token_usage = 0;
    std::uint64_t wall_time_ms = 0;
    std::optional<FailureReason> failure_reason;
    std::vector<std::string> notes;

    void validate(int max_iterations = 3) const;
    bool has_hints() const noexcept { return vendor_hint.has_value() || version_hint.has_value(); }
    bool operator==(const LibraryReport&) const = default;
};

std::string_view to_string(EvidenceKind v);
std::string_view to_string(FetchStatus v);
std::string_view to_string(SummarySource v);
std::string_view to_string(Decision v);
std::string_view to_string(ReportStatus v);
std::string_view to_string(FailureReason v);

std::optional<FetchStatus> parse_fetch_status(std::string_view s);
std::optional<ReportStatus> parse_report_status(std::string_view s);
std::optional<FailureReason> parse_failure_reason(std::string_view s);

} // namespace sca
