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

#include "sca/core/model.hpp"

#include "sca/core/error.hpp"
#include "sca/core/text.hpp"
#include "sca/core/url.hpp"

#include <set>

namespace sca {
namespace {

void require(bool cond, const std::string& what) {
    if (!cond) throw InvariantViolation(what);
}

} // namespace

void Evidence::validate() const {
    std::set<std::string_view> seen;
    for (const auto& s : strings) {
        require(s.size() >= limits.min_string_length, "evidence string shorter than minimum: '" + s + "'");
        require(text::all_printable(s), "evidence string has non-printable bytes");
        require(seen.insert(s).second, "duplicate evidence string: '" + s + "'");
    }
    if (kind == EvidenceKind::ElfSharedObject)
        require(!tree_text.has_value(), "shared-object evidence must not carry a tree dump");
    else
        require(tree_text.has_value(), "source evidence requires a tree dump");
    for (const auto& ex : file_excerpts)
        require(ex.content.size() <= limits.excerpt_byte_cap, "excerpt exceeds byte cap: " + ex.relative_path);
}

void KeywordSet::validate(int max_generation) const {
    require(!keywords.empty(), "keyword set is empty");
    require(keywords.size() <= kMaxKeywords, "more than 8 keywords");
    for (const auto& k : keywords) {
        require(!k.empty(), "empty keyword");
        require(text::trim(k) == k, "keyword has surrounding whitespace: '" + k + "'");
    }
    require(generation >= 0 && generation <= max_generation, "keyword generation out of range");
}

std::string KeywordSet::query() const {
    return text::join(keywords, " ");
}

void SearchHit::validate(int max_pages) const {
    require(is_http_url(url), "search hit URL is not absolute http(s): '" + url + "'");
    require(page_index >= 1 && page_index <= max_pages, "page_index out of range");
    require(rank_on_page >= 1, "rank_on_page must be positive");
}

void PageRecord::validate() const {
    require(!summary.empty(), "page summary is empty for " + hit.url);
    if (fetch_status == FetchStatus::FetchFailed) {
        require(summary_source == SummarySource::SnippetFallback, "failed fetch must use snippet fallback");
        require(summary == hit.snippet, "failed fetch summary must equal the snippet");
    }
    if (fetch_status == FetchStatus::Fetched)
        require(extracted_text.has_value(), "fetched page lacks extracted text");
}

void RankedOrigins::validate() const {
    for (const auto& e : entries) require(!e.originality_rationale.empty(), "ranked entry without rationale");
}

void RankedOrigins::validate_against(const std::vector<PageRecord>& inputs) const {
    validate();
    std::set<std::string> allowed;
    for (const auto& p : inputs) allowed.insert(p.hit.url);
    std::set<std::string> used;
    for (const auto& e : entries) {
        require(allowed.count(e.page.hit.url) == 1, "ranked entry not among inputs: " + e.page.hit.url);
        require(used.insert(e.page.hit.url).second, "ranked entry repeated: " + e.page.hit.url);
    }
}

void ValidationVerdict::validate() const {
    require(!text::trim(reasons).empty(), "verdict reasons are empty");
    if (decision == Decision::Accept) require(!refined_keywords.has_value(), "accept carries refined keywords");
}

void LibraryReport::validate(int max_iterations) const {
    require(iterations_used >= 0 && iterations_used <= max_iterations, "iterations_used out of range");
    switch (status) {
    case ReportStatus::Located:
        require(origin_url.has_value(), "located report lacks origin_url");
        break;
    case ReportStatus::HintsOnly:
        require(!origin_url.has_value(), "hints-only report carries origin_url");
        require(has_hints(), "hints-only report carries no hints");
        break;
    case ReportStatus::Failed:
        require(failure_reason.has_value(), "failed report lacks failure_reason");
        break;
    }
}

std::string_view to_string(EvidenceKind v) {
    return v == EvidenceKind::ElfSharedObject ? "elf_shared_object" : "cpp_source_clone";
}

std::string_view to_string(FetchStatus v) {
    switch (v) {
    case FetchStatus::Fetched: return "fetched";
    case FetchStatus::FetchFailed: return "fetch_failed";
    case FetchStatus::Skipped: return "skipped";
    }
    return "?";
}

std::string_view to_string(SummarySource v) {
    return v == SummarySource::LlmSummary ? "llm_summary" : "snippet_fallback";
}

std::string_view to_string(Decision v) {
    return v == Decision::Accept ? "accept" : "reject";
}

std::string_view to_string(ReportStatus v) {
    switch (v) {
    case ReportStatus::Located: return "located";
    case ReportStatus::HintsOnly: return "hints_only";
    case ReportStatus::Failed: return "failed";
    }
    return "?";
}

std::string_view to_string(FailureReason v) {
    switch (v) {
    case FailureReason::NetworkFailure: return "network_failure";
    case FailureReason::NoDistinctiveEvidence: return "no_distinctive_evidence";
    case FailureReason::SourceInaccessible: return "source_inaccessible";
    case FailureReason::AmbiguousKeywords: return "ambiguous_keywords";
    case FailureReason::BudgetExceeded: return "budget_exceeded";
    }
    return "?";
}

std::optional<FetchStatus> parse_fetch_status(std::string_view s) {
    for (auto v : {FetchStatus::Fetched, FetchStatus::FetchFailed, FetchStatus::Skipped})
        if (to_string(v) == s) return v;
    return std::nullopt;
}

std::optional<ReportStatus> parse_report_status(std::string_view s) {
    for (auto v : {ReportStatus::Located, ReportStatus::HintsOnly, ReportStatus::Failed})
        if (to_string(v) == s) return v;
    return std::nullopt;
}

std::optional<FailureReason> parse_failure_reason(std::string_view s) {
    for (auto v : {FailureReason::NetworkFailure, FailureReason::NoDistinctiveEvidence,
                   FailureReason::SourceInaccessible, FailureReason::AmbiguousKeywords,
                   FailureReason::BudgetExceeded})
        if (to_string(v) == s) return v;
    return std::nullopt;
}

} // namespace sca
