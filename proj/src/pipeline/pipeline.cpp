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

#include "sca/pipeline/pipeline.hpp"

#include "sca/agents/agents.hpp"
#include "sca/core/error.hpp"
#include "sca/core/parallel.hpp"
#include "sca/core/url.hpp"
#include "sca/evidence/source.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

namespace fs = std::filesystem;

namespace sca::pipeline {

namespace {

constexpr std::size_t kMaxProjectJobs = 4;

struct BudgetStop {
    std::string what;
};

std::string url_key(const std::string& url) {
    try {
        return normalize_url(url);
    } catch (const MalformedUrl&) {
        return url;
    }
}

/// Drops hits that cannot be used downstream and fills empty snippets so a
/// snippet fallback is never blank.
std::vector<SearchHit> sanitize_hits(std::vector<SearchHit> hits, int pages) {
    std::vector<SearchHit> out;
    out.reserve(hits.size());
    for (auto& h : hits) {
        if (!is_http_url(h.url) || h.page_index < 1 || h.page_index > pages || h.rank_on_page < 1) continue;
        if (h.snippet.empty()) h.snippet = h.title.empty() ? h.url : h.title;
        out.push_back(std::move(h));
    }
    return out;
}

/// Fetch outcomes and page summaries already produced during this run, keyed
/// by normalized URL, so later iterations do not pay for the same page twice.
class PageCache {
public:
    std::optional<PageRecord> lookup(const std::string& key, const SearchHit& hit) const {
        std::lock_guard lock(mu_);
        auto it = pages_.find(key);
        if (it == pages_.end()) return std::nullopt;
        PageRecord rec = it->second;
        rec.hit = hit;
        if (rec.summary_source == SummarySource::SnippetFallback) rec.summary = hit.snippet;
        return rec;
    }
    void store(const std::string& key, const PageRecord& rec) {
        std::lock_guard lock(mu_);
        pages_.emplace(key, rec);
    }

private:
    mutable std::mutex mu_;
    std::map<std::string, PageRecord> pages_;
};

class LibraryRun {
public:
    LibraryRun(const Evidence& ev, const PipelineConfig& cfg, const backends::Backends& b, const Clock& clock,
               RunTrace* trace, const std::string& prefix)
        : ev_(ev), cfg_(cfg), b_(b), clock_(clock), trace_(trace), start_(clock.elapsed()) {
        report_.name = ev.name_hint.empty() ? ev.origin_artifact.filename().string() : ev.name_hint;
        sid_ = prefix + report_.name;
    }

    LibraryReport run() {
        if (ev_.empty_evidence && ev_.name_hint.empty()) {
            note("no identifying evidence");
            return finish_failed(FailureReason::NoDistinctiveEvidence);
        }
        try {
            loop();
            if (aborted_) return finish_failed(FailureReason::NoDistinctiveEvidence);
            aggregate();
        } catch (const BudgetStop& stop) {
            note(stop.what);
            return finish_failed(FailureReason::BudgetExceeded);
        } catch (const ProviderError& e) {
            note(std::string("provider failure: ") + e.what());
            return finish_failed(FailureReason::NetworkFailure);
        }
        return finish();
    }

private:
    void note(std::string n) {
        spdlog::debug("[{}] {}", report_.name, n);
        report_.notes.push_back(n);
        if (trace_) trace_->notes.push_back(std::move(n));
    }

    void check_budget() const {
        const auto spent = clock_.elapsed() - start_;
        if (spent > cfg_.wall_budget)
            throw BudgetStop{"wall-clock budget of " + std::to_string(cfg_.wall_budget.count()) + " ms exhausted"};
        if (tokens_ > cfg_.token_budget)
            throw BudgetStop{"token budget of " + std::to_string(cfg_.token_budget) + " exhausted"};
    }

    void add_tokens(std::uint64_t n) { tokens_ += n; }

    IterationTrace* iter_trace() { return trace_ ? &trace_->iterations.back() : nullptr; }

    void record_session(const std::string& s) {
        if (auto* t = iter_trace()) t->sessions.push_back(s);
    }

    void merge_hints(const RankedOrigins& r) {
        if (r.vendor_hint) vendor_ = r.vendor_hint;
        if (r.version_hint) version_ = r.version_hint;
    }

    void reject_mechanically(std::string reason, const KeywordSet& kw) {
        ValidationVerdict v{Decision::Reject, std::move(reason), std::nullopt};
        if (auto* t = iter_trace()) t->verdict = v;
        feedback_ = agents::KeywordFeedback{v, kw};
        history_.push_back(std::move(v));
    }

    std::vector<PageRecord> summarize(const std::vector<SearchHit>& hits, int iter) {
        std::vector<PageRecord> pages(hits.size());
        std::vector<std::uint64_t> spent(hits.size(), 0);
        std::vector<bool> duplicate(hits.size(), false);
        std::set<std::string> seen;
        for (std::size_t i = 0; i < hits.size(); ++i) duplicate[i] = !seen.insert(url_key(hits[i].url)).second;

        const std::string base = sid_ + "/a2/i" + std::to_string(iter) + "/p";
        parallel_for(hits.size(), cfg_.fetch_concurrency, [&](std::size_t i) {
            const auto& hit = hits[i];
            if (duplicate[i]) {
                pages[i] = PageRecord{hit, FetchStatus::Skipped, std::nullopt, hit.snippet,
                                      SummarySource::SnippetFallback};
                return;
            }
            const auto key = url_key(hit.url);
            if (auto cached = cache_.lookup(key, hit)) {
                pages[i] = std::move(*cached);
                return;
            }
            const auto fetched = b_.fetch->fetch_text(hit.url);
            auto reply = agents::summarize_page(hit, fetched, *b_.llm, base + std::to_string(i));
            spent[i] = reply.tokens;
            reply.parsed.validate();
            cache_.store(key, reply.parsed);
            pages[i] = std::move(reply.parsed);
        });
        for (auto t : spent) add_tokens(t);
        if (auto* t = iter_trace()) {
            for (std::size_t i = 0; i < hits.size(); ++i)
                if (spent[i] > 0) t->sessions.push_back(base + std::to_string(i));
        }
        return pages;
    }

    void loop() {
        for (int i = 0; i < cfg_.max_feedback_loops; ++i) {
            check_budget();
            if (trace_) trace_->iterations.emplace_back();
            report_.iterations_used = i + 1;

            const std::string a1 = sid_ + "/a1/i" + std::to_string(i);
            record_session(a1);
            KeywordSet kw;
            try {
                auto reply = agents::generate_keywords(ev_, feedback_, *b_.llm, a1);
                add_tokens(reply.tokens);
                kw = std::move(reply.parsed);
            } catch (const AgentParseError& e) {
                add_tokens(e.tokens_used());
                note(std::string("keyword agent failed: ") + e.what());
                if (i == 0) aborted_ = true;
                return;
            }
            if (auto* t = iter_trace()) t->keywords = kw;
            check_budget();

            auto hits = sanitize_hits(b_.search->search(kw.query(), cfg_.search_pages), cfg_.search_pages);
            if (auto* t = iter_trace()) t->hits = hits;
            if (hits.empty()) {
                reject_mechanically("the search returned no results for these keywords", kw);
                continue;
            }
            any_hits_ = true;

            auto pages = summarize(hits, i);
            if (auto* t = iter_trace()) t->pages = pages;
            all_fetches_failed_ = std::all_of(pages.begin(), pages.end(), [](const PageRecord& p) {
                return p.fetch_status != FetchStatus::Fetched;
            });
            check_budget();

            // repeated URLs were skipped above; the ranking sees each page once
            std::set<std::string> keys;
            std::vector<PageRecord> rank_input;
            for (const auto& p : pages)
                if (keys.insert(url_key(p.hit.url)).second) rank_input.push_back(p);

            const std::string a3 = sid_ + "/a3/i" + std::to_string(i);
            record_session(a3);
            RankedOrigins ranked;
            try {
                auto reply = agents::rank_origins(ev_, kw, rank_input, *b_.llm, a3);
                add_tokens(reply.tokens);
                ranked = std::move(reply.parsed);
            } catch (const AgentParseError& e) {
                add_tokens(e.tokens_used());
                note(std::string("ranking agent failed: ") + e.what());
            }
            if (auto* t = iter_trace()) t->ranked = ranked;
            merge_hints(ranked);
            if (ranked.entries.empty()) {
                reject_mechanically("no search result looked like the library's origin", kw);
                continue;
            }
            last_ranked_ = ranked;
            any_ranked_ = true;
            check_budget();

            const auto k = std::min<std::size_t>(ranked.entries.size(), static_cast<std::size_t>(cfg_.validator_top_k));
            const std::string a4 = sid_ + "/a4/i" + std::to_string(i);
            record_session(a4);
            auto reply = agents::validate_origin(ev_, std::span<const RankedEntry>(ranked.entries.data(), k), i + 1,
                                                 cfg_.max_feedback_loops, *b_.llm, a4);
            add_tokens(reply.tokens);
            if (auto* t = iter_trace()) t->verdict = reply.parsed;
            history_.push_back(reply.parsed);
            if (reply.parsed.accepted()) {
                accepted_ = true;
                return;
            }
            feedback_ = agents::KeywordFeedback{reply.parsed, kw};
        }
    }

    void aggregate() {
        check_budget();
        RankedOrigins ranked = last_ranked_;
        ranked.vendor_hint = vendor_;
        ranked.version_hint = version_;
        const std::string a5 = sid_ + "/a5";
        auto reply = agents::aggregate_metadata(ev_, ranked, accepted_, history_, *b_.llm, a5);
        add_tokens(reply.tokens);
        const auto& r = reply.parsed;
        report_.origin_url = r.origin_url;
        report_.vendor_hint = r.vendor_hint;
        report_.version_hint = r.version_hint;
        report_.description = r.description;
    }

    // Searches that only ever found pages the ranking agent considered
    // unrelated point at the keywords; unreachable pages at the sources.
    FailureReason exhausted_reason() const {
        if (ev_.empty_evidence || !any_hits_) return FailureReason::NoDistinctiveEvidence;
        if (all_fetches_failed_) return FailureReason::SourceInaccessible;
        if (!any_ranked_) return FailureReason::AmbiguousKeywords;
        return FailureReason::NoDistinctiveEvidence;
    }

    LibraryReport finish() {
        if (accepted_ && report_.origin_url) {
            report_.status = ReportStatus::Located;
        } else {
            report_.origin_url.reset();
            if (report_.has_hints()) {
                report_.status = ReportStatus::HintsOnly;
            } else {
                report_.status = ReportStatus::Failed;
                report_.failure_reason = exhausted_reason();
            }
        }
        return stamp();
    }

    LibraryReport finish_failed(FailureReason reason) {
        report_.status = ReportStatus::Failed;
        report_.failure_reason = reason;
        report_.origin_url.reset();
        if (!report_.vendor_hint) report_.vendor_hint = vendor_;
        if (!report_.version_hint) report_.version_hint = version_;
        return stamp();
    }

    LibraryReport stamp() {
        report_.token_usage = tokens_;
        const auto spent = clock_.elapsed() - start_;
        report_.wall_time_ms = spent.count() > 0 ? static_cast<std::uint64_t>(spent.count()) : 0;
        report_.validate(cfg_.max_feedback_loops);
        return report_;
    }

    const Evidence& ev_;
    const PipelineConfig& cfg_;
    const backends::Backends& b_;
    const Clock& clock_;
    RunTrace* trace_;
    const std::chrono::milliseconds start_;
    std::string sid_;

    LibraryReport report_;
    std::uint64_t tokens_ = 0;
    std::optional<agents::KeywordFeedback> feedback_;
    std::vector<ValidationVerdict> history_;
    RankedOrigins last_ranked_;
    std::optional<std::string> vendor_;
    std::optional<std::string> version_;
    PageCache cache_;
    bool accepted_ = false;
    bool aborted_ = false;
    bool any_hits_ = false;
    bool any_ranked_ = false;
    bool all_fetches_failed_ = false;
};

void check_backends(const backends::Backends& b) {
    if (!b.llm || !b.search || !b.fetch) throw UsageError("pipeline needs llm, search and fetch backends");
}

} // namespace

void PipelineConfig::validate() const {
    if (max_feedback_loops < 1) throw UsageError("max feedback loops must be at least 1");
    if (search_pages < 1) throw UsageError("search pages must be at least 1");
    if (validator_top_k < 1) throw UsageError("validator top-k must be at least 1");
    if (fetch_concurrency < 1) throw UsageError("fetch concurrency must be at least 1");
    if (wall_budget.count() <= 0) throw UsageError("wall-clock budget must be positive");
    if (token_budget == 0) throw UsageError("token budget must be positive");
    strings.validate();
    tree.validate();
}

LibraryReport run_library(const Evidence& ev, const PipelineConfig& cfg, const backends::Backends& backends,
                          const Clock& clock, RunTrace* trace, const std::string& session_prefix) {
    cfg.validate();
    check_backends(backends);
    ev.validate();
    return LibraryRun(ev, cfg, backends, clock, trace, session_prefix).run();
}

std::vector<LibraryReport> analyze_so(const fs::path& so_path, const PipelineConfig& cfg,
                                      const backends::Backends& backends, const Clock& clock) {
    cfg.validate();
    const auto ev = evidence::extract_so_evidence(so_path, cfg.strings);
    spdlog::info("{}: {} strings kept", so_path.filename().string(), ev.strings.size());
    return {run_library(ev, cfg, backends, clock)};
}

ProjectAnalysis analyze_project(const fs::path& root, const PipelineConfig& cfg, const backends::Backends& backends,
                                const Clock& clock) {
    cfg.validate();
    check_backends(backends);
    ProjectAnalysis out;
    const auto tree = evidence::dump_tree(root, cfg.tree);
    auto abs = fs::absolute(root).lexically_normal();
    if (!abs.has_filename()) abs = abs.parent_path();
    const std::string project = abs.filename().string();
    const std::string project_name = project.empty() ? "project" : project;

    std::vector<evidence::TplCandidate> candidates;
    try {
        auto reply = evidence::select_tpl_candidates(tree, *backends.llm, project_name + "/select");
        out.selection_tokens = reply.tokens;
        candidates = std::move(reply.parsed);
    } catch (const AgentParseError& e) {
        out.selection_tokens = e.tokens_used();
        LibraryReport r;
        r.name = project_name;
        r.status = ReportStatus::Failed;
        r.failure_reason = FailureReason::NoDistinctiveEvidence;
        r.token_usage = e.tokens_used();
        r.notes.push_back(std::string("candidate selection failed: ") + e.what());
        out.reports.push_back(std::move(r));
        return out;
    }
    if (candidates.empty()) {
        out.warnings.push_back("no vendored library candidates found under " + root.string());
        spdlog::warn("{}", out.warnings.back());
        return out;
    }

    out.reports.resize(candidates.size());
    const std::size_t jobs = cfg.jobs > 0 ? cfg.jobs : std::min(candidates.size(), kMaxProjectJobs);
    parallel_for(candidates.size(), jobs, [&](std::size_t i) {
        const auto& c = candidates[i];
        Evidence ev;
        try {
            ev = evidence::extract_source_evidence(root, c, cfg.tree);
        } catch (const IoError& e) {
            LibraryReport r;
            r.name = c.name;
            r.status = ReportStatus::Failed;
            r.failure_reason = FailureReason::NoDistinctiveEvidence;
            r.notes.push_back(e.what());
            out.reports[i] = std::move(r);
            return;
        }
        out.reports[i] = run_library(ev, cfg, backends, clock, nullptr, project_name + "/");
    });
    return out;
}

SbomDocument make_sbom(const std::vector<LibraryReport>& reports, UtcTime generated_at) {
    SbomDocument doc;
    doc.tool_version = SCA_VERSION;
    doc.generated_at = generated_at;
    for (const auto& r : reports) doc.components.push_back(SbomComponent::from_report(r));
    return doc;
}

SbomDocument run_so(const fs::path& so_path, const PipelineConfig& cfg, const backends::Backends& backends,
                    const Clock& clock) {
    return make_sbom(analyze_so(so_path, cfg, backends, clock), clock.now_utc());
}

SbomDocument run_project(const fs::path& root, const PipelineConfig& cfg, const backends::Backends& backends,
                         const Clock& clock) {
    return make_sbom(analyze_project(root, cfg, backends, clock).reports, clock.now_utc());
}

} // namespace sca::pipeline
