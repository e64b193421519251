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

#include "sca/agents/agents.hpp"

#include "sca/core/text.hpp"
#include "sca/core/url.hpp"

#include <map>
#include <set>

namespace sca::agents {

using json = nlohmann::json;

namespace {

std::optional<std::string> optional_string(const json& j, const char* key) {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    if (!j[key].is_string()) throw AgentParseError(std::string("\"") + key + "\" must be a string or null");
    auto v = text::trim(j[key].get<std::string>());
    if (v.empty()) return std::nullopt;
    return v;
}

std::string required_string(const json& j, const char* key) {
    auto v = optional_string(j, key);
    if (!v) throw AgentParseError(std::string("\"") + key + "\" is missing or empty");
    return *v;
}

std::vector<std::string> string_list(const json& j, const char* key) {
    std::vector<std::string> out;
    if (!j.contains(key) || j[key].is_null()) return out;
    if (!j[key].is_array()) throw AgentParseError(std::string("\"") + key + "\" must be an array of strings");
    for (const auto& item : j[key]) {
        if (!item.is_string()) throw AgentParseError(std::string("\"") + key + "\" must contain only strings");
        auto v = text::trim(item.get<std::string>());
        if (!v.empty()) out.push_back(std::move(v));
    }
    return out;
}

std::optional<std::string> url_key(const std::string& url) {
    try {
        return normalize_url(url);
    } catch (const MalformedUrl&) {
        return std::nullopt;
    }
}

} // namespace

json extract_json_object(const std::string& raw) {
    const auto open = raw.find('{');
    const auto close = raw.rfind('}');
    if (open == std::string::npos || close == std::string::npos || close < open)
        throw AgentParseError("reply contains no JSON object");
    try {
        auto j = json::parse(raw.substr(open, close - open + 1));
        if (!j.is_object()) throw AgentParseError("reply is not a JSON object");
        return j;
    } catch (const json::parse_error& e) {
        throw AgentParseError(std::string("reply is not valid JSON: ") + e.what());
    }
}

backends::ChatRequest make_request(AgentKind kind, std::string session_id, std::string user_message) {
    backends::ChatRequest req;
    req.session_id = std::move(session_id);
    req.system_prompt = std::string(system_prompt(kind));
    req.messages.push_back({backends::Role::User, std::move(user_message)});
    req.temperature = 0.0;
    req.response_format = backends::ResponseFormat::JsonObject;
    return req;
}

AgentReply<KeywordSet> generate_keywords(const Evidence& ev, const std::optional<KeywordFeedback>& feedback,
                                         backends::ChatBackend& llm, const std::string& session_id) {
    const int generation = feedback ? feedback->previous.generation + 1 : 0;
    auto req = make_request(AgentKind::Keywords, session_id, keywords_message(ev, feedback));
    return call_structured(llm, std::move(req), [&](const json& j, int) {
        KeywordSet ks;
        std::set<std::string> seen;
        for (auto& k : string_list(j, "keywords")) {
            if (ks.keywords.size() == kMaxKeywords) break;
            if (seen.insert(text::to_lower(k)).second) ks.keywords.push_back(std::move(k));
        }
        if (ks.keywords.empty()) throw AgentParseError("\"keywords\" must hold at least one keyword");
        ks.rationale = optional_string(j, "rationale").value_or("");
        ks.generation = generation;
        return ks;
    });
}

AgentReply<PageRecord> summarize_page(const SearchHit& hit, const backends::FetchResult& fetched,
                                      backends::ChatBackend& llm, const std::string& session_id) {
    PageRecord fallback;
    fallback.hit = hit;
    fallback.summary = hit.snippet;
    fallback.summary_source = SummarySource::SnippetFallback;

    if (fetched.status != FetchStatus::Fetched || !fetched.text) {
        fallback.fetch_status = fetched.status == FetchStatus::Skipped ? FetchStatus::Skipped : FetchStatus::FetchFailed;
        return {fallback, "", false, 0};
    }
    fallback.fetch_status = FetchStatus::Fetched;
    fallback.extracted_text = fetched.text;

    auto req = make_request(AgentKind::Summarize, session_id, summarize_message(hit, *fetched.text));
    try {
        auto reply = call_structured(llm, std::move(req), [](const json& j, int) {
            return std::string(text::utf8_prefix_chars(required_string(j, "summary"), kMaxSummaryChars));
        });
        PageRecord rec = fallback;
        rec.summary = text::trim(reply.parsed);
        rec.summary_source = SummarySource::LlmSummary;
        if (rec.summary.empty()) rec = fallback;
        return {std::move(rec), std::move(reply.raw), reply.repair_used, reply.tokens};
    } catch (const AgentParseError& e) {
        return {fallback, "", true, e.tokens_used()};
    }
}

AgentReply<RankedOrigins> rank_origins(const Evidence& ev, const KeywordSet& keywords,
                                       const std::vector<PageRecord>& pages, backends::ChatBackend& llm,
                                       const std::string& session_id) {
    if (pages.empty()) throw InvariantViolation("rank_origins needs at least one page");
    std::map<std::string, std::size_t> by_url;
    std::map<std::string, std::size_t> by_key;
    for (std::size_t i = 0; i < pages.size(); ++i) {
        by_url.emplace(pages[i].hit.url, i);
        if (auto k = url_key(pages[i].hit.url)) by_key.emplace(*k, i);
    }
    auto lookup = [&](const std::string& url) -> std::optional<std::size_t> {
        if (auto it = by_url.find(url); it != by_url.end()) return it->second;
        if (auto k = url_key(url)) {
            if (auto it = by_key.find(*k); it != by_key.end()) return it->second;
        }
        return std::nullopt;
    };

    auto req = make_request(AgentKind::Rank, session_id, rank_message(ev, keywords, pages));
    auto reply = call_structured(llm, std::move(req), [&](const json& j, int attempt) {
        if (!j.contains("ranking") || !j["ranking"].is_array())
            throw AgentParseError("\"ranking\" must be an array");
        const bool strict = attempt == 0;
        RankedOrigins ranked;
        std::set<std::size_t> used;
        for (const auto& item : j["ranking"]) {
            if (!item.is_object()) throw AgentParseError("ranking entries must be objects");
            const auto url = optional_string(item, "url").value_or("");
            const auto rationale = optional_string(item, "rationale");
            const auto idx = lookup(url);
            if (!idx) {
                if (strict) throw AgentParseError("ranking lists a URL that is not in the page list: " + url);
                continue;
            }
            if (!rationale) {
                if (strict) throw AgentParseError("ranking entry without rationale: " + url);
                continue;
            }
            if (!used.insert(*idx).second) continue;
            ranked.entries.push_back({pages[*idx], *rationale});
        }
        ranked.vendor_hint = optional_string(j, "vendor_hint");
        ranked.version_hint = optional_string(j, "version_hint");
        return ranked;
    });
    reply.parsed.validate_against(pages);
    return reply;
}

AgentReply<ValidationVerdict> validate_origin(const Evidence& ev, std::span<const RankedEntry> top, int round,
                                              int max_rounds, backends::ChatBackend& llm,
                                              const std::string& session_id) {
    if (top.empty()) throw InvariantViolation("validate_origin needs at least one candidate");
    const bool final_round = round >= max_rounds;
    auto req = make_request(AgentKind::Validate, session_id, validate_message(ev, top, round, max_rounds));
    try {
        auto reply = call_structured(llm, std::move(req), [&](const json& j, int) {
            const auto decision = text::to_lower(required_string(j, "decision"));
            ValidationVerdict v;
            if (decision == "accept") v.decision = Decision::Accept;
            else if (decision == "reject") v.decision = Decision::Reject;
            else throw AgentParseError("\"decision\" must be \"accept\" or \"reject\"");
            v.reasons = required_string(j, "reasons");
            if (v.decision == Decision::Reject) {
                auto refined = string_list(j, "refined_keywords");
                if (!refined.empty()) v.refined_keywords = std::move(refined);
                else if (!final_round) throw AgentParseError("a rejection before the final round needs refined_keywords");
            }
            return v;
        });
        reply.parsed.validate();
        return reply;
    } catch (const AgentParseError& e) {
        ValidationVerdict v{Decision::Reject, std::string(kUnparseableValidation), std::nullopt};
        if (!final_round && !ev.name_hint.empty()) v.refined_keywords = std::vector<std::string>{ev.name_hint};
        return {std::move(v), "", true, e.tokens_used()};
    }
}

AgentReply<LibraryReport> aggregate_metadata(const Evidence& ev, const RankedOrigins& ranked, bool accepted,
                                             const std::vector<ValidationVerdict>& history,
                                             backends::ChatBackend& llm, const std::string& session_id) {
    LibraryReport base;
    base.name = ev.name_hint.empty() ? ev.origin_artifact.filename().string() : ev.name_hint;
    if (accepted && !ranked.entries.empty()) base.origin_url = ranked.entries.front().page.hit.url;
    base.vendor_hint = ranked.vendor_hint;
    base.version_hint = ranked.version_hint;

    auto req = make_request(AgentKind::Aggregate, session_id, aggregate_message(ev, ranked, accepted, history));
    try {
        auto reply = call_structured(llm, std::move(req), [&](const json& j, int) {
            LibraryReport r = base;
            r.description = optional_string(j, "description");
            if (accepted && !r.description) throw AgentParseError("\"description\" is required");
            if (!r.vendor_hint) r.vendor_hint = optional_string(j, "vendor_hint");
            if (!r.version_hint) r.version_hint = optional_string(j, "version_hint");
            return r;
        });
        return reply;
    } catch (const AgentParseError& e) {
        return {base, "", true, e.tokens_used()};
    }
}

} // namespace sca::agents
