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

#include "sca/fixtures/scripted.hpp"

#include "sca/backends/html_text.hpp"
#include "sca/core/error.hpp"
#include "sca/core/text.hpp"

#include <json.hpp>

#include <sstream>

namespace sca::fixtures {

using json = nlohmann::json;
using backends::ChatRequest;

std::uint64_t estimate_tokens(std::string_view text) { return (text.size() + 3) / 4; }

ScriptedChat::ScriptedChat() = default;

void ScriptedChat::on(agents::AgentKind kind, ChatHandler handler) { handlers_[kind] = std::move(handler); }

backends::ChatResponse ScriptedChat::chat(const ChatRequest& req) {
    const auto agent = agents::agent_for_system_prompt(req.system_prompt);
    std::string reply;
    if (agent) {
        auto it = handlers_.find(*agent);
        if (it != handlers_.end()) {
            reply = it->second(req);
        } else {
            switch (*agent) {
            case agents::AgentKind::Keywords: reply = default_keywords(req); break;
            case agents::AgentKind::Summarize: reply = default_summary(req); break;
            case agents::AgentKind::Rank: reply = default_ranking(req); break;
            case agents::AgentKind::Validate: reply = default_validation(req); break;
            case agents::AgentKind::Aggregate: reply = default_aggregate(req); break;
            case agents::AgentKind::SelectCandidates: reply = default_selection(req); break;
            }
        }
    } else {
        reply = "{}";
    }
    backends::ChatResponse resp;
    resp.content = reply;
    std::uint64_t prompt = estimate_tokens(req.system_prompt);
    for (const auto& m : req.messages) prompt += estimate_tokens(m.content);
    resp.prompt_tokens = prompt;
    resp.completion_tokens = estimate_tokens(reply);
    std::lock_guard lock(mu_);
    log_.push_back({agent, req, reply});
    return resp;
}

std::vector<ChatCall> ScriptedChat::calls() const {
    std::lock_guard lock(mu_);
    return log_;
}

std::size_t ScriptedChat::count(agents::AgentKind kind) const {
    std::lock_guard lock(mu_);
    std::size_t n = 0;
    for (const auto& c : log_)
        if (c.agent == kind) ++n;
    return n;
}

const std::string& user_message(const ChatRequest& req) {
    // the first user message carries the rendered evidence; repair turns come later
    for (const auto& m : req.messages)
        if (m.role == backends::Role::User) return m.content;
    throw InvariantViolation("request without a user message");
}

std::optional<std::string> message_field(const ChatRequest& req, std::string_view label) {
    std::istringstream in(user_message(req));
    const std::string prefix = std::string(label) + ": ";
    for (std::string line; std::getline(in, line);)
        if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
    return std::nullopt;
}

std::vector<std::string> listed_urls(const ChatRequest& req) {
    std::vector<std::string> out;
    std::istringstream in(user_message(req));
    for (std::string line; std::getline(in, line);) {
        if (line.empty() || line.front() != '[') continue;
        const auto pos = line.find("] URL: ");
        if (pos != std::string::npos) out.push_back(line.substr(pos + 7));
    }
    return out;
}

std::string page_text(const ChatRequest& req) {
    const auto& msg = user_message(req);
    const std::string marker = "## Page text\n";
    const auto pos = msg.find(marker);
    return pos == std::string::npos ? std::string() : msg.substr(pos + marker.size());
}

int validation_round(const ChatRequest& req) {
    const auto& msg = user_message(req);
    const std::string marker = "## Validation round ";
    const auto pos = msg.find(marker);
    if (pos == std::string::npos) return 0;
    return std::atoi(msg.c_str() + pos + marker.size());
}

std::string default_keywords(const ChatRequest& req) {
    auto hint = message_field(req, "Library name hint").value_or("library");
    if (hint == "(none)") hint = "library";
    return json{{"keywords", {hint, "library"}}, {"rationale", "name hint"}}.dump();
}

std::string default_summary(const ChatRequest& req) {
    auto body = text::trim(page_text(req));
    const auto nl = body.find('\n');
    if (nl != std::string::npos) body = body.substr(0, nl);
    if (body.empty()) body = "Page without readable text.";
    return json{{"summary", std::string(text::utf8_prefix_chars(body, 200))}}.dump(-1, ' ', false,
                                                                                 json::error_handler_t::replace);
}

std::string default_ranking(const ChatRequest& req) {
    json ranking = json::array();
    for (const auto& u : listed_urls(req)) ranking.push_back({{"url", u}, {"rationale", "listed page"}});
    return json{{"ranking", ranking}, {"vendor_hint", nullptr}, {"version_hint", nullptr}}.dump();
}

std::string default_validation(const ChatRequest&) {
    return json{{"decision", "accept"}, {"reasons", "the first candidate matches"}, {"refined_keywords", nullptr}}
        .dump();
}

std::string default_aggregate(const ChatRequest& req) {
    const auto summary = message_field(req, "Summary");
    json j{{"description", nullptr}, {"vendor_hint", nullptr}, {"version_hint", nullptr}};
    if (summary) j["description"] = *summary;
    return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

std::string default_selection(const ChatRequest&) { return R"({"candidates":[]})"; }

ScriptedSearch::ScriptedSearch(SearchHandler handler) : handler_(std::move(handler)) {}

std::vector<SearchHit> ScriptedSearch::search(const std::string& query, int pages) {
    {
        std::lock_guard lock(mu_);
        log_.push_back(query);
    }
    return handler_ ? handler_(query, pages) : std::vector<SearchHit>{};
}

std::vector<std::string> ScriptedSearch::queries() const {
    std::lock_guard lock(mu_);
    return log_;
}

backends::FetchResult fetched_html(const std::string& html) {
    auto text = backends::cap_text(backends::html_to_text(html), backends::kDefaultPageTextCap);
    if (text.empty()) return {FetchStatus::FetchFailed, std::nullopt};
    return {FetchStatus::Fetched, std::move(text)};
}

ScriptedFetch::ScriptedFetch(FetchHandler handler) : handler_(std::move(handler)) {}

backends::FetchResult ScriptedFetch::fetch_text(const std::string& url) {
    {
        std::lock_guard lock(mu_);
        log_.push_back(url);
    }
    if (!handler_) return {FetchStatus::FetchFailed, std::nullopt};
    return handler_(url);
}

std::vector<std::string> ScriptedFetch::urls() const {
    std::lock_guard lock(mu_);
    return log_;
}

std::vector<SearchHit> numbered_hits(const std::string& stem, int count, int pages) {
    std::vector<SearchHit> out;
    for (int i = 0; i < count; ++i) {
        const int page = i / backends::kHitsPerPage + 1;
        if (page > pages) break;
        SearchHit h;
        h.title = "Result " + std::to_string(i + 1);
        h.snippet = "Snippet for " + stem + " result " + std::to_string(i + 1);
        h.url = "https://example.test/" + stem + "/" + std::to_string(i + 1);
        h.page_index = page;
        h.rank_on_page = i % backends::kHitsPerPage + 1;
        out.push_back(std::move(h));
    }
    return out;
}

} // namespace sca::fixtures
