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

#include "sca/agents/prompts.hpp"
#include "sca/backends/backend.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace sca::fixtures {

/// Offline stand-ins for the three external services. Each one answers from
/// handlers set up by a test and logs every call so tests can assert on
/// call order and request content.

struct ChatCall {
    std::optional<agents::AgentKind> agent;
    backends::ChatRequest request;
    std::string reply;
};

using ChatHandler = std::function<std::string(const backends::ChatRequest&)>;

/// Rough token estimate used by the scripted model: a quarter of the bytes.
std::uint64_t estimate_tokens(std::string_view text);

class ScriptedChat final : public backends::ChatBackend {
public:
    /// Without a handler an agent gets a generic, well-formed reply (see the
    /// default_* helpers below).
    ScriptedChat();

    void on(agents::AgentKind kind, ChatHandler handler);
    backends::ChatResponse chat(const backends::ChatRequest& req) override;

    std::vector<ChatCall> calls() const;
    std::size_t count(agents::AgentKind kind) const;

private:
    std::map<agents::AgentKind, ChatHandler> handlers_;
    mutable std::mutex mu_;
    std::vector<ChatCall> log_;
};

// Helpers for reading the rendered user message of a request.
const std::string& user_message(const backends::ChatRequest& req);
/// Text after "<label>: " on the first line that starts with it.
std::optional<std::string> message_field(const backends::ChatRequest& req, std::string_view label);
/// URLs listed as "[n] URL: ..." lines, in order.
std::vector<std::string> listed_urls(const backends::ChatRequest& req);
/// Page text handed to the page agent.
std::string page_text(const backends::ChatRequest& req);
/// 1-based round from "## Validation round i of n", 0 if absent.
int validation_round(const backends::ChatRequest& req);

std::string default_keywords(const backends::ChatRequest& req);
std::string default_summary(const backends::ChatRequest& req);
std::string default_ranking(const backends::ChatRequest& req);
std::string default_validation(const backends::ChatRequest& req);
std::string default_aggregate(const backends::ChatRequest& req);
std::string default_selection(const backends::ChatRequest& req);

using SearchHandler = std::function<std::vector<SearchHit>(const std::string& query, int pages)>;

class ScriptedSearch final : public backends::SearchBackend {
public:
    explicit ScriptedSearch(SearchHandler handler = {});
    std::vector<SearchHit> search(const std::string& query, int pages) override;
    std::vector<std::string> queries() const;

private:
    SearchHandler handler_;
    mutable std::mutex mu_;
    std::vector<std::string> log_;
};

using FetchHandler = std::function<backends::FetchResult(const std::string& url)>;

/// Serves HTML through the real html_to_text conversion, so tests see the
/// same page text a live fetch would produce.
backends::FetchResult fetched_html(const std::string& html);

class ScriptedFetch final : public backends::FetchBackend {
public:
    explicit ScriptedFetch(FetchHandler handler = {});
    backends::FetchResult fetch_text(const std::string& url) override;
    std::vector<std::string> urls() const;

private:
    FetchHandler handler_;
    mutable std::mutex mu_;
    std::vector<std::string> log_;
};

/// Hits with titles "Result i", snippets and URLs https://example.test/<stem>/<i>.
std::vector<SearchHit> numbered_hits(const std::string& stem, int count, int pages = 2);

} // namespace sca::fixtures
