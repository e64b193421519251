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
#include "sca/backends/html_text.hpp"

#include <json.hpp>

#include <chrono>
#include <cstddef>
#include <string>
#include <vector>

namespace sca::backends {

/// Number of live network clients constructed in this process.
std::size_t live_client_count() noexcept;

struct ChatApiConfig {
    std::string api_base = "https://api.openai.com/v1";
    std::string api_key;
    std::string model = "gpt-4o";
    std::chrono::seconds timeout{120};
};

/// OpenAI-compatible /chat/completions client.
class OpenAiChat final : public ChatBackend {
public:
    explicit OpenAiChat(ChatApiConfig cfg);
    ChatResponse chat(const ChatRequest& req) override;

    static nlohmann::json build_body(const ChatRequest& req, const std::string& model);
    static ChatResponse parse_body(const std::string& body);

private:
    ChatApiConfig cfg_;
};

struct SearchApiConfig {
    std::string api_base = "https://www.googleapis.com/customsearch/v1";
    std::string api_key;
    std::chrono::seconds timeout{30};
};

/// JSON web-search client. Issues GET {base}?q=..&start=..&num=10 with the
/// key in both a `key` parameter and an `Authorization: Bearer` header, and
/// accepts the common response shapes: `items[]` (title/snippet/link),
/// `results[]` and `web.results[]` (title/snippet|description/url).
class JsonSearch final : public SearchBackend {
public:
    explicit JsonSearch(SearchApiConfig cfg);
    std::vector<SearchHit> search(const std::string& query, int pages) override;

    /// Hits from one result page; invalid URLs are skipped, empty snippets
    /// fall back to the title, then the URL.
    static std::vector<SearchHit> parse_page(const std::string& body, int page_index);

private:
    SearchApiConfig cfg_;
};

struct FetchConfig {
    std::chrono::seconds timeout{15};
    std::size_t text_cap = kDefaultPageTextCap;
};

/// Single-page GET. HTML and plain text are accepted; everything else,
/// non-2xx statuses and transport errors are FetchFailed.
class HttpFetcher final : public FetchBackend {
public:
    explicit HttpFetcher(FetchConfig cfg = {});
    FetchResult fetch_text(const std::string& url) override;

    /// Content-type dispatch shared with tests.
    static FetchResult convert(int status, const std::string& content_type, const std::string& body,
                               std::size_t text_cap);

private:
    FetchConfig cfg_;
};

} // namespace sca::backends
