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

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "sca/backends/live.hpp"

#include "sca/core/error.hpp"
#include "sca/core/text.hpp"
#include "sca/core/url.hpp"

#include <atomic>

namespace sca::backends {

using json = nlohmann::json;

namespace {

std::atomic<std::size_t> g_live_clients{0};

struct Endpoint {
    std::string origin;        // scheme://host[:port]
    std::string path_and_query; // "/" when empty
};

Endpoint split_endpoint(const std::string& url) {
    auto parts = parse_http_url(url);
    if (!parts) throw MalformedUrl(url);
    Endpoint e;
    e.origin = parts->scheme + "://" + parts->host;
    if (parts->port) e.origin += ":" + std::to_string(*parts->port);
    e.path_and_query = parts->path.empty() ? "/" : parts->path;
    if (!parts->query.empty()) e.path_and_query += "?" + parts->query;
    return e;
}

std::string url_encode(std::string_view s) {
    static constexpr char hex[] = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : s) {
        if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
            out += static_cast<char>(c);
        } else {
            out += '%';
            out += hex[c >> 4];
            out += hex[c & 15];
        }
    }
    return out;
}

std::string body_preview(const std::string& body) {
    return std::string(text::utf8_prefix(body, 200));
}

} // namespace

std::size_t live_client_count() noexcept {
    return g_live_clients.load();
}

OpenAiChat::OpenAiChat(ChatApiConfig cfg) : cfg_(std::move(cfg)) {
    ++g_live_clients;
}

json OpenAiChat::build_body(const ChatRequest& req, const std::string& model) {
    json messages = json::array();
    messages.push_back({{"role", "system"}, {"content", req.system_prompt}});
    for (const auto& m : req.messages)
        messages.push_back({{"role", m.role == Role::User ? "user" : "assistant"}, {"content", m.content}});
    json body{{"model", model}, {"temperature", req.temperature}, {"messages", std::move(messages)}};
    if (req.response_format == ResponseFormat::JsonObject) body["response_format"] = {{"type", "json_object"}};
    return body;
}

ChatResponse OpenAiChat::parse_body(const std::string& body) {
    try {
        const auto j = json::parse(body);
        ChatResponse r;
        r.content = j.at("choices").at(0).at("message").at("content").get<std::string>();
        if (j.contains("usage")) {
            r.prompt_tokens = j["usage"].value("prompt_tokens", 0ULL);
            r.completion_tokens = j["usage"].value("completion_tokens", 0ULL);
        }
        return r;
    } catch (const json::exception& e) {
        throw ProviderError(std::string("unexpected chat completion body: ") + e.what());
    }
}

ChatResponse OpenAiChat::chat(const ChatRequest& req) {
    if (req.messages.empty()) throw InvariantViolation("chat request without messages");
    auto ep = split_endpoint(cfg_.api_base);
    std::string path = ep.path_and_query;
    if (path.back() == '/') path.pop_back();
    path += "/chat/completions";

    httplib::Client cli(ep.origin);
    cli.set_connection_timeout(cfg_.timeout);
    cli.set_read_timeout(cfg_.timeout);
    cli.set_bearer_token_auth(cfg_.api_key);
    const auto payload = build_body(req, cfg_.model).dump(-1, ' ', false, json::error_handler_t::replace);
    auto res = cli.Post(path, payload, "application/json");
    if (!res) throw ProviderError("LLM request failed: " + httplib::to_string(res.error()));
    if (res->status < 200 || res->status >= 300)
        throw ProviderError("LLM HTTP " + std::to_string(res->status) + ": " + body_preview(res->body));
    return parse_body(res->body);
}

JsonSearch::JsonSearch(SearchApiConfig cfg) : cfg_(std::move(cfg)) {
    ++g_live_clients;
}

std::vector<SearchHit> JsonSearch::parse_page(const std::string& body, int page_index) {
    json j;
    try {
        j = json::parse(body);
    } catch (const json::exception& e) {
        throw SearchProviderError(std::string("search response is not JSON: ") + e.what());
    }
    const json* items = nullptr;
    const char* url_key = "url";
    if (j.contains("items")) {
        items = &j["items"];
        url_key = "link";
    } else if (j.contains("results")) {
        items = &j["results"];
    } else if (j.contains("web") && j["web"].contains("results")) {
        items = &j["web"]["results"];
    }
    std::vector<SearchHit> hits;
    if (!items || !items->is_array()) return hits;
    for (const auto& item : *items) {
        if (static_cast<int>(hits.size()) == kHitsPerPage) break;
        SearchHit h;
        h.url = item.value(url_key, "");
        if (!is_http_url(h.url)) continue;
        h.title = text::trim(item.value("title", ""));
        h.snippet = text::trim(item.value("snippet", item.value("description", "")));
        if (h.snippet.empty()) h.snippet = h.title.empty() ? h.url : h.title;
        h.page_index = page_index;
        h.rank_on_page = static_cast<int>(hits.size()) + 1;
        hits.push_back(std::move(h));
    }
    return hits;
}

std::vector<SearchHit> JsonSearch::search(const std::string& query, int pages) {
    if (query.empty()) throw InvariantViolation("empty search query");
    auto ep = split_endpoint(cfg_.api_base);
    httplib::Client cli(ep.origin);
    cli.set_connection_timeout(cfg_.timeout);
    cli.set_read_timeout(cfg_.timeout);
    cli.set_bearer_token_auth(cfg_.api_key);

    std::vector<SearchHit> all;
    for (int page = 1; page <= pages; ++page) {
        std::string target = ep.path_and_query;
        target += target.find('?') == std::string::npos ? '?' : '&';
        target += "q=" + url_encode(query) + "&num=" + std::to_string(kHitsPerPage) +
                  "&start=" + std::to_string((page - 1) * kHitsPerPage + 1) + "&page=" + std::to_string(page) +
                  "&key=" + url_encode(cfg_.api_key);
        auto res = cli.Get(target);
        if (!res) throw SearchProviderError("search request failed: " + httplib::to_string(res.error()));
        if (res->status < 200 || res->status >= 300)
            throw SearchProviderError("search HTTP " + std::to_string(res->status) + ": " + body_preview(res->body));
        auto hits = parse_page(res->body, page);
        const bool short_page = hits.size() < static_cast<std::size_t>(kHitsPerPage);
        all.insert(all.end(), hits.begin(), hits.end());
        if (short_page) break;
    }
    return all;
}

HttpFetcher::HttpFetcher(FetchConfig cfg) : cfg_(cfg) {
    ++g_live_clients;
}

FetchResult HttpFetcher::convert(int status, const std::string& content_type, const std::string& body,
                                 std::size_t text_cap) {
    if (status < 200 || status >= 300) return {FetchStatus::FetchFailed, std::nullopt};
    const auto ct = text::to_lower(content_type);
    std::string extracted;
    if (ct.empty() || ct.find("html") != std::string::npos)
        extracted = html_to_text(body);
    else if (ct.find("text/plain") != std::string::npos)
        extracted = normalize_plain_text(body);
    else
        return {FetchStatus::FetchFailed, std::nullopt};
    if (extracted.empty()) return {FetchStatus::FetchFailed, std::nullopt};
    return {FetchStatus::Fetched, cap_text(std::move(extracted), text_cap)};
}

FetchResult HttpFetcher::fetch_text(const std::string& url) {
    Endpoint ep;
    try {
        ep = split_endpoint(url);
    } catch (const MalformedUrl&) {
        return {FetchStatus::FetchFailed, std::nullopt};
    }
    httplib::Client cli(ep.origin);
    cli.set_connection_timeout(cfg_.timeout);
    cli.set_read_timeout(cfg_.timeout);
    cli.set_write_timeout(cfg_.timeout);
    cli.set_follow_location(true);
    auto res = cli.Get(ep.path_and_query, {{"User-Agent", "sca/0.1 (+single-page fetch)"}});
    if (!res) return {FetchStatus::FetchFailed, std::nullopt};
    return convert(res->status, res->get_header_value("Content-Type"), res->body, cfg_.text_cap);
}

} // namespace sca::backends
