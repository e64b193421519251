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

#include "sca/backends/cassette.hpp"

#include "sca/core/error.hpp"
#include "sca/core/text.hpp"
#include "sca/core/url.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <mutex>
#include <sstream>

namespace sca::backends {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr auto kReplace = json::error_handler_t::replace;

std::string preview_of(std::string_view s, std::size_t max_chars = 160) {
    std::string flat(text::utf8_prefix_chars(s, max_chars));
    for (auto& c : flat)
        if (c == '\n' || c == '\r' || c == '\t') c = ' ';
    if (flat.size() < s.size()) flat += "...";
    return flat;
}

} // namespace

std::string_view to_string(Channel c) {
    switch (c) {
    case Channel::Llm: return "llm";
    case Channel::Search: return "search";
    case Channel::Fetch: return "fetch";
    }
    return "?";
}

std::optional<Channel> parse_channel(std::string_view s) {
    for (auto c : {Channel::Llm, Channel::Search, Channel::Fetch})
        if (to_string(c) == s) return c;
    return std::nullopt;
}

std::string sha256_hex(std::string_view data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw Error("sha256 digest failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 0xF];
    }
    return out;
}

json canonical_request(const ChatRequest& req) {
    json messages = json::array();
    for (const auto& m : req.messages)
        messages.push_back({{"role", m.role == Role::User ? "user" : "assistant"}, {"content", m.content}});
    return {
        {"channel", "llm"},
        {"system", req.system_prompt},
        {"messages", std::move(messages)},
        {"temperature", req.temperature},
        {"response_format", req.response_format == ResponseFormat::JsonObject ? "json_object" : "text"},
    };
}

json canonical_search_request(const std::string& query, int pages) {
    return {{"channel", "search"}, {"query", query}, {"pages", pages}};
}

json canonical_fetch_request(const std::string& url) {
    std::string key = url;
    try {
        key = normalize_url(url);
    } catch (const MalformedUrl&) {
    }
    return {{"channel", "fetch"}, {"url", key}};
}

std::string request_digest(const json& canonical) {
    return sha256_hex(canonical.dump(-1, ' ', false, kReplace));
}

std::string chat_preview(const ChatRequest& req) {
    std::string last = req.messages.empty() ? std::string() : req.messages.back().content;
    return "[" + req.session_id + "] " + preview_of(last);
}

json hits_to_json(const std::vector<SearchHit>& hits) {
    json arr = json::array();
    for (const auto& h : hits) {
        arr.push_back({{"title", h.title},
                       {"snippet", h.snippet},
                       {"url", h.url},
                       {"page_index", h.page_index},
                       {"rank_on_page", h.rank_on_page}});
    }
    return arr;
}

std::vector<SearchHit> hits_from_json(const json& j) {
    std::vector<SearchHit> hits;
    for (const auto& h : j) {
        SearchHit hit;
        hit.title = h.at("title").get<std::string>();
        hit.snippet = h.at("snippet").get<std::string>();
        hit.url = h.at("url").get<std::string>();
        hit.page_index = h.at("page_index").get<int>();
        hit.rank_on_page = h.at("rank_on_page").get<int>();
        hits.push_back(std::move(hit));
    }
    return hits;
}

std::shared_ptr<Cassette> Cassette::parse(const std::string& json_text) {
    auto c = std::make_shared<Cassette>();
    try {
        const json j = json::parse(json_text);
        if (j.at("schema").get<std::string>() != kCassetteSchema)
            throw Error("cassette: unsupported schema '" + j.at("schema").get<std::string>() + "'");
        const auto& meta = j.at("metadata");
        c->created_at = meta.value("created_at", "");
        c->tool_version = meta.value("tool_version", "");
        for (const auto& item : j.at("interactions")) {
            auto channel = parse_channel(item.at("channel").get<std::string>());
            if (!channel) throw Error("cassette: unknown channel " + item.at("channel").dump());
            Interaction in{*channel, item.at("request_digest").get<std::string>(),
                           item.value("request_preview", ""), item.at("response")};
            auto key = std::make_pair(in.channel, in.request_digest);
            if (c->entries_.count(key)) throw Error("cassette: duplicate digest " + in.request_digest);
            c->entries_.emplace(std::move(key), std::move(in));
        }
    } catch (const json::exception& e) {
        throw Error(std::string("cassette: malformed document: ") + e.what());
    }
    return c;
}

std::shared_ptr<Cassette> Cassette::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read cassette " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string Cassette::to_json_string() const {
    std::shared_lock lock(mu_);
    ordered_json j;
    j["schema"] = kCassetteSchema;
    j["metadata"] = {{"created_at", created_at}, {"tool_version", tool_version}};
    auto arr = ordered_json::array();
    for (const auto& [key, in] : entries_) {
        ordered_json item;
        item["channel"] = to_string(in.channel);
        item["request_digest"] = in.request_digest;
        item["request_preview"] = in.request_preview;
        item["response"] = in.response;
        arr.push_back(std::move(item));
    }
    j["interactions"] = std::move(arr);
    return j.dump(2, ' ', false, kReplace) + "\n";
}

void Cassette::save(const std::filesystem::path& path) const {
    const auto text = to_json_string();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write cassette " + path.string());
    out << text;
    if (!out) throw IoError("write failed for cassette " + path.string());
}

std::optional<json> Cassette::find(Channel channel, const std::string& digest) const {
    std::shared_lock lock(mu_);
    auto it = entries_.find({channel, digest});
    if (it == entries_.end()) return std::nullopt;
    return it->second.response;
}

void Cassette::record(Interaction interaction) {
    std::unique_lock lock(mu_);
    auto key = std::make_pair(interaction.channel, interaction.request_digest);
    entries_.try_emplace(std::move(key), std::move(interaction));
}

std::size_t Cassette::size() const {
    std::shared_lock lock(mu_);
    return entries_.size();
}

std::vector<Interaction> Cassette::interactions() const {
    std::shared_lock lock(mu_);
    std::vector<Interaction> out;
    for (const auto& [key, in] : entries_) out.push_back(in);
    return out;
}

ChatResponse ReplayChat::chat(const ChatRequest& req) {
    const auto digest = request_digest(canonical_request(req));
    auto resp = cassette_->find(Channel::Llm, digest);
    if (!resp) throw ReplayMiss("llm", chat_preview(req));
    if (resp->contains("error")) throw ProviderError((*resp)["error"].get<std::string>());
    return ChatResponse{resp->at("content").get<std::string>(), resp->at("prompt_tokens").get<std::uint64_t>(),
                        resp->at("completion_tokens").get<std::uint64_t>()};
}

std::vector<SearchHit> ReplaySearch::search(const std::string& query, int pages) {
    const auto digest = request_digest(canonical_search_request(query, pages));
    auto resp = cassette_->find(Channel::Search, digest);
    if (!resp) throw ReplayMiss("search", preview_of(query));
    if (resp->contains("error")) throw SearchProviderError((*resp)["error"].get<std::string>());
    return hits_from_json(resp->at("hits"));
}

FetchResult ReplayFetch::fetch_text(const std::string& url) {
    const auto digest = request_digest(canonical_fetch_request(url));
    auto resp = cassette_->find(Channel::Fetch, digest);
    if (!resp) throw ReplayMiss("fetch", url);
    auto status = parse_fetch_status(resp->at("status").get<std::string>());
    if (!status) throw Error("cassette: bad fetch status for " + url);
    FetchResult r{*status, std::nullopt};
    if (resp->contains("text") && !(*resp)["text"].is_null()) r.text = (*resp)["text"].get<std::string>();
    return r;
}

ChatResponse RecordingChat::chat(const ChatRequest& req) {
    const auto digest = request_digest(canonical_request(req));
    try {
        auto resp = inner_->chat(req);
        cassette_->record({Channel::Llm, digest, chat_preview(req),
                           json{{"content", resp.content},
                                {"prompt_tokens", resp.prompt_tokens},
                                {"completion_tokens", resp.completion_tokens}}});
        return resp;
    } catch (const ProviderError& e) {
        cassette_->record({Channel::Llm, digest, chat_preview(req), json{{"error", e.what()}}});
        throw;
    }
}

std::vector<SearchHit> RecordingSearch::search(const std::string& query, int pages) {
    const auto digest = request_digest(canonical_search_request(query, pages));
    try {
        auto hits = inner_->search(query, pages);
        cassette_->record({Channel::Search, digest, preview_of(query), json{{"hits", hits_to_json(hits)}}});
        return hits;
    } catch (const ProviderError& e) {
        cassette_->record({Channel::Search, digest, preview_of(query), json{{"error", e.what()}}});
        throw;
    }
}

FetchResult RecordingFetch::fetch_text(const std::string& url) {
    auto r = inner_->fetch_text(url);
    json resp{{"status", to_string(r.status)}, {"text", nullptr}};
    if (r.text) resp["text"] = *r.text;
    cassette_->record({Channel::Fetch, request_digest(canonical_fetch_request(url)), url, std::move(resp)});
    return r;
}

} // namespace sca::backends
