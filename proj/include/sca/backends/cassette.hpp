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

#include <json.hpp>

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

namespace sca::backends {

enum class Channel { Llm, Search, Fetch };

std::string_view to_string(Channel c);
std::optional<Channel> parse_channel(std::string_view s);

inline constexpr std::string_view kCassetteSchema = "sca-cassette/1";

struct Interaction {
    Channel channel = Channel::Llm;
    std::string request_digest;
    std::string request_preview;
    nlohmann::json response;
};

/// Recorded external interactions keyed by (channel, request digest).
/// Lookups may run concurrently; appends are serialized.
class Cassette {
public:
    Cassette() = default;
    Cassette(const Cassette&) = delete;
    Cassette& operator=(const Cassette&) = delete;

    static std::shared_ptr<Cassette> parse(const std::string& json_text);
    static std::shared_ptr<Cassette> load(const std::filesystem::path& path);

    /// Interactions are written sorted by (channel, digest) so the file does
    /// not depend on the order concurrent calls finished in.
    std::string to_json_string() const;
    void save(const std::filesystem::path& path) const;

    std::optional<nlohmann::json> find(Channel channel, const std::string& digest) const;
    /// Keeps the first response when the digest is already present.
    void record(Interaction interaction);

    std::size_t size() const;
    std::vector<Interaction> interactions() const;

    std::string created_at;
    std::string tool_version;

private:
    mutable std::shared_mutex mu_;
    std::map<std::pair<Channel, std::string>, Interaction> entries_;
};

// Canonical request forms. Object keys serialize sorted, so the digest does
// not depend on construction order.
nlohmann::json canonical_request(const ChatRequest& req);
nlohmann::json canonical_search_request(const std::string& query, int pages);
nlohmann::json canonical_fetch_request(const std::string& url);

/// Lowercase hex SHA-256 of the canonical JSON text.
std::string request_digest(const nlohmann::json& canonical);
std::string sha256_hex(std::string_view data);

std::string chat_preview(const ChatRequest& req);

/// Serves every call from the cassette; constructs no network client.
class ReplayChat final : public ChatBackend {
public:
    explicit ReplayChat(std::shared_ptr<const Cassette> cassette) : cassette_(std::move(cassette)) {}
    ChatResponse chat(const ChatRequest& req) override;

private:
    std::shared_ptr<const Cassette> cassette_;
};

class ReplaySearch final : public SearchBackend {
public:
    explicit ReplaySearch(std::shared_ptr<const Cassette> cassette) : cassette_(std::move(cassette)) {}
    std::vector<SearchHit> search(const std::string& query, int pages) override;

private:
    std::shared_ptr<const Cassette> cassette_;
};

class ReplayFetch final : public FetchBackend {
public:
    explicit ReplayFetch(std::shared_ptr<const Cassette> cassette) : cassette_(std::move(cassette)) {}
    FetchResult fetch_text(const std::string& url) override;

private:
    std::shared_ptr<const Cassette> cassette_;
};

/// Forwards to `inner` and appends the outcome, including provider errors.
class RecordingChat final : public ChatBackend {
public:
    RecordingChat(std::shared_ptr<ChatBackend> inner, std::shared_ptr<Cassette> cassette)
        : inner_(std::move(inner)), cassette_(std::move(cassette)) {}
    ChatResponse chat(const ChatRequest& req) override;

private:
    std::shared_ptr<ChatBackend> inner_;
    std::shared_ptr<Cassette> cassette_;
};

class RecordingSearch final : public SearchBackend {
public:
    RecordingSearch(std::shared_ptr<SearchBackend> inner, std::shared_ptr<Cassette> cassette)
        : inner_(std::move(inner)), cassette_(std::move(cassette)) {}
    std::vector<SearchHit> search(const std::string& query, int pages) override;

private:
    std::shared_ptr<SearchBackend> inner_;
    std::shared_ptr<Cassette> cassette_;
};

class RecordingFetch final : public FetchBackend {
public:
    RecordingFetch(std::shared_ptr<FetchBackend> inner, std::shared_ptr<Cassette> cassette)
        : inner_(std::move(inner)), cassette_(std::move(cassette)) {}
    FetchResult fetch_text(const std::string& url) override;

private:
    std::shared_ptr<FetchBackend> inner_;
    std::shared_ptr<Cassette> cassette_;
};

// JSON forms shared by the cassette and the live clients.
nlohmann::json hits_to_json(const std::vector<SearchHit>& hits);
std::vector<SearchHit> hits_from_json(const nlohmann::json& j);

} // namespace sca::backends
