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

#include "sca/core/model.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace sca::backends {

enum class Role { User, Assistant };

struct ChatMessage {
    Role role = Role::User;
    std::string content;

    bool operator==(const ChatMessage&) const = default;
};

enum class ResponseFormat { FreeText, JsonObject };

struct ChatRequest {
    /// Opaque conversation handle. Not part of the request digest.
    std::string session_id;
    std::string system_prompt;
    std::vector<ChatMessage> messages;
    double temperature = 0.0;
    ResponseFormat response_format = ResponseFormat::JsonObject;
};

struct ChatResponse {
    std::string content;
    std::uint64_t prompt_tokens = 0;
    std::uint64_t completion_tokens = 0;

    std::uint64_t total_tokens() const noexcept { return prompt_tokens + completion_tokens; }
    bool operator==(const ChatResponse&) const = default;
};

class ChatBackend {
public:
    virtual ~ChatBackend() = default;
    /// Throws ProviderError, or ReplayMiss in replay mode.
    virtual ChatResponse chat(const ChatRequest& req) = 0;
};

inline constexpr int kHitsPerPage = 10;

class SearchBackend {
public:
    virtual ~SearchBackend() = default;
    /// Hits for result pages 1..pages, at most kHitsPerPage per page, in
    /// provider order. No results is an empty vector, not an error.
    /// Throws SearchProviderError, or ReplayMiss in replay mode.
    virtual std::vector<SearchHit> search(const std::string& query, int pages) = 0;
};

struct FetchResult {
    FetchStatus status = FetchStatus::FetchFailed;
    std::optional<std::string> text;

    bool operator==(const FetchResult&) const = default;
};

class FetchBackend {
public:
    virtual ~FetchBackend() = default;
    /// Never throws for HTTP-level problems; those come back as FetchFailed.
    /// Replay mode may throw ReplayMiss.
    virtual FetchResult fetch_text(const std::string& url) = 0;
};

struct Backends {
    std::shared_ptr<ChatBackend> llm;
    std::shared_ptr<SearchBackend> search;
    std::shared_ptr<FetchBackend> fetch;
};

} // namespace sca::backends
