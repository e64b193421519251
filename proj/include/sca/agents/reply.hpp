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
#include "sca/core/error.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <utility>

namespace sca::agents {

template <typename T>
struct AgentReply {
    T parsed;
    std::string raw;
    /// Exactly one repair round-trip happened.
    bool repair_used = false;
    /// prompt + completion tokens over every call this reply cost.
    std::uint64_t tokens = 0;
};

/// The JSON object in a reply, tolerating code fences or prose around it.
/// Throws AgentParseError.
nlohmann::json extract_json_object(const std::string& raw);

backends::ChatRequest make_request(AgentKind kind, std::string session_id, std::string user_message);

/// Sends `req`, interprets the reply, and on AgentParseError sends one repair
/// turn in the same session. `interpret(json, attempt)` sees attempt 0 for
/// the first reply and 1 for the repaired one. A second failure throws
/// AgentParseError carrying the tokens spent. Provider errors propagate.
template <typename Interpret>
auto call_structured(backends::ChatBackend& llm, backends::ChatRequest req, Interpret&& interpret)
    -> AgentReply<decltype(interpret(std::declval<const nlohmann::json&>(), 0))> {
    using T = decltype(interpret(std::declval<const nlohmann::json&>(), 0));
    auto first = llm.chat(req);
    std::uint64_t tokens = first.total_tokens();
    std::string problem;
    try {
        T value = interpret(extract_json_object(first.content), 0);
        return AgentReply<T>{std::move(value), std::move(first.content), false, tokens};
    } catch (const AgentParseError& e) {
        problem = e.what();
    } catch (const nlohmann::json::exception& e) {
        problem = e.what();
    }
    req.messages.push_back({backends::Role::Assistant, first.content});
    req.messages.push_back({backends::Role::User, repair_message(problem)});
    auto second = llm.chat(req);
    tokens += second.total_tokens();
    try {
        T value = interpret(extract_json_object(second.content), 1);
        return AgentReply<T>{std::move(value), std::move(second.content), true, tokens};
    } catch (const AgentParseError& e) {
        throw AgentParseError(e.what(), tokens);
    } catch (const nlohmann::json::exception& e) {
        throw AgentParseError(e.what(), tokens);
    }
}

} // namespace sca::agents
