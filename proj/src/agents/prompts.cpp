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

#include "sca/agents/prompts.hpp"

#include "sca/prompt_data.hpp"

namespace sca::agents {

std::string_view to_string(AgentKind kind) {
    switch (kind) {
    case AgentKind::Keywords: return "a1_keywords";
    case AgentKind::Summarize: return "a2_summarize";
    case AgentKind::Rank: return "a3_rank";
    case AgentKind::Validate: return "a4_validate";
    case AgentKind::Aggregate: return "a5_aggregate";
    case AgentKind::SelectCandidates: return "select_candidates";
    }
    return "?";
}

std::string_view system_prompt(AgentKind kind) {
    switch (kind) {
    case AgentKind::Keywords: return prompt_data::a1_keywords;
    case AgentKind::Summarize: return prompt_data::a2_summarize;
    case AgentKind::Rank: return prompt_data::a3_rank;
    case AgentKind::Validate: return prompt_data::a4_validate;
    case AgentKind::Aggregate: return prompt_data::a5_aggregate;
    case AgentKind::SelectCandidates: return prompt_data::select_candidates;
    }
    return {};
}

std::optional<AgentKind> agent_for_system_prompt(std::string_view prompt) {
    for (auto k : {AgentKind::Keywords, AgentKind::Summarize, AgentKind::Rank, AgentKind::Validate,
                   AgentKind::Aggregate, AgentKind::SelectCandidates})
        if (system_prompt(k) == prompt) return k;
    return std::nullopt;
}

std::string repair_message(std::string_view error) {
    std::string out(prompt_data::repair);
    const std::string_view slot = "{error}";
    if (auto pos = out.find(slot); pos != std::string::npos) out.replace(pos, slot.size(), error);
    return out;
}

} // namespace sca::agents
