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

#include <optional>
#include <string>
#include <string_view>

namespace sca::agents {

enum class AgentKind { Keywords, Summarize, Rank, Validate, Aggregate, SelectCandidates };

std::string_view to_string(AgentKind kind);

/// The versioned system prompt for an agent (prompts/<name>.txt).
std::string_view system_prompt(AgentKind kind);

/// Which agent a system prompt belongs to, if any.
std::optional<AgentKind> agent_for_system_prompt(std::string_view prompt);

/// Follow-up user message for the single repair round.
std::string repair_message(std::string_view error);

} // namespace sca::agents
