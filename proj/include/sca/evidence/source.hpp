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

#include "sca/agents/reply.hpp"
#include "sca/backends/backend.hpp"
#include "sca/core/model.hpp"
#include "sca/evidence/tree.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace sca::evidence {

inline constexpr std::size_t kMaxFilesToInspect = 5;

/// A vendored library the selection agent pointed at.
struct TplCandidate {
    std::string name;
    std::string root_path;                   // relative to the project root
    std::vector<std::string> files_to_inspect; // relative to the project root, 1..5 entries
    std::string agent_rationale;

    void validate() const;
    bool operator==(const TplCandidate&) const = default;
};

/// Asks the selection agent for vendored libraries in a tree dump.
///
/// File paths the listing does not contain are dropped (paths given relative
/// to the candidate root are resolved first), lists are capped at five, and
/// candidates left without files are dropped. A root_path that is not a
/// listed directory is replaced by the deepest directory shared by the
/// surviving files. Throws AgentParseError once the repair round fails.
agents::AgentReply<std::vector<TplCandidate>> select_tpl_candidates(const std::string& tree_text,
                                                                    backends::ChatBackend& llm,
                                                                    const std::string& session_id);

/// Source evidence for one candidate: a subtree dump rooted at
/// candidate.root_path plus the head (at most cfg.per_file_byte_cap bytes,
/// cut on a UTF-8 boundary) of each file to inspect. Unreadable files become
/// notes; when none can be read the evidence is flagged empty. Throws
/// IoError if the candidate root itself cannot be listed.
Evidence extract_source_evidence(const std::filesystem::path& project_root, const TplCandidate& candidate,
                                 const TreeDumpConfig& cfg);

} // namespace sca::evidence
