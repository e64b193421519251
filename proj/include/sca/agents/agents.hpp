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

#include "sca/agents/render.hpp"
#include "sca/agents/reply.hpp"
#include "sca/backends/backend.hpp"
#include "sca/core/model.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sca::agents {

inline constexpr std::size_t kMaxSummaryChars = 600;

/// Keyword agent. With feedback, the new set's generation is
/// feedback->previous.generation + 1. Throws AgentParseError.
AgentReply<KeywordSet> generate_keywords(const Evidence& ev, const std::optional<KeywordFeedback>& feedback,
                                         backends::ChatBackend& llm, const std::string& session_id);

/// Page agent. A failed or skipped fetch yields the snippet without calling
/// the model; an unusable model reply also degrades to the snippet.
AgentReply<PageRecord> summarize_page(const SearchHit& hit, const backends::FetchResult& fetched,
                                      backends::ChatBackend& llm, const std::string& session_id);

/// Ranking agent. The result only ever holds pages from `pages`: unknown
/// URLs and entries without a rationale trigger the repair round and are
/// dropped if they persist. Throws AgentParseError.
AgentReply<RankedOrigins> rank_origins(const Evidence& ev, const KeywordSet& keywords,
                                       const std::vector<PageRecord>& pages, backends::ChatBackend& llm,
                                       const std::string& session_id);

inline constexpr std::string_view kUnparseableValidation = "unparseable validation";

/// Independent validator over the top entries. `round` is 1-based. An
/// unusable reply becomes Reject("unparseable validation").
AgentReply<ValidationVerdict> validate_origin(const Evidence& ev, std::span<const RankedEntry> top, int round,
                                              int max_rounds, backends::ChatBackend& llm,
                                              const std::string& session_id);

/// Aggregation agent. Fills name, origin_url (top entry when accepted),
/// description and hints; status is left for the caller. Hints from the
/// ranking win over hints in this reply. An unusable reply yields a report
/// without description.
AgentReply<LibraryReport> aggregate_metadata(const Evidence& ev, const RankedOrigins& ranked, bool accepted,
                                             const std::vector<ValidationVerdict>& history,
                                             backends::ChatBackend& llm, const std::string& session_id);

} // namespace sca::agents
