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

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sca::agents {

/// The evidence digest every agent sees: name hint, prioritized strings,
/// tree dump and file excerpts, as markdown-ish sections.
std::string render_evidence(const Evidence& ev);

struct KeywordFeedback {
    ValidationVerdict verdict;
    KeywordSet previous;
};

std::string keywords_message(const Evidence& ev, const std::optional<KeywordFeedback>& feedback);
std::string summarize_message(const SearchHit& hit, const std::string& page_text);
std::string rank_message(const Evidence& ev, const KeywordSet& keywords, const std::vector<PageRecord>& pages);

/// Holds only the evidence digest, the round counter and (url, summary)
/// pairs. Nothing produced by the keyword or ranking agents reaches it.
std::string validate_message(const Evidence& ev, std::span<const RankedEntry> top, int round, int max_rounds);

std::string aggregate_message(const Evidence& ev, const RankedOrigins& ranked, bool accepted,
                              const std::vector<ValidationVerdict>& history);
std::string select_candidates_message(const std::string& tree_text);

} // namespace sca::agents
