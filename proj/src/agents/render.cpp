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

#include "sca/agents/render.hpp"

#include "sca/core/text.hpp"

namespace sca::agents {

std::string render_evidence(const Evidence& ev) {
    std::string out = "## Evidence\n";
    out += "Artifact kind: ";
    out += ev.kind == EvidenceKind::ElfSharedObject ? "ELF shared object" : "vendored C/C++ source";
    out += "\nLibrary name hint: " + (ev.name_hint.empty() ? std::string("(none)") : ev.name_hint) + "\n";
    if (ev.kind == EvidenceKind::ElfSharedObject) {
        out += "\n### Readable strings (" + std::to_string(ev.strings.size()) + ")\n";
        for (const auto& s : ev.strings) out += s + "\n";
        if (ev.strings.empty()) out += "(none)\n";
    }
    if (ev.tree_text) out += "\n### Directory structure\n" + *ev.tree_text;
    if (!ev.file_excerpts.empty()) {
        out += "\n### File excerpts\n";
        for (const auto& ex : ev.file_excerpts) {
            out += "#### " + ex.relative_path + (ex.truncated ? " (head only)" : "") + "\n";
            out += ex.content;
            if (ex.content.empty() || ex.content.back() != '\n') out += '\n';
        }
    }
    return out;
}

std::string keywords_message(const Evidence& ev, const std::optional<KeywordFeedback>& feedback) {
    std::string out = render_evidence(ev);
    if (feedback) {
        out += "\n## Validator feedback\n";
        out += "Previous keywords: " + text::join(feedback->previous.keywords, ", ") + "\n";
        out += "Reasons: " + feedback->verdict.reasons + "\n";
        if (feedback->verdict.refined_keywords)
            out += "Suggested keywords: " + text::join(*feedback->verdict.refined_keywords, ", ") + "\n";
    }
    return out;
}

std::string summarize_message(const SearchHit& hit, const std::string& page_text) {
    std::string out = "URL: " + hit.url + "\nTitle: " + hit.title + "\n\n## Page text\n" + page_text;
    if (out.back() != '\n') out += '\n';
    return out;
}

std::string rank_message(const Evidence& ev, const KeywordSet& keywords, const std::vector<PageRecord>& pages) {
    std::string out = render_evidence(ev);
    out += "\n## Search keywords\n" + text::join(keywords.keywords, ", ") + "\n";
    out += "\n## Pages\n";
    for (std::size_t i = 0; i < pages.size(); ++i) {
        const auto& p = pages[i];
        out += "[" + std::to_string(i + 1) + "] URL: " + p.hit.url + "\n";
        out += "Title: " + p.hit.title + "\n";
        out += "Summary: " + p.summary + "\n";
    }
    return out;
}

std::string validate_message(const Evidence& ev, std::span<const RankedEntry> top, int round, int max_rounds) {
    std::string out = render_evidence(ev);
    out += "\n## Validation round " + std::to_string(round) + " of " + std::to_string(max_rounds) + "\n";
    out += "\n## Candidate pages\n";
    for (std::size_t i = 0; i < top.size(); ++i) {
        out += "[" + std::to_string(i + 1) + "] URL: " + top[i].page.hit.url + "\n";
        out += "Summary: " + top[i].page.summary + "\n";
    }
    return out;
}

std::string aggregate_message(const Evidence& ev, const RankedOrigins& ranked, bool accepted,
                              const std::vector<ValidationVerdict>& history) {
    std::string out = render_evidence(ev);
    out += "\n## Selected origin\n";
    if (accepted && !ranked.entries.empty()) {
        out += "URL: " + ranked.entries.front().page.hit.url + "\n";
        out += "Summary: " + ranked.entries.front().page.summary + "\n";
    } else {
        out += "(none: no candidate page was confirmed as the origin)\n";
    }
    if (ranked.vendor_hint) out += "Vendor hint: " + *ranked.vendor_hint + "\n";
    if (ranked.version_hint) out += "Version hint: " + *ranked.version_hint + "\n";
    out += "\n## Validation notes\n";
    for (std::size_t i = 0; i < history.size(); ++i)
        out += "Round " + std::to_string(i + 1) + " (" + std::string(to_string(history[i].decision)) +
               "): " + history[i].reasons + "\n";
    if (history.empty()) out += "(none)\n";
    return out;
}

std::string select_candidates_message(const std::string& tree_text) {
    return "## Directory listing\n" + tree_text;
}

} // namespace sca::agents
