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

#include "sca/evidence/source.hpp"

#include "sca/agents/render.hpp"
#include "sca/core/error.hpp"
#include "sca/core/text.hpp"

#include <fstream>
#include <set>

namespace fs = std::filesystem;

namespace sca::evidence {

using json = nlohmann::json;

namespace {

std::string clean_relative(std::string p) {
    p = text::trim(p);
    while (p.rfind("./", 0) == 0) p.erase(0, 2);
    while (!p.empty() && p.front() == '/') p.erase(0, 1);
    while (!p.empty() && p.back() == '/') p.pop_back();
    return p;
}

std::string parent_of(const std::string& rel) {
    const auto slash = rel.rfind('/');
    return slash == std::string::npos ? std::string() : rel.substr(0, slash);
}

std::string common_directory(const std::vector<std::string>& files) {
    std::string common = parent_of(files.front());
    for (const auto& f : files) {
        while (!common.empty() && f.rfind(common + "/", 0) != 0) common = parent_of(common);
    }
    return common;
}

} // namespace

void TplCandidate::validate() const {
    if (name.empty()) throw InvariantViolation("candidate without a name");
    if (files_to_inspect.empty() || files_to_inspect.size() > kMaxFilesToInspect)
        throw InvariantViolation("candidate '" + name + "' must list 1..5 files");
}

agents::AgentReply<std::vector<TplCandidate>> select_tpl_candidates(const std::string& tree_text,
                                                                    backends::ChatBackend& llm,
                                                                    const std::string& session_id) {
    if (tree_text.empty()) throw InvariantViolation("select_tpl_candidates needs a tree dump");
    const auto listing = parse_tree_listing(tree_text);
    auto req = agents::make_request(agents::AgentKind::SelectCandidates, session_id,
                                    agents::select_candidates_message(tree_text));
    return agents::call_structured(llm, std::move(req), [&](const json& j, int) {
        if (!j.contains("candidates") || !j["candidates"].is_array())
            throw AgentParseError("\"candidates\" must be an array");
        std::vector<TplCandidate> out;
        for (const auto& item : j["candidates"]) {
            if (!item.is_object()) throw AgentParseError("candidates must be objects");
            TplCandidate c;
            c.name = text::trim(item.value("name", ""));
            c.root_path = clean_relative(item.value("root_path", ""));
            c.agent_rationale = text::trim(item.value("rationale", ""));
            if (c.name.empty()) continue;
            std::set<std::string> seen;
            if (item.contains("files") && item["files"].is_array()) {
                for (const auto& f : item["files"]) {
                    if (!f.is_string()) continue;
                    std::string rel = clean_relative(f.get<std::string>());
                    if (!listing.files.count(rel) && !c.root_path.empty() &&
                        listing.files.count(c.root_path + "/" + rel))
                        rel = c.root_path + "/" + rel;
                    if (!listing.files.count(rel) || !seen.insert(rel).second) continue;
                    if (c.files_to_inspect.size() < kMaxFilesToInspect) c.files_to_inspect.push_back(rel);
                }
            }
            if (c.files_to_inspect.empty()) continue;
            if (!listing.directories.count(c.root_path)) c.root_path = common_directory(c.files_to_inspect);
            c.validate();
            out.push_back(std::move(c));
        }
        return out;
    });
}

Evidence extract_source_evidence(const fs::path& project_root, const TplCandidate& candidate,
                                 const TreeDumpConfig& cfg) {
    cfg.validate();
    candidate.validate();
    Evidence ev;
    ev.kind = EvidenceKind::CppSourceClone;
    ev.name_hint = candidate.name;
    ev.origin_artifact = project_root;
    ev.limits.excerpt_byte_cap = cfg.per_file_byte_cap;

    const fs::path subtree = candidate.root_path.empty() ? project_root : project_root / candidate.root_path;
    ev.tree_text = dump_tree(subtree, cfg, candidate.root_path.empty() ? "." : candidate.root_path);

    for (const auto& rel : candidate.files_to_inspect) {
        std::ifstream in(project_root / rel, std::ios::binary);
        std::error_code ec;
        if (!in || fs::is_directory(project_root / rel, ec)) {
            ev.notes.push_back("skipped " + rel + ": unreadable");
            continue;
        }
        // one extra UTF-8 sequence worth of bytes tells us whether we cut
        std::string buf(cfg.per_file_byte_cap + 4, '\0');
        in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
        if (in.bad()) {
            ev.notes.push_back("skipped " + rel + ": read error");
            continue;
        }
        buf.resize(static_cast<std::size_t>(in.gcount()));
        FileExcerpt ex;
        ex.relative_path = rel;
        ex.content = std::string(text::utf8_prefix(buf, cfg.per_file_byte_cap));
        ex.truncated = ex.content.size() < buf.size();
        ev.file_excerpts.push_back(std::move(ex));
    }
    ev.empty_evidence = ev.file_excerpts.empty();
    ev.validate();
    return ev;
}

} // namespace sca::evidence
