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

#include "sca/evidence/strings.hpp"

#include "sca/core/error.hpp"
#include "sca/core/text.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <unordered_set>

namespace sca::evidence {

void StringExtractionConfig::validate() const {
    if (min_run_length < 1) throw InvariantViolation("min_run_length must be at least 1");
    if (min_keep_length < min_run_length) throw InvariantViolation("min_keep_length must be >= min_run_length");
    if (max_strings_to_llm < 1) throw InvariantViolation("max_strings_to_llm must be at least 1");
}

std::vector<std::string> extract_printable_runs(std::span<const std::byte> bytes, const StringExtractionConfig& cfg) {
    std::vector<std::string> runs;
    std::size_t start = 0;
    const std::size_t n = bytes.size();
    for (std::size_t i = 0; i <= n; ++i) {
        const bool printable = i < n && text::is_printable(std::to_integer<unsigned char>(bytes[i]));
        if (printable) continue;
        if (i - start >= cfg.min_run_length) {
            runs.emplace_back(reinterpret_cast<const char*>(bytes.data()) + start, i - start);
        }
        start = i + 1;
    }
    return runs;
}

namespace {

bool has_dotted_number(const std::string& s) {
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        if (s[i] == '.' && std::isdigit(static_cast<unsigned char>(s[i - 1])) &&
            std::isdigit(static_cast<unsigned char>(s[i + 1])))
            return true;
    }
    return false;
}

} // namespace

int priority_class(const std::string& s) {
    const std::string low = text::to_lower(s);
    if (low.find("http") != std::string::npos || low.find("www.") != std::string::npos) return 1;
    if (has_dotted_number(s)) return 2;
    for (const char* word : {"version", "copyright", "library", "(c)"})
        if (low.find(word) != std::string::npos) return 3;
    return 4;
}

std::vector<std::string> filter_and_prioritize(const std::vector<std::string>& runs, const StringExtractionConfig& cfg) {
    std::vector<std::string> classes[4];
    std::unordered_set<std::string> seen;
    for (const auto& s : runs) {
        if (s.size() < cfg.min_keep_length || !text::all_printable(s)) continue;
        if (seen.insert(s).second) classes[priority_class(s) - 1].push_back(s);
    }
    std::vector<std::string> kept;
    for (auto& bucket : classes) {
        for (auto& s : bucket) {
            if (kept.size() == cfg.max_strings_to_llm) return kept;
            kept.push_back(std::move(s));
        }
    }
    return kept;
}

std::string so_name_hint(const std::filesystem::path& path) {
    std::string name = path.filename().string();
    // strip ".so" plus any trailing ".N" version components
    for (auto pos = name.find(".so"); pos != std::string::npos; pos = name.find(".so", pos + 1)) {
        std::string_view tail = std::string_view(name).substr(pos + 3);
        bool versioned = true;
        while (!tail.empty()) {
            if (tail.front() != '.' || tail.size() < 2 || !std::isdigit(static_cast<unsigned char>(tail[1]))) {
                versioned = false;
                break;
            }
            tail.remove_prefix(1);
            while (!tail.empty() && std::isdigit(static_cast<unsigned char>(tail.front()))) tail.remove_prefix(1);
        }
        if (versioned && pos > 0) {
            name.resize(pos);
            break;
        }
    }
    if (name.size() > 3 && name.rfind("lib", 0) == 0) name = name.substr(3);
    return name;
}

Evidence extract_so_evidence(const std::filesystem::path& path, const StringExtractionConfig& cfg) {
    cfg.validate();
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failed for " + path.string());

    Evidence ev;
    ev.kind = EvidenceKind::ElfSharedObject;
    ev.name_hint = so_name_hint(path);
    ev.origin_artifact = path;
    ev.limits.min_string_length = cfg.min_keep_length;
    ev.strings = filter_and_prioritize(extract_printable_runs(std::as_bytes(std::span(raw)), cfg), cfg);
    ev.empty_evidence = ev.strings.empty();
    if (ev.empty_evidence) ev.notes.push_back("no strings of length >= " + std::to_string(cfg.min_keep_length));
    ev.validate();
    return ev;
}

} // namespace sca::evidence
