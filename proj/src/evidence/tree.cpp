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

#include "sca/evidence/tree.hpp"

#include "sca/core/error.hpp"

#include <algorithm>
#include <vector>

namespace fs = std::filesystem;

namespace sca::evidence {
namespace {

constexpr std::string_view kTee = "\xE2\x94\x9C\xE2\x94\x80\xE2\x94\x80 ";   // "├── "
constexpr std::string_view kElbow = "\xE2\x94\x94\xE2\x94\x80\xE2\x94\x80 "; // "└── "
constexpr std::string_view kPipe = "\xE2\x94\x82   ";                       // "│   "
constexpr std::string_view kBlank = "    ";

struct Child {
    std::string name;
    fs::path path;
    bool is_dir;
};

std::vector<Child> list_children(const fs::path& dir, const TreeDumpConfig& cfg) {
    std::vector<Child> out;
    std::error_code ec;
    fs::directory_iterator it(dir, ec), end;
    for (; !ec && it != end; it.increment(ec)) {
        const auto name = it->path().filename().string();
        if (name.empty() || name.front() == '.') continue;
        std::error_code sec;
        const auto st = it->symlink_status(sec);
        if (sec) continue;
        const bool dir_entry = fs::is_directory(st);
        if (!dir_entry && !cfg.wants_file(name)) continue;
        out.push_back({name, it->path(), dir_entry});
    }
    std::sort(out.begin(), out.end(), [](const Child& a, const Child& b) { return a.name < b.name; });
    return out;
}

class Dumper {
public:
    Dumper(const TreeDumpConfig& cfg, std::string& out) : cfg_(cfg), out_(out) {}

    // Returns false once the entry cap stopped the walk.
    bool walk(const fs::path& dir, std::size_t depth, const std::string& prefix) {
        const auto children = list_children(dir, cfg_);
        for (std::size_t i = 0; i < children.size(); ++i) {
            if (emitted_ == cfg_.max_entries) {
                truncated_ = true;
                return false;
            }
            const bool last = i + 1 == children.size();
            const auto& c = children[i];
            out_ += prefix;
            out_ += last ? kElbow : kTee;
            out_ += c.name;
            if (c.is_dir) out_ += '/';
            out_ += '\n';
            ++emitted_;
            if (c.is_dir && depth < cfg_.max_depth) {
                if (!walk(c.path, depth + 1, prefix + std::string(last ? kBlank : kPipe))) return false;
            }
        }
        return true;
    }

    bool truncated() const { return truncated_; }

private:
    const TreeDumpConfig& cfg_;
    std::string& out_;
    std::size_t emitted_ = 0;
    bool truncated_ = false;
};

} // namespace

void TreeDumpConfig::validate() const {
    if (max_depth < 1) throw InvariantViolation("tree max_depth must be at least 1");
    if (per_file_byte_cap < 256) throw InvariantViolation("per_file_byte_cap must be at least 256");
}

bool TreeDumpConfig::wants_file(const std::string& filename) const {
    if (filename == "LICENSE" || filename == "COPYING" || filename.rfind("README", 0) == 0) return true;
    const auto dot = filename.rfind('.');
    if (dot == std::string::npos || dot == 0) return false;
    return include_extensions.count(filename.substr(dot)) > 0;
}

std::string dump_tree(const fs::path& root, const TreeDumpConfig& cfg, std::string_view root_label) {
    cfg.validate();
    std::error_code ec;
    if (!fs::is_directory(root, ec)) throw IoError("not a directory: " + root.string());
    fs::directory_iterator probe(root, ec);
    if (ec) throw IoError("cannot read directory " + root.string() + ": " + ec.message());

    std::string out(root_label);
    out += '\n';
    Dumper d(cfg, out);
    d.walk(root, 1, "");
    if (d.truncated()) {
        out += kTreeTruncationPrefix;
        out += std::to_string(cfg.max_entries) + " entries]\n";
    }
    return out;
}

TreeListing parse_tree_listing(std::string_view tree_text) {
    TreeListing listing;
    std::vector<std::string> stack; // directory names by depth
    bool first = true;
    while (!tree_text.empty()) {
        const auto nl = tree_text.find('\n');
        std::string_view line = tree_text.substr(0, nl);
        tree_text = nl == std::string_view::npos ? std::string_view{} : tree_text.substr(nl + 1);
        if (first) {
            first = false;
            continue;
        }
        std::size_t depth = 0;
        while (true) {
            if (line.substr(0, kPipe.size()) == kPipe) line.remove_prefix(kPipe.size());
            else if (line.substr(0, kBlank.size()) == kBlank) line.remove_prefix(kBlank.size());
            else break;
            ++depth;
        }
        if (line.substr(0, kTee.size()) == kTee) line.remove_prefix(kTee.size());
        else if (line.substr(0, kElbow.size()) == kElbow) line.remove_prefix(kElbow.size());
        else continue; // root, marker or foreign line
        const bool is_dir = !line.empty() && line.back() == '/';
        if (is_dir) line.remove_suffix(1);
        if (line.empty()) continue;
        stack.resize(std::min(stack.size(), depth));
        if (stack.size() < depth) continue; // malformed indentation
        std::string rel;
        for (const auto& s : stack) rel += s + "/";
        rel += line;
        if (is_dir) {
            listing.directories.insert(rel);
            stack.emplace_back(line);
        } else {
            listing.files.insert(rel);
        }
    }
    return listing;
}

} // namespace sca::evidence
