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

#include "support/support.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace fs = std::filesystem;

namespace sca::test {

fs::path source_dir() { return SCA_SOURCE_DIR; }
fs::path fixtures_dir() { return source_dir() / "fixtures"; }
fs::path cassettes_dir() { return source_dir() / "cassettes"; }

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& p, const std::string& content) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << content;
}

TempDir::TempDir() {
    static std::atomic<int> counter{0};
    std::random_device rd;
    path_ = fs::temp_directory_path() /
            ("sca-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    fs::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
}

backends::Backends replay_backends(const fs::path& cassette) {
    std::shared_ptr<const backends::Cassette> c = backends::Cassette::load(cassette);
    return {std::make_shared<backends::ReplayChat>(c), std::make_shared<backends::ReplaySearch>(c),
            std::make_shared<backends::ReplayFetch>(c)};
}

std::vector<std::string> oracle_printable_runs(const std::vector<std::byte>& bytes, std::size_t min_run) {
    auto printable = [](std::byte b) {
        const auto v = std::to_integer<int>(b);
        return v >= 32 && v <= 126;
    };
    std::vector<std::string> out;
    auto it = bytes.begin();
    while (it != bytes.end()) {
        auto first = std::find_if(it, bytes.end(), printable);
        auto last = std::find_if_not(first, bytes.end(), printable);
        if (static_cast<std::size_t>(last - first) >= min_run) {
            std::string s;
            for (auto p = first; p != last; ++p) s.push_back(static_cast<char>(std::to_integer<int>(*p)));
            out.push_back(std::move(s));
        }
        it = last;
    }
    return out;
}

std::string oracle_tree(const fs::path& root, const evidence::TreeDumpConfig& cfg, const std::string& label) {
    struct Entry {
        std::vector<std::string> parts;
        bool dir;
    };
    std::vector<Entry> entries;
    for (auto it = fs::recursive_directory_iterator(root); it != fs::recursive_directory_iterator(); ++it) {
        const auto name = it->path().filename().string();
        const auto depth = static_cast<std::size_t>(it.depth()) + 1;
        const bool dir = it->is_directory() && !it->is_symlink();
        if (name.front() == '.') {
            if (dir) it.disable_recursion_pending();
            continue;
        }
        if (dir && depth >= cfg.max_depth) it.disable_recursion_pending();
        if (!dir && !cfg.wants_file(name)) continue;
        Entry e{{}, dir};
        for (const auto& part : fs::relative(it->path(), root)) e.parts.push_back(part.string());
        entries.push_back(std::move(e));
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.parts < b.parts; });

    // last child name per parent path
    std::map<std::vector<std::string>, std::string> last_child;
    for (const auto& e : entries) {
        std::vector<std::string> parent(e.parts.begin(), e.parts.end() - 1);
        auto& cur = last_child[parent];
        if (cur.empty() || e.parts.back() > cur) cur = e.parts.back();
    }
    auto is_last = [&](const std::vector<std::string>& parts) {
        std::vector<std::string> parent(parts.begin(), parts.end() - 1);
        return last_child.at(parent) == parts.back();
    };

    std::string out = label + "\n";
    std::size_t emitted = 0;
    for (const auto& e : entries) {
        if (emitted == cfg.max_entries) {
            out += "[truncated after " + std::to_string(cfg.max_entries) + " entries]\n";
            break;
        }
        for (std::size_t k = 1; k < e.parts.size(); ++k) {
            std::vector<std::string> ancestor(e.parts.begin(), e.parts.begin() + static_cast<std::ptrdiff_t>(k));
            out += is_last(ancestor) ? "    " : "│   ";
        }
        out += is_last(e.parts) ? "└── " : "├── ";
        out += e.parts.back();
        if (e.dir) out += "/";
        out += "\n";
        ++emitted;
    }
    return out;
}

std::string random_printable(std::mt19937& rng, std::size_t len) {
    std::uniform_int_distribution<int> ch(0x20, 0x7E);
    std::string s;
    for (std::size_t i = 0; i < len; ++i) s.push_back(static_cast<char>(ch(rng)));
    return s;
}

std::vector<fixtures::PlantedString> random_plan(std::mt19937& rng, std::size_t count, std::size_t size,
                                                 std::size_t min_len, std::size_t max_len) {
    // split [0, size) into `count` equal slots and place one string at a random spot in each
    std::vector<fixtures::PlantedString> plan;
    if (count == 0) return plan;
    const std::size_t slot = size / count;
    std::uniform_int_distribution<std::size_t> len_dist(min_len, std::min(max_len, slot - 1));
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t len = len_dist(rng);
        std::uniform_int_distribution<std::size_t> off(0, slot - len - 1);
        plan.push_back({i * slot + off(rng), random_printable(rng, len)});
    }
    return plan;
}

void random_tree(const fs::path& root, std::mt19937& rng, int depth, int& budget) {
    const std::vector<std::string> exts = {".c", ".h", ".hpp", ".md", ".o", ".txt", ".bin", ""};
    const int n = static_cast<int>(rng() % 6);
    for (int i = 0; i < n && budget > 0; ++i, --budget) {
        const bool dir = depth < 6 && rng() % 3 == 0;
        std::string name = std::string(1, static_cast<char>('a' + rng() % 26)) + std::to_string(rng() % 50);
        if (rng() % 9 == 0) name = "." + name;
        if (rng() % 11 == 0) name = "README";
        if (rng() % 13 == 0) name = "Z_" + name;
        if (!dir) name += exts[rng() % exts.size()];
        if (fs::exists(root / name)) continue;
        if (dir) {
            fs::create_directories(root / name);
            random_tree(root / name, rng, depth + 1, budget);
        } else {
            write_file(root / name, "x");
        }
    }
}

} // namespace sca::test
