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

#include <cstddef>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>

namespace sca::evidence {

struct TreeDumpConfig {
    std::size_t max_depth = 4;
    std::set<std::string> include_extensions{".c", ".cc", ".cpp", ".h", ".hpp", ".txt", ".md", ".cmake"};
    std::size_t max_entries = 2000;
    std::size_t per_file_byte_cap = 8192;

    void validate() const;
    /// Extension filter plus LICENSE, COPYING and README* by name.
    bool wants_file(const std::string& filename) const;
};

inline constexpr std::string_view kTreeTruncationPrefix = "[truncated after ";

/// `tree`-style listing. The first line is `root_label`; each following line
/// is one entry, siblings sorted bytewise, directories suffixed with '/'.
/// Hidden entries (leading '.') are skipped and symlinks are not followed.
/// Directories are always listed; files only when cfg.wants_file() accepts
/// them. Entries deeper than max_depth are omitted. After max_entries entry
/// lines a single "[truncated after N entries]" line ends the listing.
/// Throws IoError when `root` is not a readable directory.
std::string dump_tree(const std::filesystem::path& root, const TreeDumpConfig& cfg, std::string_view root_label = ".");

struct TreeListing {
    std::set<std::string> files;
    std::set<std::string> directories;
};

/// Recovers root-relative paths ("vendor/semver/semver.c") from a listing
/// produced by dump_tree.
TreeListing parse_tree_listing(std::string_view tree_text);

} // namespace sca::evidence
