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

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace sca::evidence {

/// Knobs for `strings`-style harvesting. Printable means 0x20..0x7E.
struct StringExtractionConfig {
    std::size_t min_run_length = 4;
    std::size_t min_keep_length = 10;
    std::size_t max_strings_to_llm = 500;

    void validate() const;
};

/// Every maximal printable run of at least cfg.min_run_length bytes, in file
/// order. Whole-buffer scan; the input need not be an ELF image.
std::vector<std::string> extract_printable_runs(std::span<const std::byte> bytes, const StringExtractionConfig& cfg);

/// Drops short strings, dedupes (first occurrence wins), orders by priority
/// class and caps the list. Classes, most useful first:
///   1. URL-like ("http" or "www.")
///   2. version-like (digits '.' digits)
///   3. mentions version / copyright / library / (c)
///   4. everything else
/// Order inside a class is input order.
std::vector<std::string> filter_and_prioritize(const std::vector<std::string>& runs, const StringExtractionConfig& cfg);

/// Priority class (1..4) used by filter_and_prioritize.
int priority_class(const std::string& s);

/// "libcrypto.so.1.1" -> "crypto", "libglad.so" -> "glad".
std::string so_name_hint(const std::filesystem::path& path);

/// Reads the whole file and builds shared-object evidence. Throws IoError.
/// An empty string list sets Evidence::empty_evidence.
Evidence extract_so_evidence(const std::filesystem::path& path, const StringExtractionConfig& cfg);

} // namespace sca::evidence
