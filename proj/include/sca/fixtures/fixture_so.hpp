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
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace sca::fixtures {

struct PlantedString {
    std::size_t offset = 0;
    std::string text; // printable ASCII only
};

/// Bytes holding each planted string at its offset, every other byte
/// non-printable, so printable-run extraction recovers exactly the planted
/// strings. The result is at least `min_size` bytes and always ends in a
/// filler byte. Throws OverlapError when strings overlap or touch, and
/// InvariantViolation on a non-printable planted string.
std::vector<std::byte> build_fixture_bytes(std::vector<PlantedString> spec, std::size_t min_size = 0);

/// The planted strings in file order.
std::vector<std::string> planted_manifest(std::vector<PlantedString> spec);

/// Writes the bytes to `path` and the manifest to `path` + ".manifest.json".
void write_fixture_so(const std::filesystem::path& path, const std::vector<PlantedString>& spec,
                      std::size_t min_size = 0);

} // namespace sca::fixtures
