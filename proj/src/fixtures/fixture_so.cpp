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

#include "sca/fixtures/fixture_so.hpp"

#include "sca/core/error.hpp"
#include "sca/core/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <fstream>

namespace sca::fixtures {

namespace {

// Every byte outside 0x20..0x7E, cycled so the filler is not a constant run.
const std::vector<std::uint8_t>& filler_alphabet() {
    static const std::vector<std::uint8_t> alphabet = [] {
        std::vector<std::uint8_t> a;
        for (int b = 0; b < 256; ++b)
            if (b < 0x20 || b > 0x7E) a.push_back(static_cast<std::uint8_t>(b));
        return a;
    }();
    return alphabet;
}

void sort_and_check(std::vector<PlantedString>& spec) {
    std::sort(spec.begin(), spec.end(), [](const auto& a, const auto& b) { return a.offset < b.offset; });
    for (std::size_t i = 0; i < spec.size(); ++i) {
        if (spec[i].text.empty() || !text::all_printable(spec[i].text))
            throw InvariantViolation("planted strings must be non-empty printable ASCII");
        if (i > 0 && spec[i].offset <= spec[i - 1].offset + spec[i - 1].text.size())
            throw OverlapError("planted string at offset " + std::to_string(spec[i].offset) +
                               " overlaps or touches the one at offset " + std::to_string(spec[i - 1].offset));
    }
}

} // namespace

std::vector<std::byte> build_fixture_bytes(std::vector<PlantedString> spec, std::size_t min_size) {
    sort_and_check(spec);
    std::size_t size = min_size;
    if (!spec.empty()) size = std::max(size, spec.back().offset + spec.back().text.size() + 1);
    const auto& alphabet = filler_alphabet();
    std::vector<std::byte> bytes(size);
    for (std::size_t i = 0; i < size; ++i) bytes[i] = static_cast<std::byte>(alphabet[(i * 7) % alphabet.size()]);
    for (const auto& p : spec)
        for (std::size_t k = 0; k < p.text.size(); ++k) bytes[p.offset + k] = static_cast<std::byte>(p.text[k]);
    return bytes;
}

std::vector<std::string> planted_manifest(std::vector<PlantedString> spec) {
    sort_and_check(spec);
    std::vector<std::string> out;
    out.reserve(spec.size());
    for (auto& p : spec) out.push_back(std::move(p.text));
    return out;
}

void write_fixture_so(const std::filesystem::path& path, const std::vector<PlantedString>& spec,
                      std::size_t min_size) {
    const auto bytes = build_fixture_bytes(spec, min_size);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("failed writing " + path.string());

    nlohmann::ordered_json manifest;
    manifest["planted"] = planted_manifest(spec);
    std::ofstream m(path.string() + ".manifest.json", std::ios::binary | std::ios::trunc);
    if (!m) throw IoError("cannot write manifest for " + path.string());
    m << manifest.dump(2) << "\n";
}

} // namespace sca::fixtures
