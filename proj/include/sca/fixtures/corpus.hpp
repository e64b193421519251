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

#include "sca/backends/backend.hpp"
#include "sca/fixtures/fixture_so.hpp"
#include "sca/fixtures/scripted.hpp"

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace sca::fixtures {

/// The shipped scenarios, answered by scripted services:
///  - glad: an OpenGL loader SO whose origin is found in the first round
///  - semver: a vendored C library where the only prominent result
///    (semver.com) is rejected in all three rounds, leaving hints
///  - tinyexpr: an SO whose search provider is down
struct Corpus {
    std::shared_ptr<ScriptedChat> chat;
    std::shared_ptr<ScriptedSearch> search;
    std::shared_ptr<ScriptedFetch> fetch;

    backends::Backends backends() const { return {chat, search, fetch}; }
};

Corpus make_corpus();

inline constexpr std::string_view kGladOrigin = "https://github.com/Dav1dde/glad";
inline constexpr std::string_view kSemverOrigin = "https://github.com/h2non/semver.c";
inline constexpr std::string_view kSemverDocsSite = "https://semver.com/";
inline constexpr std::string_view kCassetteCreatedAt = "2026-01-01T00:00:00Z";

std::vector<PlantedString> glad_so_spec();
std::vector<PlantedString> tinyexpr_so_spec();

struct SourceFile {
    std::string path; // relative to the project root
    std::string content;
};
std::vector<SourceFile> demo_project_files();

/// The three-case manifest, with paths relative to the fixtures directory.
std::string eval_manifest_json();

/// Writes so/, project/ and cases.json under `fixtures_dir`.
void write_fixture_tree(const std::filesystem::path& fixtures_dir);

/// Runs each scenario against the fixture tree through recording backends
/// and writes glad.json, semver.json, tinyexpr.json and eval.json into
/// `cassette_dir`.
void write_cassettes(const std::filesystem::path& fixtures_dir, const std::filesystem::path& cassette_dir);

} // namespace sca::fixtures
