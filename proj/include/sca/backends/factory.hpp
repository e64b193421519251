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
#include "sca/backends/cassette.hpp"
#include "sca/backends/retry.hpp"

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace sca::backends {

enum class BackendMode { Live, Record, Replay };

std::optional<BackendMode> parse_backend_mode(std::string_view s);

using EnvLookup = std::function<std::optional<std::string>(const char*)>;

/// Reads the real process environment.
std::optional<std::string> process_env(const char* name);

struct BackendOptions {
    BackendMode mode = BackendMode::Replay;
    std::optional<std::filesystem::path> cassette_path;
    RetryPolicy retry;
    std::string tool_version;
};

/// Backends plus the cassette they feed, for modes that have one.
struct BackendSession {
    BackendMode mode = BackendMode::Replay;
    Backends backends;
    std::shared_ptr<Cassette> cassette;
    std::optional<std::filesystem::path> cassette_path;

    /// Writes the cassette back in record mode; no-op otherwise.
    void finish() const;
};

/// Builds the backend stack for a mode.
///  - replay: cassette lookups only; no network client is constructed
///  - live:   LLM_API_KEY and SEARCH_API_KEY must be set; LLM_API_BASE,
///            LLM_MODEL and SEARCH_API_BASE are optional overrides
///  - record: live, with every outcome appended to the cassette (an existing
///            file is extended)
/// Throws UsageError naming the missing variable or flag.
BackendSession open_backends(const BackendOptions& opts, const EnvLookup& env = process_env);

} // namespace sca::backends
