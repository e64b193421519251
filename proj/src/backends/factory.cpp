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

#include "sca/backends/factory.hpp"

#include "sca/backends/live.hpp"
#include "sca/core/clock.hpp"
#include "sca/core/error.hpp"

#include <cstdlib>

namespace sca::backends {

std::optional<BackendMode> parse_backend_mode(std::string_view s) {
    if (s == "live") return BackendMode::Live;
    if (s == "record") return BackendMode::Record;
    if (s == "replay") return BackendMode::Replay;
    return std::nullopt;
}

std::optional<std::string> process_env(const char* name) {
    const char* v = std::getenv(name);
    if (!v || !*v) return std::nullopt;
    return std::string(v);
}

void BackendSession::finish() const {
    if (mode == BackendMode::Record && cassette && cassette_path) cassette->save(*cassette_path);
}

namespace {

Backends live_backends(const BackendOptions& opts, const EnvLookup& env) {
    std::string missing;
    for (const char* var : {"LLM_API_KEY", "SEARCH_API_KEY"}) {
        if (!env(var)) missing += missing.empty() ? var : std::string(", ") + var;
    }
    if (!missing.empty()) throw UsageError("live backend requires environment variable(s): " + missing);

    ChatApiConfig chat;
    chat.api_key = *env("LLM_API_KEY");
    if (auto base = env("LLM_API_BASE")) chat.api_base = *base;
    if (auto model = env("LLM_MODEL")) chat.model = *model;

    SearchApiConfig search;
    search.api_key = *env("SEARCH_API_KEY");
    if (auto base = env("SEARCH_API_BASE")) search.api_base = *base;

    Backends b;
    b.llm = std::make_shared<RetryingChat>(std::make_shared<OpenAiChat>(chat), opts.retry);
    b.search = std::make_shared<RetryingSearch>(std::make_shared<JsonSearch>(search), opts.retry);
    b.fetch = std::make_shared<HttpFetcher>();
    return b;
}

} // namespace

BackendSession open_backends(const BackendOptions& opts, const EnvLookup& env) {
    BackendSession s;
    s.mode = opts.mode;
    s.cassette_path = opts.cassette_path;
    switch (opts.mode) {
    case BackendMode::Replay: {
        if (!opts.cassette_path) throw UsageError("--backend replay requires --cassette <file>");
        s.cassette = Cassette::load(*opts.cassette_path);
        s.backends.llm = std::make_shared<ReplayChat>(s.cassette);
        s.backends.search = std::make_shared<ReplaySearch>(s.cassette);
        s.backends.fetch = std::make_shared<ReplayFetch>(s.cassette);
        break;
    }
    case BackendMode::Live:
        s.backends = live_backends(opts, env);
        break;
    case BackendMode::Record: {
        if (!opts.cassette_path) throw UsageError("--backend record requires --cassette <file>");
        auto live = live_backends(opts, env);
        std::error_code ec;
        if (std::filesystem::exists(*opts.cassette_path, ec)) {
            s.cassette = Cassette::load(*opts.cassette_path);
        } else {
            s.cassette = std::make_shared<Cassette>();
            s.cassette->tool_version = opts.tool_version;
            s.cassette->created_at = format_utc(SystemClock().now_utc());
        }
        s.backends.llm = std::make_shared<RecordingChat>(live.llm, s.cassette);
        s.backends.search = std::make_shared<RecordingSearch>(live.search, s.cassette);
        s.backends.fetch = std::make_shared<RecordingFetch>(live.fetch, s.cassette);
        break;
    }
    }
    return s;
}

} // namespace sca::backends
