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

#include <optional>
#include <string>
#include <string_view>

namespace sca {

struct UrlParts {
    std::string scheme;
    std::string host;
    std::optional<int> port;
    std::string path;  // starts with '/' or is empty
    std::string query; // without '?'
    std::string fragment;
};

/// Splits an absolute http(s) URL. Returns nullopt for anything else.
std::optional<UrlParts> parse_http_url(std::string_view raw);

bool is_http_url(std::string_view raw);

/// Canonical form used for dedupe, cassette keys and ground-truth matching:
/// lowercase scheme, host and path, no "www." prefix, no default port,
/// no fragment, no trailing slash. Idempotent. Throws MalformedUrl.
std::string normalize_url(std::string_view raw);

} // namespace sca
