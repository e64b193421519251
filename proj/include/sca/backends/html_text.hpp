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
#include <string>
#include <string_view>

namespace sca::backends {

inline constexpr std::size_t kDefaultPageTextCap = 16384;
inline constexpr std::string_view kTruncationMarker = "\n[truncated]";

/// Reduces an HTML document to its visible text.
///
/// Rules, applied in one pass:
///  - comments, doctype and processing instructions vanish
///  - the contents of script, style, noscript, template, svg, head, nav,
///    header, footer, aside, form, iframe and select are dropped
///  - block-level tags (p, div, li, h1..h6, tr, br, section, article, ...)
///    become line breaks
///  - the common named entities and all numeric entities are decoded
///  - runs of spaces and tabs collapse to one space, lines are trimmed and
///    blank lines are removed
std::string html_to_text(std::string_view html);

/// Collapses whitespace the same way html_to_text does, for text/plain.
std::string normalize_plain_text(std::string_view text);

/// Keeps at most `cap` bytes (on a UTF-8 boundary) and appends
/// kTruncationMarker when anything was cut.
std::string cap_text(std::string text, std::size_t cap = kDefaultPageTextCap);

} // namespace sca::backends
