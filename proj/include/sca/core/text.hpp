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
#include <vector>

namespace sca::text {

inline bool is_printable(unsigned char c) noexcept { return c >= 0x20 && c <= 0x7E; }

bool all_printable(std::string_view s) noexcept;

std::string to_lower(std::string_view s);

bool icontains(std::string_view haystack, std::string_view needle);

std::string trim(std::string_view s);

/// Longest prefix of `s` no longer than `max_bytes` that does not split a
/// UTF-8 sequence.
std::string_view utf8_prefix(std::string_view s, std::size_t max_bytes) noexcept;

/// Prefix holding at most `max_chars` UTF-8 code points.
std::string_view utf8_prefix_chars(std::string_view s, std::size_t max_chars) noexcept;

std::string join(const std::vector<std::string>& parts, std::string_view sep);

} // namespace sca::text
