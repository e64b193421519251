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

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace sca {

using UtcTime = std::chrono::sys_seconds;

class Clock {
public:
    virtual ~Clock() = default;
    virtual UtcTime now_utc() const = 0;
    /// Monotonic reading used for wall-time accounting.
    virtual std::chrono::milliseconds elapsed() const = 0;
};

class SystemClock final : public Clock {
public:
    UtcTime now_utc() const override;
    std::chrono::milliseconds elapsed() const override;
};

/// Frozen clock: constant timestamp, zero elapsed time.
class FixedClock final : public Clock {
public:
    explicit FixedClock(UtcTime t) : t_(t) {}
    UtcTime now_utc() const override { return t_; }
    std::chrono::milliseconds elapsed() const override { return std::chrono::milliseconds{0}; }

private:
    UtcTime t_;
};

/// "YYYY-MM-DDTHH:MM:SSZ"
std::string format_utc(UtcTime t);
std::optional<UtcTime> parse_utc(std::string_view s);

} // namespace sca
