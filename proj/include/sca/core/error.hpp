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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sca {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value violated a documented type invariant.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

class MalformedUrl : public Error {
public:
    explicit MalformedUrl(const std::string& raw) : Error("malformed URL: '" + raw + "'") {}
};

class IoError : public Error {
public:
    using Error::Error;
};

/// LLM provider failed after the retry budget was spent.
class ProviderError : public Error {
public:
    using Error::Error;
};

class SearchProviderError : public ProviderError {
public:
    using ProviderError::ProviderError;
};

/// Replay mode found no cassette entry for a request.
class ReplayMiss : public Error {
public:
    ReplayMiss(std::string channel, std::string preview)
        : Error("replay miss on channel '" + channel + "': " + preview),
          channel_(std::move(channel)), preview_(std::move(preview)) {}

    const std::string& channel() const noexcept { return channel_; }
    const std::string& preview() const noexcept { return preview_; }

private:
    std::string channel_;
    std::string preview_;
};

/// An agent reply stayed unusable after the repair round. Carries the
/// tokens spent so accounting stays exact.
class AgentParseError : public Error {
public:
    explicit AgentParseError(const std::string& what, std::uint64_t tokens_used = 0)
        : Error(what), tokens_used_(tokens_used) {}

    std::uint64_t tokens_used() const noexcept { return tokens_used_; }

private:
    std::uint64_t tokens_used_;
};

class ManifestError : public Error {
public:
    using Error::Error;
};

class OverlapError : public Error {
public:
    using Error::Error;
};

class UsageError : public Error {
public:
    using Error::Error;
};

} // namespace sca
