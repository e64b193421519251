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

#include "sca/core/clock.hpp"
#include "sca/core/model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sca {

/// One library as it appears in the bill of materials.
struct SbomComponent {
    std::string name;
    std::optional<std::string> description;
    std::optional<std::string> website;
    std::optional<std::string> vendor_hint;
    std::optional<std::string> version_hint;
    ReportStatus status = ReportStatus::Failed;
    std::optional<FailureReason> failure_reason;
    int iterations_used = 0;
    std::uint64_t token_usage = 0;

    static SbomComponent from_report(const LibraryReport& r);
    bool operator==(const SbomComponent&) const = default;
};

struct SbomDocument {
    std::string tool_name = "sca";
    std::string tool_version;
    UtcTime generated_at{};
    std::vector<SbomComponent> components;

    bool operator==(const SbomDocument&) const = default;
};

/// Deterministic CycloneDX-compatible JSON, two-space indented, trailing newline.
std::string serialize_sbom(const SbomDocument& doc);

/// Inverse of serialize_sbom. Throws sca::Error on schema mismatch.
SbomDocument parse_sbom(const std::string& json_text);

} // namespace sca
