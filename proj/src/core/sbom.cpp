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

#include "sca/core/sbom.hpp"

#include "sca/core/error.hpp"

#include <json.hpp>

namespace sca {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr const char* kStatus = "sca:status";
constexpr const char* kFailure = "sca:failure_reason";
constexpr const char* kIterations = "sca:iterations_used";
constexpr const char* kTokens = "sca:token_usage";
constexpr const char* kVendor = "sca:evidence:vendor_hint";
constexpr const char* kVersion = "sca:evidence:version_hint";

ordered_json property(const char* name, std::string_view value) {
    return ordered_json{{"name", name}, {"value", value}};
}

ordered_json component_json(const SbomComponent& c) {
    ordered_json j;
    j["type"] = "library";
    j["name"] = c.name;
    if (c.description) j["description"] = *c.description;
    if (c.website) j["externalReferences"] = ordered_json::array({{{"type", "website"}, {"url", *c.website}}});

    auto props = ordered_json::array();
    props.push_back(property(kStatus, to_string(c.status)));
    if (c.failure_reason) props.push_back(property(kFailure, to_string(*c.failure_reason)));
    props.push_back(property(kIterations, std::to_string(c.iterations_used)));
    props.push_back(property(kTokens, std::to_string(c.token_usage)));
    if (c.vendor_hint) props.push_back(property(kVendor, *c.vendor_hint));
    if (c.version_hint) props.push_back(property(kVersion, *c.version_hint));
    j["properties"] = std::move(props);
    return j;
}

SbomComponent component_from_json(const ordered_json& j) {
    SbomComponent c;
    c.name = j.at("name").get<std::string>();
    if (j.contains("description")) c.description = j["description"].get<std::string>();
    if (j.contains("externalReferences")) {
        for (const auto& ref : j["externalReferences"])
            if (ref.at("type") == "website") c.website = ref.at("url").get<std::string>();
    }
    bool have_status = false;
    for (const auto& p : j.at("properties")) {
        const auto name = p.at("name").get<std::string>();
        const auto value = p.at("value").get<std::string>();
        if (name == kStatus) {
            auto s = parse_report_status(value);
            if (!s) throw Error("sbom: unknown status '" + value + "'");
            c.status = *s;
            have_status = true;
        } else if (name == kFailure) {
            auto f = parse_failure_reason(value);
            if (!f) throw Error("sbom: unknown failure reason '" + value + "'");
            c.failure_reason = *f;
        } else if (name == kIterations) {
            c.iterations_used = std::stoi(value);
        } else if (name == kTokens) {
            c.token_usage = std::stoull(value);
        } else if (name == kVendor) {
            c.vendor_hint = value;
        } else if (name == kVersion) {
            c.version_hint = value;
        }
    }
    if (!have_status) throw Error("sbom: component '" + c.name + "' has no status property");
    return c;
}

} // namespace

SbomComponent SbomComponent::from_report(const LibraryReport& r) {
    SbomComponent c;
    c.name = r.name;
    c.description = r.description;
    c.website = r.origin_url;
    c.vendor_hint = r.vendor_hint;
    c.version_hint = r.version_hint;
    c.status = r.status;
    c.failure_reason = r.failure_reason;
    c.iterations_used = r.iterations_used;
    c.token_usage = r.token_usage;
    return c;
}

std::string serialize_sbom(const SbomDocument& doc) {
    ordered_json j;
    j["bomFormat"] = "CycloneDX";
    j["specVersion"] = "1.5";
    j["version"] = 1;
    j["metadata"] = {
        {"timestamp", format_utc(doc.generated_at)},
        {"tools",
         {{"components",
           ordered_json::array(
               {{{"type", "application"}, {"name", doc.tool_name}, {"version", doc.tool_version}}})}}},
    };
    auto comps = ordered_json::array();
    for (const auto& c : doc.components) comps.push_back(component_json(c));
    j["components"] = std::move(comps);
    return j.dump(2, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
}

SbomDocument parse_sbom(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("sbom: invalid JSON: ") + e.what());
    }
    try {
        if (j.at("bomFormat") != "CycloneDX") throw Error("sbom: bomFormat is not CycloneDX");
        SbomDocument doc;
        const auto& meta = j.at("metadata");
        auto ts = parse_utc(meta.at("timestamp").get<std::string>());
        if (!ts) throw Error("sbom: bad timestamp");
        doc.generated_at = *ts;
        const auto& tool = meta.at("tools").at("components").at(0);
        doc.tool_name = tool.at("name").get<std::string>();
        doc.tool_version = tool.at("version").get<std::string>();
        for (const auto& c : j.at("components")) doc.components.push_back(component_from_json(c));
        return doc;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("sbom: schema mismatch: ") + e.what());
    }
}

} // namespace sca
