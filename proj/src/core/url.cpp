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

#include "sca/core/url.hpp"

#include "sca/core/error.hpp"

#include <algorithm>
#include <cctype>

namespace sca {
namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool valid_host(std::string_view host) {
    if (host.empty()) return false;
    if (host.front() == '[') return host.back() == ']' && host.size() > 2;
    return std::all_of(host.begin(), host.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '.' || c == '-' || c == '_';
    });
}

} // namespace

std::optional<UrlParts> parse_http_url(std::string_view raw) {
    const auto sep = raw.find("://");
    if (sep == std::string_view::npos) return std::nullopt;

    UrlParts parts;
    parts.scheme = lower(raw.substr(0, sep));
    if (parts.scheme != "http" && parts.scheme != "https") return std::nullopt;

    std::string_view rest = raw.substr(sep + 3);
    if (rest.find_first_of(" \t\r\n") != std::string_view::npos) return std::nullopt;

    if (auto hash = rest.find('#'); hash != std::string_view::npos) {
        parts.fragment = std::string(rest.substr(hash + 1));
        rest = rest.substr(0, hash);
    }
    if (auto q = rest.find('?'); q != std::string_view::npos) {
        parts.query = std::string(rest.substr(q + 1));
        rest = rest.substr(0, q);
    }
    std::string_view authority = rest;
    if (auto slash = rest.find('/'); slash != std::string_view::npos) {
        authority = rest.substr(0, slash);
        parts.path = std::string(rest.substr(slash));
    }
    if (auto at = authority.rfind('@'); at != std::string_view::npos) authority = authority.substr(at + 1);

    std::string_view host = authority;
    const auto colon = authority.rfind(':');
    const bool bracketed = !authority.empty() && authority.front() == '[';
    if (colon != std::string_view::npos && (!bracketed || colon > authority.find(']'))) {
        host = authority.substr(0, colon);
        const auto port_text = authority.substr(colon + 1);
        if (port_text.empty()) {
            // "host:" is tolerated as no port
        } else {
            if (port_text.size() > 5 ||
                !std::all_of(port_text.begin(), port_text.end(), [](unsigned char c) { return std::isdigit(c); }))
                return std::nullopt;
            const int port = std::stoi(std::string(port_text));
            if (port <= 0 || port > 65535) return std::nullopt;
            parts.port = port;
        }
    }
    if (!valid_host(host)) return std::nullopt;
    parts.host = lower(host);
    return parts;
}

bool is_http_url(std::string_view raw) {
    return parse_http_url(raw).has_value();
}

std::string normalize_url(std::string_view raw) {
    auto parts = parse_http_url(raw);
    if (!parts) throw MalformedUrl(std::string(raw));

    std::string host = parts->host;
    while (host.rfind("www.", 0) == 0 && host.size() > 4) host = host.substr(4);

    std::string out = parts->scheme + "://" + host;
    const int default_port = parts->scheme == "https" ? 443 : 80;
    if (parts->port && *parts->port != default_port) out += ":" + std::to_string(*parts->port);

    std::string path = lower(parts->path);
    while (!path.empty() && path.back() == '/') path.pop_back();
    out += path;
    if (!parts->query.empty()) out += "?" + parts->query;
    return out;
}

} // namespace sca
