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

#include "sca/backends/html_text.hpp"

#include "sca/core/text.hpp"

#include <array>
#include <cctype>
#include <cstdint>
#include <string>

namespace sca::backends {
namespace {

constexpr std::array kDropped{"script", "style", "noscript", "template", "svg",  "head",
                              "nav",    "header", "footer",  "aside",    "form", "iframe", "select"};

constexpr std::array kBlock{"p",       "div",     "br",         "li",     "ul",      "ol",      "h1",
                            "h2",      "h3",      "h4",         "h5",     "h6",      "tr",      "td",
                            "th",      "table",   "section",    "article", "main",   "pre",     "blockquote",
                            "hr",      "dl",      "dt",         "dd",     "figure",  "figcaption", "title",
                            "body",    "html",    "summary",    "details", "address", "caption"};

template <std::size_t N>
bool in(const std::array<const char*, N>& set, std::string_view name) {
    for (const char* s : set)
        if (name == s) return true;
    return false;
}

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cp = 0xFFFD;
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

// Decodes the entity starting at html[i] ('&'). Returns consumed length, or
// 0 if it is not a recognised entity.
std::size_t decode_entity(std::string_view html, std::size_t i, std::string& out) {
    const auto semi = html.find(';', i);
    if (semi == std::string_view::npos || semi - i > 10) return 0;
    const auto body = html.substr(i + 1, semi - i - 1);
    if (body.empty()) return 0;
    if (body[0] == '#') {
        std::uint32_t cp = 0;
        const bool hex = body.size() > 1 && (body[1] == 'x' || body[1] == 'X');
        const auto digits = body.substr(hex ? 2 : 1);
        if (digits.empty()) return 0;
        for (char c : digits) {
            const int v = std::isdigit(static_cast<unsigned char>(c)) ? c - '0'
                          : hex && std::isxdigit(static_cast<unsigned char>(c))
                              ? std::tolower(static_cast<unsigned char>(c)) - 'a' + 10
                              : -1;
            if (v < 0) return 0;
            cp = cp * (hex ? 16 : 10) + static_cast<std::uint32_t>(v);
            if (cp > 0x10FFFF) cp = 0x110000;
        }
        append_utf8(out, cp);
        return semi - i + 1;
    }
    static constexpr std::pair<std::string_view, std::string_view> named[] = {
        {"amp", "&"},  {"lt", "<"},          {"gt", ">"},          {"quot", "\""},       {"apos", "'"},
        {"nbsp", " "}, {"copy", "\xC2\xA9"}, {"reg", "\xC2\xAE"},  {"mdash", "\xE2\x80\x94"},
        {"ndash", "\xE2\x80\x93"},           {"hellip", "\xE2\x80\xA6"},
    };
    for (const auto& [name, value] : named) {
        if (body == name) {
            out += value;
            return semi - i + 1;
        }
    }
    return 0;
}

std::string tag_name_at(std::string_view html, std::size_t i, bool& closing) {
    // html[i] == '<'
    std::size_t j = i + 1;
    closing = j < html.size() && html[j] == '/';
    if (closing) ++j;
    std::string name;
    while (j < html.size() && (std::isalnum(static_cast<unsigned char>(html[j])) || html[j] == '-')) {
        name += static_cast<char>(std::tolower(static_cast<unsigned char>(html[j])));
        ++j;
    }
    return name;
}

// Index just past the '>' closing the tag that starts at i, honouring quotes.
std::size_t tag_end(std::string_view html, std::size_t i) {
    char quote = 0;
    for (std::size_t j = i + 1; j < html.size(); ++j) {
        const char c = html[j];
        if (quote) {
            if (c == quote) quote = 0;
        } else if (c == '"' || c == '\'') {
            quote = c;
        } else if (c == '>') {
            return j + 1;
        }
    }
    return html.size();
}

// Case-insensitive search for "</name" starting at `from`.
std::size_t find_close(std::string_view html, std::string_view name, std::size_t from) {
    for (std::size_t j = html.find("</", from); j != std::string_view::npos; j = html.find("</", j + 2)) {
        bool match = j + 2 + name.size() <= html.size();
        for (std::size_t k = 0; match && k < name.size(); ++k)
            match = std::tolower(static_cast<unsigned char>(html[j + 2 + k])) == name[k];
        if (match) {
            const std::size_t after = j + 2 + name.size();
            if (after == html.size() || !std::isalnum(static_cast<unsigned char>(html[after]))) return j;
        }
    }
    return std::string_view::npos;
}

} // namespace

std::string normalize_plain_text(std::string_view raw) {
    std::string out;
    std::string line;
    auto flush = [&] {
        auto t = text::trim(line);
        if (!t.empty()) {
            if (!out.empty()) out += '\n';
            out += t;
        }
        line.clear();
    };
    bool space = false;
    for (char c : raw) {
        if (c == '\n' || c == '\r' || c == '\f' || c == '\v') {
            flush();
            space = false;
        } else if (c == ' ' || c == '\t') {
            space = true;
        } else {
            if (space && !line.empty()) line += ' ';
            space = false;
            line += c;
        }
    }
    flush();
    return out;
}

std::string html_to_text(std::string_view html) {
    std::string raw;
    raw.reserve(html.size() / 2);
    std::size_t i = 0;
    while (i < html.size()) {
        const char c = html[i];
        if (c == '<') {
            if (html.compare(i, 4, "<!--") == 0) {
                const auto end = html.find("-->", i + 4);
                i = end == std::string_view::npos ? html.size() : end + 3;
                continue;
            }
            if (i + 1 < html.size() && (html[i + 1] == '!' || html[i + 1] == '?')) {
                i = tag_end(html, i);
                continue;
            }
            bool closing = false;
            const auto name = tag_name_at(html, i, closing);
            if (name.empty()) { // stray '<'
                raw += c;
                ++i;
                continue;
            }
            const auto end = tag_end(html, i);
            const bool self_closing = end >= 2 && html[end - 2] == '/';
            if (!closing && !self_closing && in(kDropped, name)) {
                const auto close = find_close(html, name, end);
                i = close == std::string_view::npos ? html.size() : tag_end(html, close);
                continue;
            }
            if (in(kBlock, name)) raw += '\n';
            i = end;
            continue;
        }
        if (c == '&') {
            if (auto used = decode_entity(html, i, raw)) {
                i += used;
                continue;
            }
        }
        raw += c;
        ++i;
    }
    return normalize_plain_text(raw);
}

std::string cap_text(std::string text, std::size_t cap) {
    if (text.size() <= cap) return text;
    text.resize(text::utf8_prefix(text, cap).size());
    text += kTruncationMarker;
    return text;
}

} // namespace sca::backends
