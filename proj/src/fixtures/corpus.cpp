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

#include "sca/fixtures/corpus.hpp"

#include "sca/backends/cassette.hpp"
#include "sca/core/error.hpp"
#include "sca/core/text.hpp"
#include "sca/eval/eval.hpp"
#include "sca/pipeline/pipeline.hpp"

#include <json.hpp>

#include <fstream>
#include <map>

namespace fs = std::filesystem;

namespace sca::fixtures {

using json = nlohmann::json;
using agents::AgentKind;
using backends::ChatRequest;

namespace {

struct Page {
    std::string title;
    std::string snippet;
    std::string url;
    std::string html;    // empty: the fetch fails
    std::string summary; // page agent reply
};

// ---- glad ------------------------------------------------------------------

const std::vector<Page>& glad_pages() {
    static const std::vector<Page> pages = [] {
        std::vector<Page> p = {
            {"GitHub - Dav1dde/glad: Multi-Language Vulkan/GL/GLES/EGL/GLX/WGL Loader-Generator",
             "Multi-language loader-generator for Vulkan, GL, GLES, EGL, GLX and WGL, generated from the official "
             "Khronos specifications.",
             "https://github.com/Dav1dde/glad",
             R"(<html><head><title>Dav1dde/glad</title></head><body>
<nav>Sign in Product Pricing</nav>
<article><h1>glad</h1>
<p>Glad is a multi-language Vulkan/GL/GLES/EGL/GLX/WGL loader-generator based on the official specifications.</p>
<p>Generated loaders expose <code>gladLoadGL</code> and <code>gladLoadGLLoader</code>.</p>
<h2>CMake</h2><p>The repository ships a CMake integration for generating a loader at build time.</p>
<p>Releases: v0.1.36, v2.0.0</p></article>
<footer>Terms Privacy</footer></body></html>)",
             "GLAD is a multi-language Vulkan/GL/GLES/EGL/GLX/WGL loader-generator. This repository hosts the "
             "generator itself, its CMake integration and its releases."},
            {"glad - OpenGL loader web service", "Web front end that generates an OpenGL loader with glad.",
             "https://glad.dav1d.de/",
             R"(<html><body><form><select><option>gl</option></select></form>
<div><h1>Glad</h1><p>Web service for generating GL loaders with the glad generator.</p></div></body></html>)",
             "A web service that runs the glad generator and returns a ready-made OpenGL loader."},
            {"How do I use glad with CMake? - Stack Overflow",
             "Question about linking a glad generated loader into a CMake project.",
             "https://stackoverflow.com/questions/48582444/how-to-use-glad-with-cmake", "", ""},
            {"example-fork/glad: glad with local patches", "Personal fork of the glad loader generator.",
             "https://github.com/example-fork/glad",
             R"(<html><body><h1>glad (fork)</h1><p>Fork of Dav1dde/glad with local build patches.</p></body></html>)",
             "A personal fork of the glad loader generator carrying local build patches."},
            {"Creating a window - LearnOpenGL", "Tutorial that sets up GLFW and glad before drawing.",
             "https://learnopengl.com/Getting-started/Creating-a-window",
             R"(<html><body><h1>Creating a window</h1><p>This chapter uses GLFW for windows and glad to load OpenGL functions.</p></body></html>)",
             "An OpenGL tutorial chapter that uses GLFW and glad to create a window and load functions."},
            {"OpenGL Loading Library - OpenGL Wiki", "Overview of libraries that load OpenGL function pointers.",
             "https://www.khronos.org/opengl/wiki/OpenGL_Loading_Library",
             R"(<html><body><h1>OpenGL Loading Library</h1><p>Lists loaders such as GLEW, gl3w and glad.</p></body></html>)",
             "A wiki page listing OpenGL function loaders, among them GLEW, gl3w and glad."},
            // the same repository again, with a trailing slash
            {"Dav1dde/glad", "glad repository", "https://github.com/Dav1dde/glad/", "", ""},
        };
        // forum threads, mirrors and package pages that make up the rest of the two result pages
        const char* rest[][2] = {
            {"glad vs GLEW - r/opengl", "https://www.reddit.com/r/opengl/comments/glad_vs_glew"},
            {"Undefined reference to gladLoadGLLoader - Stack Overflow",
             "https://stackoverflow.com/questions/51322910/undefined-reference-to-gladloadglloader"},
            {"glad - vcpkg", "https://vcpkg.io/en/package/glad"},
            {"glad - ConanCenter", "https://conan.io/center/recipes/glad"},
            {"glad mirror - Gitee", "https://gitee.com/mirrors/glad"},
            {"Setting up glad on Linux - GameDev.net", "https://gamedev.net/forums/topic/glad-linux-setup"},
            {"glad 2 release notes", "https://github.com/Dav1dde/glad/releases"},
            {"python-glad - PyPI", "https://pypi.org/project/glad/"},
            {"glad - Arch User Repository", "https://aur.archlinux.org/packages/python-glad"},
            {"Loading OpenGL with glad - blog", "https://blog.example.org/opengl/glad-loader"},
            {"glad examples", "https://github.com/Dav1dde/glad/tree/glad2/example"},
            {"GLAD OpenGL loader - Game Development Stack Exchange",
             "https://gamedev.stackexchange.com/questions/150158/glad-loader"},
            {"Mesa and glad - mailing list", "https://lists.freedesktop.org/archives/mesa-dev/glad.html"},
        };
        for (const auto& r : rest) p.push_back({r[0], std::string("Result mentioning ") + r[0], r[1], "", ""});
        return p;
    }();
    return pages;
}

const std::vector<std::string>& glad_keywords() {
    static const std::vector<std::string> k = {"glad", "OpenGL", "loader", "library", "CMake"};
    return k;
}

// ---- semver ----------------------------------------------------------------

const std::vector<Page>& semver_pages() {
    static const std::vector<Page> pages = {
        {"Semantic Versioning", "Summary of the semantic versioning rules: MAJOR.MINOR.PATCH.",
         std::string(kSemverDocsSite),
         R"(<html><body><main><h1>Semantic Versioning</h1>
<p>Given a version number MAJOR.MINOR.PATCH, increment the MAJOR version for incompatible changes.</p>
<p>This site explains the versioning rules and their rationale.</p></main></body></html>)",
         "A documentation site explaining the semantic versioning rules (MAJOR.MINOR.PATCH) and how to apply them."},
        {"semver - npm", "The semantic version parser used by npm.", "https://www.npmjs.com/package/semver",
         R"(<html><body><h1>semver</h1><p>The semantic version parser used by npm, written in JavaScript.</p></body></html>)",
         "The npm package implementing semantic version parsing for JavaScript."},
        {"Comparing version strings in C - Stack Overflow", "How to compare two dotted version strings in C.",
         "https://stackoverflow.com/questions/15057010/comparing-version-numbers-in-c", "", ""},
        {"Software versioning - Wikipedia", "Article on schemes for assigning version numbers.",
         "https://en.wikipedia.org/wiki/Software_versioning",
         R"(<html><body><h1>Software versioning</h1><p>Overview of version numbering schemes.</p></body></html>)",
         "An encyclopedia article about version numbering schemes in general."},
    };
    return pages;
}

const std::vector<std::vector<std::string>>& semver_keyword_rounds() {
    static const std::vector<std::vector<std::string>> k = {
        {"semver", "semantic versioning", "C library"},
        {"semver.c", "semantic version parser", "C"},
        {"semver", "C implementation", "version compare"},
    };
    return k;
}

// ---- tinyexpr --------------------------------------------------------------

const std::vector<std::string>& tinyexpr_keywords() {
    static const std::vector<std::string> k = {"tinyexpr", "expression parser", "C"};
    return k;
}

// ---- shared helpers --------------------------------------------------------

std::vector<SearchHit> hits_from(const std::vector<Page>& pages, int pages_wanted, std::size_t per_first_page) {
    std::vector<SearchHit> out;
    for (std::size_t i = 0; i < pages.size(); ++i) {
        const int page_index = i < per_first_page ? 1 : 2;
        if (page_index > pages_wanted) break;
        const int rank = static_cast<int>(i < per_first_page ? i + 1 : i - per_first_page + 1);
        out.push_back({pages[i].title, pages[i].snippet, pages[i].url, page_index, rank});
    }
    return out;
}

const Page* find_page(const std::string& url) {
    for (const auto* list : {&glad_pages(), &semver_pages()})
        for (const auto& p : *list)
            if (p.url == url) return &p;
    return nullptr;
}

std::string name_hint(const ChatRequest& req) { return message_field(req, "Library name hint").value_or(""); }

std::string dump(const json& j) { return j.dump(-1, ' ', false, json::error_handler_t::replace); }

std::string keywords_reply(const ChatRequest& req) {
    const auto name = name_hint(req);
    if (name == "glad")
        return dump({{"keywords", glad_keywords()},
                     {"rationale", "gladLoadGL symbols and the generator banner point to the glad OpenGL loader"}});
    if (name == "tinyexpr")
        return dump({{"keywords", tinyexpr_keywords()}, {"rationale", "te_compile and te_interp symbols"}});
    if (name == "semver") {
        const auto& rounds = semver_keyword_rounds();
        const auto previous = message_field(req, "Previous keywords");
        std::size_t round = 0;
        if (previous) round = *previous == text::join(rounds[0], ", ") ? 1 : 2;
        return dump({{"keywords", rounds[round]}, {"rationale", "vendored semver sources"}});
    }
    return default_keywords(req);
}

std::string summary_reply(const ChatRequest& req) {
    const auto url = message_field(req, "URL");
    if (url) {
        if (const auto* p = find_page(*url); p && !p->summary.empty()) return dump({{"summary", p->summary}});
    }
    return default_summary(req);
}

std::string ranking_reply(const ChatRequest& req) {
    const auto name = name_hint(req);
    const auto listed = listed_urls(req);
    auto rank = [&](const std::vector<std::pair<std::string, std::string>>& order, const json& vendor,
                    const json& version) {
        json ranking = json::array();
        for (const auto& [url, why] : order)
            if (std::find(listed.begin(), listed.end(), url) != listed.end())
                ranking.push_back({{"url", url}, {"rationale", why}});
        return dump({{"ranking", ranking}, {"vendor_hint", vendor}, {"version_hint", version}});
    };
    if (name == "glad")
        return rank({{"https://github.com/Dav1dde/glad", "upstream repository of the generator named in the strings"},
                     {"https://glad.dav1d.de/", "official web front end of the same generator"},
                     {"https://github.com/example-fork/glad", "fork, not the original"},
                     {"https://www.khronos.org/opengl/wiki/OpenGL_Loading_Library", "mentions glad only in passing"}},
                    "Dav1dde", "0.1.36");
    if (name == "semver")
        return rank({{std::string(kSemverDocsSite), "the site most closely tied to semantic versioning"},
                     {"https://www.npmjs.com/package/semver", "a semver implementation, but for JavaScript"}},
                    "h2non", "0.2.0");
    return default_ranking(req);
}

std::string validation_reply(const ChatRequest& req) {
    const auto name = name_hint(req);
    if (name == "glad")
        return dump({{"decision", "accept"},
                     {"reasons", "The repository hosts the generator whose banner and gladLoadGL symbols appear in "
                                 "the binary."},
                     {"refined_keywords", nullptr}});
    if (name == "semver") {
        const int round = validation_round(req);
        json refined = nullptr;
        if (round == 1) refined = semver_keyword_rounds()[1];
        if (round == 2) refined = semver_keyword_rounds()[2];
        return dump({{"decision", "reject"},
                     {"reasons", "semver.com documents the versioning rules; it is not the home of a C library "
                                 "with semver_parse and semver_compare."},
                     {"refined_keywords", refined}});
    }
    return default_validation(req);
}

std::string aggregate_reply(const ChatRequest& req) {
    const auto name = name_hint(req);
    if (name == "glad")
        return dump({{"description", "Multi-language loader-generator for Vulkan, GL, GLES, EGL, GLX and WGL."},
                     {"vendor_hint", "Dav1dde"},
                     {"version_hint", "0.1.36"}});
    if (name == "semver")
        return dump({{"description", "C library for parsing and comparing semantic version strings."},
                     {"vendor_hint", "h2non"},
                     {"version_hint", "0.2.0"}});
    return default_aggregate(req);
}

std::string selection_reply(const ChatRequest& req) {
    const auto& listing = user_message(req);
    if (listing.find("semver/") == std::string::npos) return default_selection(req);
    return dump({{"candidates",
                  {{{"name", "semver"},
                    {"root_path", "vendor/semver"},
                    {"files", {"vendor/semver/semver.h", "vendor/semver/semver.c", "vendor/semver/README.md"}},
                    {"rationale", "self-contained library directory under vendor/ with its own README"}}}}});
}

std::vector<SearchHit> search_reply(const std::string& query, int pages) {
    if (query.find("tinyexpr") != std::string::npos)
        throw SearchProviderError("search provider answered HTTP 503");
    if (query.find("glad") != std::string::npos) return hits_from(glad_pages(), pages, backends::kHitsPerPage);
    if (query.find("semver") != std::string::npos || query.find("semantic") != std::string::npos)
        return hits_from(semver_pages(), pages, 4);
    return {};
}

backends::FetchResult fetch_reply(const std::string& url) {
    const auto* p = find_page(url);
    if (!p || p->html.empty()) return {FetchStatus::FetchFailed, std::nullopt};
    return fetched_html(p->html);
}

std::vector<PlantedString> lay_out(const std::vector<std::string>& strings) {
    std::vector<PlantedString> spec;
    std::size_t offset = 64;
    for (const auto& s : strings) {
        spec.push_back({offset, s});
        offset += s.size() + 1 + (s.size() % 13);
    }
    return spec;
}

void write_text(const fs::path& p, const std::string& content) {
    fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + p.string());
    out << content;
}

} // namespace

Corpus make_corpus() {
    Corpus c;
    c.chat = std::make_shared<ScriptedChat>();
    c.chat->on(AgentKind::Keywords, keywords_reply);
    c.chat->on(AgentKind::Summarize, summary_reply);
    c.chat->on(AgentKind::Rank, ranking_reply);
    c.chat->on(AgentKind::Validate, validation_reply);
    c.chat->on(AgentKind::Aggregate, aggregate_reply);
    c.chat->on(AgentKind::SelectCandidates, selection_reply);
    c.search = std::make_shared<ScriptedSearch>(search_reply);
    c.fetch = std::make_shared<ScriptedFetch>(fetch_reply);
    return c;
}

std::vector<PlantedString> glad_so_spec() {
    return lay_out({
        "__cxa_finalize",
        "GLIBC_2.17",
        "libglad.so",
        "gladLoadGL",
        "gladLoadGLLoader",
        "glad_glGetStringi",
        "glad_glClearColor",
        "GL_RED",
        "GL_KHR_debug",
        "GL_ARB_debug_output",
        "glad: could not load glGetString",
        "OpenGL loader generated by glad 0.1.36",
        "Loader generated for OpenGL 4.6 core profile",
        "%d.%d",
        "GL_VERSION",
    });
}

std::vector<PlantedString> tinyexpr_so_spec() {
    return lay_out({
        "__cxa_finalize",
        "GLIBC_2.17",
        "libtinyexpr.so",
        "te_compile",
        "te_interp",
        "te_eval",
        "te_free_parameters",
        "tinyexpr: unknown function",
        "tinyexpr recursive descent expression parser 1.0",
    });
}

std::vector<SourceFile> demo_project_files() {
    return {
        {"README.md", "# demo-app\n\nCommand-line tool that checks whether installed packages satisfy version "
                      "ranges.\n"},
        {"CMakeLists.txt", "cmake_minimum_required(VERSION 3.10)\nproject(demo_app C)\n"
                           "add_executable(demo-app src/main.c vendor/semver/semver.c)\n"
                           "target_include_directories(demo-app PRIVATE vendor/semver)\n"},
        {"src/main.c", "#include <stdio.h>\n#include \"semver.h\"\n\n"
                       "int main(int argc, char **argv) {\n"
                       "    semver_t have, want;\n"
                       "    if (argc < 3 || semver_parse(argv[1], &have) || semver_parse(argv[2], &want))\n"
                       "        return 2;\n"
                       "    printf(\"%s\\n\", semver_compare(have, want) >= 0 ? \"ok\" : \"outdated\");\n"
                       "    return 0;\n}\n"},
        {"vendor/semver/README.md", "# semver.c\n\nSemantic version parsing and comparison for C.\n"
                                    "Version 0.2.0, maintained by h2non.\n"},
        {"vendor/semver/semver.h",
         "/* semver.c 0.2.0: semantic version parsing and comparison for C */\n"
         "#ifndef SEMVER_H\n#define SEMVER_H\n\n"
         "typedef struct semver_version_s {\n    int major;\n    int minor;\n    int patch;\n"
         "    char *metadata;\n    char *prerelease;\n} semver_t;\n\n"
         "int semver_parse(const char *str, semver_t *ver);\n"
         "int semver_compare(semver_t x, semver_t y);\n"
         "int semver_satisfies(semver_t x, semver_t y, const char *op);\n"
         "void semver_free(semver_t *x);\n\n#endif\n"},
        {"vendor/semver/semver.c",
         "#include \"semver.h\"\n#include <stdlib.h>\n#include <string.h>\n\n"
         "int semver_parse(const char *str, semver_t *ver) {\n"
         "    char *end;\n    memset(ver, 0, sizeof *ver);\n"
         "    ver->major = (int)strtol(str, &end, 10);\n    if (*end != '.') return -1;\n"
         "    ver->minor = (int)strtol(end + 1, &end, 10);\n    if (*end != '.') return -1;\n"
         "    ver->patch = (int)strtol(end + 1, &end, 10);\n    return 0;\n}\n\n"
         "int semver_compare(semver_t x, semver_t y) {\n"
         "    if (x.major != y.major) return x.major > y.major ? 1 : -1;\n"
         "    if (x.minor != y.minor) return x.minor > y.minor ? 1 : -1;\n"
         "    if (x.patch != y.patch) return x.patch > y.patch ? 1 : -1;\n    return 0;\n}\n\n"
         "int semver_satisfies(semver_t x, semver_t y, const char *op) {\n"
         "    int c = semver_compare(x, y);\n"
         "    if (strcmp(op, \">=\") == 0) return c >= 0;\n"
         "    if (strcmp(op, \"<\") == 0) return c < 0;\n    return c == 0;\n}\n\n"
         "void semver_free(semver_t *x) {\n    free(x->metadata);\n    free(x->prerelease);\n}\n"},
    };
}

std::string eval_manifest_json() {
    nlohmann::ordered_json cases = nlohmann::ordered_json::array();
    cases.push_back({{"id", "glad"},
                     {"kind", "so"},
                     {"input_path", "so/libglad.so"},
                     {"ground_truth_urls", {std::string(kGladOrigin), "https://glad.dav1d.de/"}},
                     {"notes", "origin found in the first round"}});
    cases.push_back({{"id", "semver"},
                     {"kind", "project"},
                     {"input_path", "project"},
                     {"library", "semver"},
                     {"ground_truth_urls", {std::string(kSemverOrigin)}},
                     {"notes", "only the specification site shows up; vendor and version hints remain"}});
    cases.push_back({{"id", "tinyexpr"},
                     {"kind", "so"},
                     {"input_path", "so/libtinyexpr.so"},
                     {"ground_truth_urls", {"https://github.com/codeplea/tinyexpr"}},
                     {"notes", "search provider outage"}});
    nlohmann::ordered_json doc;
    doc["cases"] = cases;
    return doc.dump(2) + "\n";
}

void write_fixture_tree(const fs::path& fixtures_dir) {
    fs::create_directories(fixtures_dir / "so");
    write_fixture_so(fixtures_dir / "so" / "libglad.so", glad_so_spec(), 4096);
    write_fixture_so(fixtures_dir / "so" / "libtinyexpr.so", tinyexpr_so_spec(), 2048);
    for (const auto& f : demo_project_files()) write_text(fixtures_dir / "project" / f.path, f.content);
    write_text(fixtures_dir / "cases.json", eval_manifest_json());
}

void write_cassettes(const fs::path& fixtures_dir, const fs::path& cassette_dir) {
    fs::create_directories(cassette_dir);
    const pipeline::PipelineConfig cfg;
    const SystemClock clock;

    auto record = [&](const std::string& file, const auto& run) {
        auto corpus = make_corpus();
        auto cassette = std::make_shared<backends::Cassette>();
        cassette->created_at = std::string(kCassetteCreatedAt);
        cassette->tool_version = SCA_VERSION;
        backends::Backends b{std::make_shared<backends::RecordingChat>(corpus.chat, cassette),
                             std::make_shared<backends::RecordingSearch>(corpus.search, cassette),
                             std::make_shared<backends::RecordingFetch>(corpus.fetch, cassette)};
        run(b);
        cassette->save(cassette_dir / file);
    };

    record("glad.json", [&](const backends::Backends& b) {
        pipeline::analyze_so(fixtures_dir / "so" / "libglad.so", cfg, b, clock);
    });
    record("semver.json", [&](const backends::Backends& b) {
        pipeline::analyze_project(fixtures_dir / "project", cfg, b, clock);
    });
    record("tinyexpr.json", [&](const backends::Backends& b) {
        pipeline::analyze_so(fixtures_dir / "so" / "libtinyexpr.so", cfg, b, clock);
    });
    record("eval.json", [&](const backends::Backends& b) {
        eval::run_eval(eval::load_manifest(fixtures_dir / "cases.json"), cfg, b, clock);
    });
}

} // namespace sca::fixtures
