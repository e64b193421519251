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

#include "sca/agents/agents.hpp"
#include "sca/core/error.hpp"
#include "sca/core/text.hpp"
#include "sca/core/url.hpp"
#include "sca/evidence/source.hpp"
#include "sca/evidence/strings.hpp"
#include "sca/fixtures/corpus.hpp"
#include "sca/fixtures/scripted.hpp"

#include "support/support.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <random>
#include <set>

using namespace sca;
using agents::AgentKind;
using fixtures::ScriptedChat;
using json = nlohmann::json;

namespace {

Evidence glad_evidence() { return evidence::extract_so_evidence(test::fixtures_dir() / "so" / "libglad.so", {}); }

Evidence semver_evidence() {
    evidence::TplCandidate c{"semver", "vendor/semver", {"vendor/semver/semver.c", "vendor/semver/semver.h"}, ""};
    return evidence::extract_source_evidence(test::fixtures_dir() / "project", c, {});
}

Evidence bare_evidence(std::string name) {
    Evidence ev;
    ev.name_hint = std::move(name);
    ev.empty_evidence = true;
    return ev;
}

SearchHit hit(std::string url, std::string snippet = "a snippet", std::string title = "A title") {
    return {std::move(title), std::move(snippet), std::move(url), 1, 1};
}

PageRecord summarized(std::string url, std::string summary) {
    return {hit(url), FetchStatus::Fetched, "text", std::move(summary), SummarySource::LlmSummary};
}

RankedEntry ranked(std::string url, std::string summary) {
    return {summarized(std::move(url), std::move(summary)), "rationale"};
}

} // namespace

// ---- keywords --------------------------------------------------------------

TEST(Keywords, GladFixture) {
    auto corpus = fixtures::make_corpus();
    const auto r = agents::generate_keywords(glad_evidence(), std::nullopt, *corpus.chat, "glad/a1/i0");
    EXPECT_EQ(r.parsed.keywords, (std::vector<std::string>{"glad", "OpenGL", "loader", "library", "CMake"}));
    EXPECT_EQ(r.parsed.generation, 0);
    EXPECT_GT(r.tokens, 0u);
}

TEST(Keywords, NameHintOnlyEvidence) {
    ScriptedChat chat;
    const auto r = agents::generate_keywords(bare_evidence("crypto"), std::nullopt, chat, "crypto/a1/i0");
    EXPECT_NE(std::find(r.parsed.keywords.begin(), r.parsed.keywords.end(), "crypto"), r.parsed.keywords.end());
}

TEST(Keywords, FeedbackRoundIncrementsGeneration) {
    ScriptedChat chat;
    chat.on(AgentKind::Keywords, [](const backends::ChatRequest& req) {
        // adopt the validator's suggestion
        const auto suggested = fixtures::message_field(req, "Suggested keywords");
        json kws = json::array();
        if (suggested) {
            std::size_t start = 0;
            while (start <= suggested->size()) {
                const auto comma = suggested->find(", ", start);
                kws.push_back(suggested->substr(start, comma - start));
                if (comma == std::string::npos) break;
                start = comma + 2;
            }
        }
        kws.push_back("parser");
        return json{{"keywords", kws}, {"rationale", "feedback"}}.dump();
    });
    agents::KeywordFeedback fb{{Decision::Reject, "docs site", std::vector<std::string>{"semver", "C library"}},
                               {{"semver", "semantic versioning"}, "", 0}};
    const auto r = agents::generate_keywords(semver_evidence(), fb, chat, "semver/a1/i1");
    EXPECT_EQ(r.parsed.generation, 1);
    for (const char* k : {"semver", "C library"})
        EXPECT_NE(std::find(r.parsed.keywords.begin(), r.parsed.keywords.end(), k), r.parsed.keywords.end());
}

TEST(Keywords, UnusableReplyThrowsAfterRepair) {
    ScriptedChat chat;
    chat.on(AgentKind::Keywords, [](const backends::ChatRequest&) { return R"({"keywords":[]})"; });
    EXPECT_THROW(agents::generate_keywords(glad_evidence(), std::nullopt, chat, "s"), AgentParseError);
    EXPECT_EQ(chat.count(AgentKind::Keywords), 2u);
}

TEST(Keywords, OverlongListIsTruncatedOrRepaired) {
    ScriptedChat chat;
    chat.on(AgentKind::Keywords, [](const backends::ChatRequest&) {
        return R"({"keywords":["a","b","c","d","e","f","g","h","i","j"],"rationale":"r"})";
    });
    try {
        const auto r = agents::generate_keywords(glad_evidence(), std::nullopt, chat, "s");
        EXPECT_LE(r.parsed.keywords.size(), kMaxKeywords);
    } catch (const AgentParseError&) {
        SUCCEED();
    }
}

// ---- page summaries --------------------------------------------------------

TEST(Summaries, GladRepositoryPage) {
    auto corpus = fixtures::make_corpus();
    const auto h = hit(std::string(fixtures::kGladOrigin));
    const auto page = corpus.fetch->fetch_text(h.url);
    const auto r = agents::summarize_page(h, page, *corpus.chat, "glad/a2/i0/p0");
    EXPECT_EQ(r.parsed.summary_source, SummarySource::LlmSummary);
    EXPECT_EQ(r.parsed.summary.rfind("GLAD is a multi-language Vulkan/GL/GLES/EGL/GLX/WGL loader-generator", 0), 0u);
    EXPECT_NE(r.parsed.summary.find("loader-generator"), std::string::npos);
}

TEST(Summaries, FailedFetchUsesSnippetWithoutModelCall) {
    ScriptedChat chat;
    const auto r = agents::summarize_page(hit("https://semver.org/", "Semantic Versioning 2.0.0"),
                                          {FetchStatus::FetchFailed, std::nullopt}, chat, "s");
    EXPECT_EQ(r.parsed.fetch_status, FetchStatus::FetchFailed);
    EXPECT_EQ(r.parsed.summary, "Semantic Versioning 2.0.0");
    EXPECT_EQ(r.parsed.summary_source, SummarySource::SnippetFallback);
    EXPECT_EQ(chat.calls().size(), 0u);
    EXPECT_EQ(r.tokens, 0u);
}

TEST(Summaries, UnparseableReplyFallsBackToSnippet) {
    ScriptedChat chat;
    chat.on(AgentKind::Summarize, [](const backends::ChatRequest&) { return "I cannot summarize this."; });
    const auto r = agents::summarize_page(hit("https://a.org/", "the snippet"), fixtures::fetched_html("<p>x</p>"),
                                          chat, "s");
    EXPECT_EQ(r.parsed.summary, "the snippet");
    EXPECT_EQ(r.parsed.summary_source, SummarySource::SnippetFallback);
    EXPECT_EQ(r.parsed.fetch_status, FetchStatus::Fetched);
    EXPECT_GT(r.tokens, 0u);
}

TEST(Summaries, LongSummaryIsBounded) {
    ScriptedChat chat;
    chat.on(AgentKind::Summarize,
            [](const backends::ChatRequest&) { return json{{"summary", std::string(5000, 'y')}}.dump(); });
    const auto r = agents::summarize_page(hit("https://a.org/"), fixtures::fetched_html("<p>x</p>"), chat, "s");
    EXPECT_LE(r.parsed.summary.size(), agents::kMaxSummaryChars);
    EXPECT_NO_THROW(r.parsed.validate());
}

// ---- ranking ---------------------------------------------------------------

TEST(Ranking, GladRepositoryRanksFirst) {
    auto corpus = fixtures::make_corpus();
    const std::vector<PageRecord> pages = {
        summarized("https://stackoverflow.com/questions/48582444/how-to-use-glad-with-cmake", "forum thread"),
        summarized("https://www.khronos.org/opengl/wiki/OpenGL_Loading_Library", "wiki"),
        summarized(std::string(fixtures::kGladOrigin), "the repo"),
        summarized("https://www.reddit.com/r/opengl/comments/glad_vs_glew", "forum thread"),
    };
    const KeywordSet kw{{"glad", "OpenGL", "loader", "library", "CMake"}, "", 0};
    const auto r = agents::rank_origins(glad_evidence(), kw, pages, *corpus.chat, "glad/a3/i0");
    ASSERT_FALSE(r.parsed.entries.empty());
    EXPECT_EQ(normalize_url(r.parsed.entries[0].page.hit.url), "https://github.com/dav1dde/glad");
    EXPECT_NO_THROW(r.parsed.validate_against(pages));
    EXPECT_EQ(r.parsed.vendor_hint, "Dav1dde");
}

TEST(Ranking, SinglePage) {
    ScriptedChat chat;
    const std::vector<PageRecord> pages = {summarized("https://only.org/x", "only")};
    const auto r = agents::rank_origins(glad_evidence(), {{"glad"}, "", 0}, pages, chat, "s");
    ASSERT_EQ(r.parsed.entries.size(), 1u);
    EXPECT_EQ(r.parsed.entries[0].page, pages[0]);
}

TEST(Ranking, HallucinatedUrlIsDropped) {
    ScriptedChat chat;
    chat.on(AgentKind::Rank, [](const backends::ChatRequest&) {
        return R"({"ranking":[{"url":"https://b.org/","rationale":"second"},
                              {"url":"https://invented.example/","rationale":"not listed"},
                              {"url":"https://a.org/","rationale":"first"}]})";
    });
    const std::vector<PageRecord> pages = {summarized("https://a.org/", "a"), summarized("https://b.org/", "b")};
    const auto r = agents::rank_origins(glad_evidence(), {{"glad"}, "", 0}, pages, chat, "s");
    ASSERT_EQ(r.parsed.entries.size(), 2u);
    EXPECT_EQ(r.parsed.entries[0].page.hit.url, "https://b.org/");
    EXPECT_EQ(r.parsed.entries[1].page.hit.url, "https://a.org/");
    EXPECT_NO_THROW(r.parsed.validate_against(pages));
}

TEST(Ranking, SubsetPermutationPropertyOverRandomReplies) {
    std::mt19937 rng(3);
    for (int n = 0; n < 200; ++n) {
        std::vector<PageRecord> pages;
        const int count = 1 + static_cast<int>(rng() % 8);
        for (int i = 0; i < count; ++i)
            pages.push_back(summarized("https://site" + std::to_string(i) + ".org/p", "s" + std::to_string(i)));
        json ranking = json::array();
        const int entries = static_cast<int>(rng() % 12);
        for (int i = 0; i < entries; ++i) {
            const int pick = static_cast<int>(rng() % (count + 3)); // some out of range
            const auto url = "https://site" + std::to_string(pick) + ".org/p" + (rng() % 4 == 0 ? "/" : "");
            ranking.push_back({{"url", url}, {"rationale", rng() % 6 == 0 ? "" : "why"}});
        }
        const auto reply = json{{"ranking", ranking}}.dump();
        ScriptedChat chat;
        chat.on(AgentKind::Rank, [reply](const backends::ChatRequest&) { return reply; });
        try {
            const auto r = agents::rank_origins(glad_evidence(), {{"glad"}, "", 0}, pages, chat, "s");
            EXPECT_NO_THROW(r.parsed.validate_against(pages));
            for (const auto& e : r.parsed.entries) EXPECT_FALSE(e.originality_rationale.empty());
        } catch (const AgentParseError&) {
            // a reply that stays unusable after repair is an error, never a partial result
        }
    }
}

// ---- validation ------------------------------------------------------------

TEST(Validation, GladAccepted) {
    auto corpus = fixtures::make_corpus();
    const std::vector<RankedEntry> top = {ranked(std::string(fixtures::kGladOrigin), "GLAD is a multi-language ...")};
    const auto r = agents::validate_origin(glad_evidence(), top, 1, 3, *corpus.chat, "glad/a4/i0");
    EXPECT_EQ(r.parsed.decision, Decision::Accept);
    EXPECT_FALSE(r.parsed.refined_keywords);
}

TEST(Validation, SemverDocsSiteRejected) {
    auto corpus = fixtures::make_corpus();
    const std::vector<RankedEntry> top = {ranked(std::string(fixtures::kSemverDocsSite), "docs")};
    const auto r = agents::validate_origin(semver_evidence(), top, 1, 3, *corpus.chat, "semver/a4/i0");
    EXPECT_EQ(r.parsed.decision, Decision::Reject);
    EXPECT_TRUE(text::icontains(r.parsed.reasons, "semver.com"));
    EXPECT_TRUE(text::icontains(r.parsed.reasons, "library"));
}

TEST(Validation, EmptyReasonsDegradeToReject) {
    ScriptedChat chat;
    chat.on(AgentKind::Validate,
            [](const backends::ChatRequest&) { return R"({"decision":"accept","reasons":""})"; });
    const std::vector<RankedEntry> top = {ranked("https://a.org/", "a")};
    const auto r = agents::validate_origin(glad_evidence(), top, 1, 3, chat, "s");
    EXPECT_EQ(chat.count(AgentKind::Validate), 2u);
    EXPECT_EQ(r.parsed.decision, Decision::Reject);
    EXPECT_EQ(r.parsed.reasons, agents::kUnparseableValidation);
    EXPECT_GT(r.tokens, 0u);
}

TEST(Validation, RequestCarriesRoundAndOnlyUrlSummaryPairs) {
    ScriptedChat chat;
    const std::vector<RankedEntry> top = {ranked("https://a.org/", "summary A"), ranked("https://b.org/", "summary B")};
    agents::validate_origin(glad_evidence(), top, 2, 3, chat, "glad/a4/i1");
    const auto calls = chat.calls();
    ASSERT_EQ(calls.size(), 1u);
    const auto& req = calls[0].request;
    EXPECT_EQ(req.messages.size(), 1u);
    EXPECT_EQ(fixtures::validation_round(req), 2);
    EXPECT_EQ(fixtures::listed_urls(req), (std::vector<std::string>{"https://a.org/", "https://b.org/"}));
    EXPECT_EQ(fixtures::user_message(req).find("rationale"), std::string::npos);
}

// ---- aggregation -----------------------------------------------------------

TEST(Aggregation, AcceptedGlad) {
    auto corpus = fixtures::make_corpus();
    RankedOrigins ro{{ranked(std::string(fixtures::kGladOrigin), "GLAD is ...")}, "Dav1dde", "0.1.36"};
    const std::vector<ValidationVerdict> history = {{Decision::Accept, "matches", std::nullopt}};
    const auto r = agents::aggregate_metadata(glad_evidence(), ro, true, history, *corpus.chat, "glad/a5");
    EXPECT_EQ(r.parsed.name, "glad");
    ASSERT_TRUE(r.parsed.origin_url);
    EXPECT_EQ(normalize_url(*r.parsed.origin_url), "https://github.com/dav1dde/glad");
    ASSERT_TRUE(r.parsed.description);
    EXPECT_FALSE(r.parsed.description->empty());
}

TEST(Aggregation, RejectedRunCarriesHintsButNoOrigin) {
    ScriptedChat chat;
    chat.on(AgentKind::Aggregate, [](const backends::ChatRequest&) {
        return R"({"description":"Cryptography library.","vendor_hint":"someone else","version_hint":null})";
    });
    RankedOrigins ro{{ranked("https://www.openssl.org/", "openssl")}, "OpenSSL Project", std::nullopt};
    const std::vector<ValidationVerdict> history(3, {Decision::Reject, "not it", std::nullopt});
    const auto r = agents::aggregate_metadata(bare_evidence("crypto"), ro, false, history, chat, "crypto/a5");
    EXPECT_FALSE(r.parsed.origin_url);
    EXPECT_EQ(r.parsed.vendor_hint, "OpenSSL Project"); // ranking hints win
}

TEST(Aggregation, UnusableReplyKeepsReportWithoutDescription) {
    ScriptedChat chat;
    chat.on(AgentKind::Aggregate, [](const backends::ChatRequest&) { return "nope"; });
    RankedOrigins ro{{ranked(std::string(fixtures::kGladOrigin), "s")}, std::nullopt, std::nullopt};
    const auto r = agents::aggregate_metadata(glad_evidence(), ro, true, {{Decision::Accept, "ok", std::nullopt}},
                                              chat, "glad/a5");
    EXPECT_FALSE(r.parsed.description);
    EXPECT_TRUE(r.parsed.origin_url);
}

// ---- shared reply parsing --------------------------------------------------

TEST(Reply, ExtractsJsonFromFencesAndProse) {
    EXPECT_EQ(agents::extract_json_object("```json\n{\"a\":1}\n```")["a"], 1);
    EXPECT_EQ(agents::extract_json_object("Sure! {\"a\":{\"b\":\"}\"}} done")["a"]["b"], "}");
    EXPECT_THROW(agents::extract_json_object("no object"), AgentParseError);
    EXPECT_THROW(agents::extract_json_object("[1,2]"), AgentParseError);
}

TEST(Prompts, EveryAgentHasDistinctPrompt) {
    std::set<std::string> seen;
    for (auto k : {AgentKind::Keywords, AgentKind::Summarize, AgentKind::Rank, AgentKind::Validate,
                   AgentKind::Aggregate, AgentKind::SelectCandidates}) {
        const auto p = agents::system_prompt(k);
        EXPECT_FALSE(p.empty());
        EXPECT_TRUE(seen.insert(std::string(p)).second);
        EXPECT_EQ(agents::agent_for_system_prompt(p), k);
    }
}
