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

#include "sca/backends/cassette.hpp"
#include "sca/backends/factory.hpp"
#include "sca/backends/html_text.hpp"
#include "sca/backends/live.hpp"
#include "sca/backends/retry.hpp"
#include "sca/core/error.hpp"
#include "sca/fixtures/corpus.hpp"
#include "sca/fixtures/scripted.hpp"

#include "support/support.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <map>

using namespace sca;
using namespace sca::backends;
using json = nlohmann::json;

namespace {

ChatRequest sample_request(std::string session = "s1") {
    ChatRequest r;
    r.session_id = std::move(session);
    r.system_prompt = "system";
    r.messages = {{Role::User, "hello"}};
    return r;
}

EnvLookup env_from(std::map<std::string, std::string> vars) {
    return [vars = std::move(vars)](const char* name) -> std::optional<std::string> {
        auto it = vars.find(name);
        if (it == vars.end()) return std::nullopt;
        return it->second;
    };
}

class FlakySearch final : public SearchBackend {
public:
    explicit FlakySearch(int failures) : failures_(failures) {}
    std::vector<SearchHit> search(const std::string&, int) override {
        ++calls;
        if (calls <= failures_) throw SearchProviderError("HTTP 503");
        return {};
    }
    int calls = 0;

private:
    int failures_;
};

} // namespace

// ---- digests and cassettes -------------------------------------------------

TEST(Cassette, DigestIgnoresSessionIdOnly) {
    const auto a = request_digest(canonical_request(sample_request("s1")));
    EXPECT_EQ(a, request_digest(canonical_request(sample_request("other"))));
    auto changed = sample_request();
    changed.system_prompt += " ";
    EXPECT_NE(a, request_digest(canonical_request(changed)));
    changed = sample_request();
    changed.temperature = 0.5;
    EXPECT_NE(a, request_digest(canonical_request(changed)));
    EXPECT_EQ(a.size(), 64u);
}

TEST(Cassette, Sha256KnownVector) {
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Cassette, FetchDigestUsesNormalizedUrl) {
    EXPECT_EQ(request_digest(canonical_fetch_request("https://GitHub.com/Dav1dde/glad/")),
              request_digest(canonical_fetch_request("https://github.com/dav1dde/glad")));
}

TEST(Cassette, RecordThenReplayGivesIdenticalResponses) {
    auto cassette = std::make_shared<Cassette>();
    auto corpus = fixtures::make_corpus();
    RecordingChat rec_chat(corpus.chat, cassette);
    RecordingSearch rec_search(corpus.search, cassette);
    RecordingFetch rec_fetch(corpus.fetch, cassette);

    const auto chat_resp = rec_chat.chat(sample_request());
    const auto hits = rec_search.search("glad OpenGL loader library CMake", 2);
    const auto page = rec_fetch.fetch_text(std::string(fixtures::kGladOrigin));
    EXPECT_THROW(rec_search.search("tinyexpr expression parser C", 2), SearchProviderError);

    auto reloaded = Cassette::parse(cassette->to_json_string());
    EXPECT_EQ(reloaded->to_json_string(), cassette->to_json_string());
    ReplayChat chat(reloaded);
    ReplaySearch search(reloaded);
    ReplayFetch fetch(reloaded);
    EXPECT_EQ(chat.chat(sample_request("another session")), chat_resp);
    EXPECT_EQ(search.search("glad OpenGL loader library CMake", 2), hits);
    EXPECT_EQ(fetch.fetch_text(std::string(fixtures::kGladOrigin)), page);
    EXPECT_THROW(search.search("tinyexpr expression parser C", 2), SearchProviderError);
}

TEST(Cassette, MissNamesChannelAndPreview) {
    auto cassette = std::make_shared<const Cassette>();
    ReplayChat chat(cassette);
    try {
        chat.chat(sample_request("glad/a1/i0"));
        FAIL();
    } catch (const ReplayMiss& e) {
        EXPECT_EQ(e.channel(), "llm");
        EXPECT_NE(e.preview().find("glad/a1/i0"), std::string::npos);
        EXPECT_NE(e.preview().find("hello"), std::string::npos);
    }
    ReplaySearch search(cassette);
    try {
        search.search("q", 2);
        FAIL();
    } catch (const ReplayMiss& e) {
        EXPECT_EQ(e.channel(), "search");
    }
}

TEST(Cassette, FirstRecordingWins) {
    Cassette c;
    c.record({Channel::Llm, "d", "p", json{{"content", "first"}}});
    c.record({Channel::Llm, "d", "p", json{{"content", "second"}}});
    EXPECT_EQ(c.size(), 1u);
    EXPECT_EQ((*c.find(Channel::Llm, "d"))["content"], "first");
}

TEST(Cassette, ParseRejectsDuplicatesAndForeignSchema) {
    const std::string dup = R"({"schema":"sca-cassette/1","metadata":{"created_at":"x","tool_version":"y"},
        "interactions":[{"channel":"llm","request_digest":"a","request_preview":"","response":{}},
                        {"channel":"llm","request_digest":"a","request_preview":"","response":{}}]})";
    EXPECT_THROW(Cassette::parse(dup), Error);
    EXPECT_THROW(Cassette::parse(R"({"schema":"other"})"), Error);
}

TEST(Cassette, ShippedCassettesLoad) {
    for (const char* f : {"glad.json", "semver.json", "tinyexpr.json", "eval.json"}) {
        auto c = Cassette::load(test::cassettes_dir() / f);
        EXPECT_GT(c->size(), 0u) << f;
        EXPECT_EQ(c->created_at, fixtures::kCassetteCreatedAt);
    }
}

// ---- search contract (scripted provider) -----------------------------------

TEST(Search, GladQueryReturnsTwoPagesOfHits) {
    auto corpus = fixtures::make_corpus();
    const auto hits = corpus.search->search("glad OpenGL loader library CMake", 2);
    EXPECT_EQ(hits.size(), 20u);
    EXPECT_TRUE(std::any_of(hits.begin(), hits.end(), [](const SearchHit& h) { return h.url == fixtures::kGladOrigin; }));
    for (const auto& h : hits) EXPECT_NO_THROW(h.validate(2));
    EXPECT_EQ(std::count_if(hits.begin(), hits.end(), [](const SearchHit& h) { return h.page_index == 2; }), 10);
}

TEST(Search, NoResultsIsEmpty) {
    auto corpus = fixtures::make_corpus();
    EXPECT_TRUE(corpus.search->search("zzzz nothing", 2).empty());
}

TEST(Search, OnePageMeansPageIndexOne) {
    auto corpus = fixtures::make_corpus();
    const auto hits = corpus.search->search("glad OpenGL loader library CMake", 1);
    ASSERT_FALSE(hits.empty());
    for (const auto& h : hits) EXPECT_EQ(h.page_index, 1);
}

TEST(Search, ProviderPageParsing) {
    const auto google = JsonSearch::parse_page(
        R"({"items":[{"title":"T","snippet":"S","link":"https://a.org/x"},{"title":"bad","link":"ftp://x"},
                     {"title":"NoSnippet","link":"https://b.org"}]})",
        2);
    ASSERT_EQ(google.size(), 2u);
    EXPECT_EQ(google[0].page_index, 2);
    EXPECT_EQ(google[0].rank_on_page, 1);
    EXPECT_EQ(google[1].snippet, "NoSnippet");
    const auto generic = JsonSearch::parse_page(R"({"results":[{"title":"T","url":"https://c.org","snippet":"s"}]})", 1);
    ASSERT_EQ(generic.size(), 1u);
    EXPECT_EQ(generic[0].url, "https://c.org");
    EXPECT_TRUE(JsonSearch::parse_page(R"({})", 1).empty());
}

TEST(Search, HitsJsonRoundTrip) {
    auto corpus = fixtures::make_corpus();
    const auto hits = corpus.search->search("glad OpenGL loader library CMake", 2);
    EXPECT_EQ(hits_from_json(hits_to_json(hits)), hits);
}

// ---- fetch and HTML ----------------------------------------------------------

TEST(Fetch, GladRepositoryPageText) {
    auto corpus = fixtures::make_corpus();
    const auto r = corpus.fetch->fetch_text(std::string(fixtures::kGladOrigin));
    ASSERT_EQ(r.status, FetchStatus::Fetched);
    EXPECT_NE(r.text->find("multi-language Vulkan/GL/GLES/EGL/GLX/WGL loader-generator"), std::string::npos);
    EXPECT_EQ(r.text->find("Sign in"), std::string::npos); // navigation dropped
}

TEST(Fetch, NotFoundIsFetchFailed) {
    const auto r = HttpFetcher::convert(404, "text/html", "<html>missing</html>", kDefaultPageTextCap);
    EXPECT_EQ(r.status, FetchStatus::FetchFailed);
    EXPECT_FALSE(r.text);
}

TEST(Fetch, BinaryContentIsFetchFailed) {
    EXPECT_EQ(HttpFetcher::convert(200, "application/pdf", "%PDF", kDefaultPageTextCap).status,
              FetchStatus::FetchFailed);
}

TEST(Fetch, LargePageIsCapped) {
    std::string body = "<html><body><p>";
    while (body.size() < 200 * 1024) body += "lorem ipsum dolor sit amet ";
    body += "</p></body></html>";
    const auto r = HttpFetcher::convert(200, "text/html; charset=utf-8", body, kDefaultPageTextCap);
    ASSERT_EQ(r.status, FetchStatus::Fetched);
    EXPECT_LE(r.text->size(), kDefaultPageTextCap + kTruncationMarker.size());
    EXPECT_TRUE(r.text->ends_with(kTruncationMarker));
}

TEST(Html, DropsScriptsAndDecodesEntities) {
    const auto t = html_to_text(
        "<html><head><style>p{}</style></head><body><script>var x=1;</script>"
        "<h1>A &amp; B</h1><p>&copy; &#8364;5 &lt;ok&gt;</p><!-- hidden --></body></html>");
    EXPECT_EQ(t, "A & B\n\xC2\xA9 \xE2\x82\xAC" "5 <ok>");
}

TEST(Html, InlineTagsDoNotSplitWords) {
    EXPECT_EQ(html_to_text("<p>load<b>GL</b>functions</p>"), "loadGLfunctions");
}

TEST(Html, CapKeepsUtf8Intact) {
    std::string s(10, 'a');
    s += "\xC3\xA9\xC3\xA9";
    const auto capped = cap_text(s, 11);
    EXPECT_EQ(capped, std::string(10, 'a') + std::string(kTruncationMarker));
}

// ---- live client request/response shapes --------------------------------------

TEST(Live, ChatBodyAndResponse) {
    auto req = sample_request();
    const auto body = OpenAiChat::build_body(req, "gpt-4o");
    EXPECT_EQ(body["model"], "gpt-4o");
    EXPECT_EQ(body["messages"][0]["role"], "system");
    EXPECT_EQ(body["messages"][1]["content"], "hello");
    EXPECT_EQ(body["response_format"]["type"], "json_object");
    const auto resp = OpenAiChat::parse_body(
        R"({"choices":[{"message":{"content":"{\"a\":1}"}}],"usage":{"prompt_tokens":5,"completion_tokens":7}})");
    EXPECT_EQ(resp.content, "{\"a\":1}");
    EXPECT_EQ(resp.total_tokens(), 12u);
    EXPECT_THROW(OpenAiChat::parse_body("{}"), ProviderError);
}

// ---- retries ---------------------------------------------------------------

TEST(Retry, StopsAfterConfiguredRetries) {
    for (int failures = 0; failures <= 4; ++failures) {
        auto flaky = std::make_shared<FlakySearch>(failures);
        RetryingSearch search(flaky, RetryPolicy{2, std::chrono::milliseconds(0)});
        if (failures <= 2) {
            EXPECT_NO_THROW(search.search("q", 1));
            EXPECT_EQ(flaky->calls, failures + 1);
        } else {
            EXPECT_THROW(search.search("q", 1), SearchProviderError);
            EXPECT_EQ(flaky->calls, 3);
        }
    }
}

// ---- backend factory ---------------------------------------------------------

TEST(Factory, ReplayNeedsCassette) {
    BackendOptions o;
    o.mode = BackendMode::Replay;
    EXPECT_THROW(open_backends(o, env_from({})), UsageError);
}

TEST(Factory, ReplayConstructsNoLiveClient) {
    const auto before = live_client_count();
    BackendOptions o;
    o.mode = BackendMode::Replay;
    o.cassette_path = test::cassettes_dir() / "glad.json";
    auto session = open_backends(o, env_from({{"LLM_API_KEY", "k"}, {"SEARCH_API_KEY", "k"}}));
    EXPECT_TRUE(session.backends.llm && session.backends.search && session.backends.fetch);
    EXPECT_EQ(live_client_count(), before);
}

TEST(Factory, LiveNamesMissingVariable) {
    BackendOptions o;
    o.mode = BackendMode::Live;
    try {
        open_backends(o, env_from({{"LLM_API_KEY", "k"}}));
        FAIL();
    } catch (const UsageError& e) {
        EXPECT_NE(std::string(e.what()).find("SEARCH_API_KEY"), std::string::npos);
        EXPECT_EQ(std::string(e.what()).find("LLM_API_KEY"), std::string::npos);
    }
}

TEST(Factory, LiveWithKeysBuildsClients) {
    const auto before = live_client_count();
    BackendOptions o;
    o.mode = BackendMode::Live;
    auto s = open_backends(o, env_from({{"LLM_API_KEY", "k"}, {"SEARCH_API_KEY", "k"}}));
    EXPECT_GT(live_client_count(), before);
    EXPECT_FALSE(s.cassette);
}

TEST(Factory, ModeNames) {
    EXPECT_EQ(parse_backend_mode("replay"), BackendMode::Replay);
    EXPECT_EQ(parse_backend_mode("record"), BackendMode::Record);
    EXPECT_EQ(parse_backend_mode("live"), BackendMode::Live);
    EXPECT_FALSE(parse_backend_mode("offline"));
}
