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

#include "sca/backends/backend.hpp"
#include "sca/core/error.hpp"

#include <chrono>
#include <memory>
#include <thread>
#include <utility>

namespace sca::backends {

struct RetryPolicy {
    int retries = 2;
    std::chrono::milliseconds base_delay{500};
};

/// Calls fn, retrying ProviderError up to policy.retries times with delays
/// base, 2*base, 4*base, ... The last error propagates.
template <typename Fn>
auto with_retries(const RetryPolicy& policy, Fn&& fn) -> decltype(fn()) {
    auto delay = policy.base_delay;
    for (int attempt = 0;; ++attempt) {
        try {
            return fn();
        } catch (const ProviderError&) {
            if (attempt >= policy.retries) throw;
        }
        if (delay.count() > 0) std::this_thread::sleep_for(delay);
        delay *= 2;
    }
}

class RetryingChat final : public ChatBackend {
public:
    RetryingChat(std::shared_ptr<ChatBackend> inner, RetryPolicy policy) : inner_(std::move(inner)), policy_(policy) {}
    ChatResponse chat(const ChatRequest& req) override {
        return with_retries(policy_, [&] { return inner_->chat(req); });
    }

private:
    std::shared_ptr<ChatBackend> inner_;
    RetryPolicy policy_;
};

class RetryingSearch final : public SearchBackend {
public:
    RetryingSearch(std::shared_ptr<SearchBackend> inner, RetryPolicy policy)
        : inner_(std::move(inner)), policy_(policy) {}
    std::vector<SearchHit> search(const std::string& query, int pages) override {
        return with_retries(policy_, [&] { return inner_->search(query, pages); });
    }

private:
    std::shared_ptr<SearchBackend> inner_;
    RetryPolicy policy_;
};

} // namespace sca::backends
