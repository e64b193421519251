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

#include "sca/core/error.hpp"
#include "sca/fixtures/corpus.hpp"

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <iostream>

int main(int argc, char** argv) {
    std::string fixtures = "fixtures";
    std::string cassettes = "cassettes";
    CLI::App app{"Write the fixture tree and record the scenario cassettes", "make_fixtures"};
    app.add_option("--fixtures", fixtures, "Fixture directory")->capture_default_str();
    app.add_option("--cassettes", cassettes, "Cassette directory")->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    spdlog::set_level(spdlog::level::warn);
    try {
        sca::fixtures::write_fixture_tree(fixtures);
        sca::fixtures::write_cassettes(fixtures, cassettes);
    } catch (const sca::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
