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
#include "sca/backends/cassette.hpp"
#include "sca/core/clock.hpp"
#include "sca/evidence/tree.hpp"
#include "sca/fixtures/fixture_so.hpp"

#include <atomic>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace sca::test {

std::filesystem::path source_dir();
std::filesystem::path fixtures_dir();
std::filesystem::path cassettes_dir();

std::string read_file(const std::filesystem::path& p);
void write_file(const std::filesystem::path& p, const std::string& content);

class TempDir {
public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

backends::Backends replay_backends(const std::filesystem::path& cassette);

/// Deterministic SBOM timestamp for tests.
inline UtcTime fixed_time() { return UtcTime(std::chrono::seconds(1'767'225'600)); } // 2026-01-01

/// Clock whose elapsed() moves forward by `step` on every reading.
class SteppingClock final : public Clock {
public:
    explicit SteppingClock(std::chrono::milliseconds step) : step_(step.count()) {}
    UtcTime now_utc() const override { return fixed_time(); }
    std::chrono::milliseconds elapsed() const override { return std::chrono::milliseconds(ticks_ += step_); }

private:
    std::int64_t step_;
    mutable std::atomic<std::int64_t> ticks_{0};
};

// ---- independent oracles ---------------------------------------------------

/// Maximal runs of bytes in 0x20..0x7E of length >= min_run, by a separate scan.
std::vector<std::string> oracle_printable_runs(const std::vector<std::byte>& bytes, std::size_t min_run);

/// Tree listing rebuilt from a flat recursive_directory_iterator walk.
std::string oracle_tree(const std::filesystem::path& root, const evidence::TreeDumpConfig& cfg,
                        const std::string& label = ".");

/// Non-overlapping, non-touching random printable strings inside [0, size).
std::vector<fixtures::PlantedString> random_plan(std::mt19937& rng, std::size_t count, std::size_t size,
                                                 std::size_t min_len = 4, std::size_t max_len = 40);

std::string random_printable(std::mt19937& rng, std::size_t len);

/// Random files and directories (some hidden, some filtered by extension)
/// under `root`, at most `budget` entries in total.
void random_tree(const std::filesystem::path& root, std::mt19937& rng, int depth, int& budget);

} // namespace sca::test
