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

#include "sca/backends/factory.hpp"

#include <iosfwd>

namespace sca::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitReplayMiss = 2;

/// Entry point behind the `sca` binary. The SBOM or eval report goes to
/// `out` (or the file named by --out/--report); logs and errors go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
            const backends::EnvLookup& env = backends::process_env);

} // namespace sca::cli
