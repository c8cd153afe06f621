// Copyright 2026 The qdil Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <ostream>

namespace qdil::cli {

/** Process exit codes. */
enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kInputError = 2,
};

/**
 * Entry point shared by the `qdil` binary and the tests. Reports go to `out`
 * as JSON; diagnostics go to `err` as a JSON object with an "error" kind.
 */
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qdil::cli
