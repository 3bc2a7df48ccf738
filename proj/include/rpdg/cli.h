// Copyright 2026 The RPDG Authors
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


#ifndef RPDG_CLI_H_
#define RPDG_CLI_H_

#include <ostream>

namespace rpdg {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitSolver = 2;
inline constexpr int kExitCheckFailed = 3;

// Entry point of rpdg_bench. Subcommands: solve, ensemble, lowerbound,
// validate, plot. Results go to files; `out` only receives the validate
// report and help text, `err` receives diagnostics.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace rpdg

#endif  // RPDG_CLI_H_
