// Copyright 2026 The rptrend Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Command-line front end. run_cli is the whole program minus process setup,
// so tests can drive it with captured streams.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numeric error.

#ifndef RPTREND_TOOLS_CLI_HPP_
#define RPTREND_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace rptrend::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitNumeric = 3;

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rptrend::cli

#endif  // RPTREND_TOOLS_CLI_HPP_
