// Copyright 2026 The dsapf Authors
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

#ifndef DSAPF_TOOLS_CLI_HPP
#define DSAPF_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace dsapf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;

/// Runs the command line `args` (args[0] is the program name) and returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Expands "1,2,5" and integer ranges such as "1..6" into individual values.
[[nodiscard]] std::vector<std::string> expand_values(const std::string& list);

}  // namespace dsapf::cli

#endif
