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

#ifndef DSAPF_SCENARIO_HPP
#define DSAPF_SCENARIO_HPP

#include <dsapf/config.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace dsapf {

/// Parses flat `key = value` lines over the defaults.
/**
 * Blank lines and text after `#` are ignored. Keys are SystemConfig field
 * names; an unknown key, a line without `=`, a repeated key, or an
 * unparsable value throws ConfigError naming the key and line. The result is
 * not validated.
 */
[[nodiscard]] SystemConfig parse_scenario(std::string_view text);

/// Reads and parses a scenario file. Throws IoError when it cannot be read.
[[nodiscard]] SystemConfig load_scenario(const std::filesystem::path& path);

/// Every field as `key = value`, in a form parse_scenario reads back exactly.
[[nodiscard]] std::string format_scenario(const SystemConfig& config);

}  // namespace dsapf

#endif
