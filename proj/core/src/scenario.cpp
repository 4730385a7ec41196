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

#include <dsapf/scenario.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace dsapf {

namespace {

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = text.find_last_not_of(" \t\r");
  return text.substr(first, last - first + 1);
}

}  // namespace

SystemConfig parse_scenario(std::string_view text) {
  SystemConfig config;
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto end = text.find('\n');
    auto line = text.substr(0, end);
    text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(line_no);
    if (eq == std::string_view::npos) {
      throw ConfigError{std::string{line}, where + ": expected key = value"};
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    const auto* field = find_config_field(key);
    if (field == nullptr) {
      throw ConfigError{std::string{key}, where + ": unknown key '" + std::string{key} + "'"};
    }
    if (!seen.emplace(key).second) {
      throw ConfigError{std::string{key}, where + ": duplicate key '" + std::string{key} + "'"};
    }
    try {
      field->set(config, value);
    } catch (const ConfigError& error) {
      throw ConfigError{error.field(), where + ": " + error.what()};
    }
  }
  return config;
}

SystemConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in{path, std::ios::binary};
  if (!in) {
    throw IoError{path.string(), "cannot read config"};
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

std::string format_scenario(const SystemConfig& config) {
  std::string text;
  for (const auto& field : config_fields()) {
    text += std::string{field.name} + " = " + field.get(config) + "\n";
  }
  return text;
}

}  // namespace dsapf
