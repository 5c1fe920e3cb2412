// Copyright 2026 The exgraph Authors.
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

// Config files: JSON, or a TOML subset (`[section]` tables, `key = value`
// with strings, numbers and booleans, `#` comments). Both load into the same
// JSON object.

#ifndef EXGRAPH_CONFIG_HPP_
#define EXGRAPH_CONFIG_HPP_

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

namespace exgraph {

inline constexpr const char* kConfigEnvVar = "EXGRAPH_CONFIG";

// Throws Error(kInvalidConfig) with the line number on a syntax error.
nlohmann::json parse_toml_subset(std::string_view text);

// ".toml" files go through parse_toml_subset, anything else is JSON.
// Throws Error(kIoError) or Error(kInvalidConfig).
nlohmann::json load_config_file(const std::string& path);

// Contents of the file named by EXGRAPH_CONFIG, if set.
std::optional<nlohmann::json> load_default_config();

// `config[name]` when it is an object, otherwise an empty object.
nlohmann::json config_section(const nlohmann::json& config,
                              std::string_view name);

}  // namespace exgraph

#endif  // EXGRAPH_CONFIG_HPP_
