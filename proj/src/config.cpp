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

#include "exgraph/config.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

#include "exgraph/atomic_file.hpp"
#include "exgraph/error.hpp"

namespace exgraph {
namespace {

std::string_view strip(std::string_view s) {
  size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  size_t e = s.size();
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool is_bare_key(std::string_view k) {
  if (k.empty()) return false;
  for (char c : k) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') {
      return false;
    }
  }
  return true;
}

// Drops a trailing comment that is not inside a string.
std::string_view without_comment(std::string_view line) {
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"' && (i == 0 || line[i - 1] != '\\')) quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

nlohmann::json parse_value(std::string_view v, size_t line_no) {
  auto fail = [&](const std::string& what) -> nlohmann::json {
    throw Error(ErrorCode::kInvalidConfig,
                "config line " + std::to_string(line_no) + ": " + what);
  };
  if (v.empty()) return fail("missing value");
  if (v == "true") return true;
  if (v == "false") return false;
  if (v.front() == '"') {
    if (v.size() < 2 || v.back() != '"') return fail("unterminated string");
    std::string out;
    for (size_t i = 1; i + 1 < v.size(); ++i) {
      char c = v[i];
      if (c != '\\') {
        out += c;
        continue;
      }
      if (++i + 1 >= v.size()) return fail("dangling escape");
      switch (v[i]) {
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        default: return fail("unsupported escape");
      }
    }
    return out;
  }
  std::string num(v);
  std::erase(num, '_');
  char* end = nullptr;
  if (num.find_first_of(".eE") == std::string::npos) {
    long long i = std::strtoll(num.c_str(), &end, 10);
    if (end != num.c_str() && *end == '\0') return i;
  } else {
    double d = std::strtod(num.c_str(), &end);
    if (end != num.c_str() && *end == '\0') return d;
  }
  return fail("unsupported value '" + std::string(v) + "'");
}

}  // namespace

nlohmann::json parse_toml_subset(std::string_view text) {
  nlohmann::json root = nlohmann::json::object();
  nlohmann::json* table = &root;
  std::istringstream in{std::string(text)};
  std::string raw;
  size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = strip(without_comment(raw));
    if (line.empty()) continue;
    auto fail = [&](const std::string& what) {
      throw Error(ErrorCode::kInvalidConfig,
                  "config line " + std::to_string(line_no) + ": " + what);
    };
    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated table header");
      std::string_view name = strip(line.substr(1, line.size() - 2));
      if (!is_bare_key(name)) fail("bad table name");
      std::string key(name);
      if (root.contains(key)) fail("duplicate table '" + key + "'");
      root[key] = nlohmann::json::object();
      table = &root[key];
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string_view::npos) fail("expected key = value");
    std::string_view key = strip(line.substr(0, eq));
    if (!is_bare_key(key)) fail("bad key");
    std::string k(key);
    if (table->contains(k)) fail("duplicate key '" + k + "'");
    (*table)[k] = parse_value(strip(line.substr(eq + 1)), line_no);
  }
  return root;
}

nlohmann::json load_config_file(const std::string& path) {
  std::string text = read_file(path);
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".toml") == 0) {
    try {
      return parse_toml_subset(text);
    } catch (const Error& e) {
      throw Error(e.code(), path + ": " + e.what());
    }
  }
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidConfig, path + ": " + e.what());
  }
}

std::optional<nlohmann::json> load_default_config() {
  const char* path = std::getenv(kConfigEnvVar);
  if (path == nullptr || *path == '\0') return std::nullopt;
  return load_config_file(path);
}

nlohmann::json config_section(const nlohmann::json& config,
                              std::string_view name) {
  std::string key(name);
  if (config.is_object() && config.contains(key) && config[key].is_object()) {
    return config[key];
  }
  return nlohmann::json::object();
}

}  // namespace exgraph
