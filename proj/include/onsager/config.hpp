// Copyright 2026 The Onsager Algebra Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ONSAGER_CONFIG_HPP
#define ONSAGER_CONFIG_HPP

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "onsager/errors.hpp"
#include "onsager/model.hpp"

namespace onsager {

namespace detail {

inline std::string trim(const std::string &s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

/// Drop a trailing '#' comment that is not inside a string.
inline std::string strip_comment(const std::string &line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

inline nlohmann::json parse_toml_scalar(const std::string &raw, int line_no) {
  std::string v = trim(raw);
  if (v.empty()) throw ConfigError("line " + std::to_string(line_no) + ": missing value");
  if (v.front() == '"') {
    if (v.size() < 2 || v.back() != '"') throw ConfigError("line " + std::to_string(line_no) + ": unterminated string");
    return v.substr(1, v.size() - 2);
  }
  if (v == "true") return true;
  if (v == "false") return false;
  std::string num;
  for (char c : v)
    if (c != '_') num += c;
  try {
    std::size_t used = 0;
    if (num.find_first_of(".eE") == std::string::npos && num != "inf" && num != "nan") {
      long long i = std::stoll(num, &used);
      if (used == num.size()) return i;
    }
    double d = std::stod(num, &used);
    if (used == num.size()) return d;
  } catch (const std::exception &) {
  }
  throw ConfigError("line " + std::to_string(line_no) + ": cannot parse value '" + v + "'");
}

inline nlohmann::json parse_toml_value(const std::string &raw, int line_no) {
  std::string v = trim(raw);
  if (!v.empty() && v.front() == '[') {
    if (v.back() != ']') throw ConfigError("line " + std::to_string(line_no) + ": unterminated array");
    nlohmann::json arr = nlohmann::json::array();
    std::string body = trim(v.substr(1, v.size() - 2));
    if (body.empty()) return arr;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (trim(item).empty()) continue;
      arr.push_back(parse_toml_scalar(item, line_no));
    }
    return arr;
  }
  return parse_toml_scalar(v, line_no);
}

}  // namespace detail

/// Flat TOML subset: `key = value` lines with strings, numbers, booleans and one-line arrays.
inline nlohmann::json parse_toml(const std::string &text) {
  nlohmann::json out = nlohmann::json::object();
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    std::string body = detail::trim(detail::strip_comment(line));
    if (body.empty()) continue;
    if (body.front() == '[') throw ConfigError("line " + std::to_string(line_no) + ": tables are not supported");
    auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    std::string key = detail::trim(body.substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    if (out.contains(key)) throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    out[key] = detail::parse_toml_value(body.substr(eq + 1), line_no);
  }
  return out;
}

/// ModelSpec from a JSON object; unknown keys are rejected.
inline ModelSpec model_from_json(const nlohmann::json &j) {
  static const std::set<std::string> known = {"kind", "L", "r", "Q", "boundary", "couplings", "lambda", "theta"};
  if (!j.is_object()) throw ConfigError("model config must be an object");
  for (const auto &[key, value] : j.items())
    if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");
  if (!j.contains("kind")) throw ConfigError("config lacks 'kind'");
  if (!j.contains("L")) throw ConfigError("config lacks 'L'");
  ModelSpec m;
  try {
    m.kind = model_kind_from_string(j.at("kind").get<std::string>());
    m.L = j.at("L").get<int>();
    m.r = j.value("r", 1);
    m.q = j.value("Q", 2);
    m.boundary = boundary_from_string(j.value("boundary", std::string("periodic")));
    if (j.contains("couplings")) m.couplings = j.at("couplings").get<std::vector<double>>();
    m.lambda = j.value("lambda", 1.0);
    m.theta = j.value("theta", 0.0);
  } catch (const nlohmann::json::exception &e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  if (!j.contains("r") && (m.kind == ModelKind::kFendley || m.kind == ModelKind::kFendleyDual ||
                           m.kind == ModelKind::kFendleyMixed || m.kind == ModelKind::kCpfm))
    throw ConfigError(to_string(m.kind) + " config lacks 'r'");
  m.validate();
  return m;
}

/// Parse a config string: JSON when it starts with '{', the TOML subset otherwise.
inline ModelSpec parse_model_config(const std::string &text) {
  std::string t = detail::trim(text);
  if (!t.empty() && t.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(t);
    } catch (const nlohmann::json::parse_error &e) {
      throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    return model_from_json(j);
  }
  return model_from_json(parse_toml(text));
}

inline ModelSpec load_model_config(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_model_config(ss.str());
}

inline nlohmann::json to_json(const ModelSpec &m) {
  return {{"kind", to_string(m.kind)}, {"L", m.L},           {"r", m.r},         {"Q", m.q},
          {"boundary", to_string(m.boundary)}, {"couplings", m.couplings}, {"lambda", m.lambda}, {"theta", m.theta}};
}

}  // namespace onsager

#endif  // ONSAGER_CONFIG_HPP
