// Copyright 2026 The dbelseq Authors.
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

#include "dbelseq/scenario.hpp"

#include <fstream>
#include <sstream>

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

#include "dbelseq/error.hpp"

namespace dbelseq {
namespace {

DistributionSpec read_distribution(const toml::table& root, const char* key) {
  const toml::table* section = root[key].as_table();
  if (!section) throw ConfigError(std::string("scenario is missing the [") + key + "] table");
  const auto family = (*section)["family"].value<std::string>();
  if (!family) throw ConfigError(std::string("[") + key + "] needs a string 'family'");
  const toml::array* params = (*section)["params"].as_array();
  if (!params) throw ConfigError(std::string("[") + key + "] needs a 'params' array");

  DistributionSpec dist;
  try {
    dist.family = parse_family(*family);
  } catch (const ArgumentError& e) {
    throw ConfigError(e.what());
  }
  dist.params.clear();
  for (const auto& node : *params) {
    const auto value = node.value<double>();  // integers convert too
    if (!value) throw ConfigError(std::string("[") + key + "] params must be numbers");
    dist.params.push_back(*value);
  }
  return dist;
}

void write_distribution(std::ostream& out, const char* key, const DistributionSpec& dist) {
  toml::array params;
  for (double p : dist.params) params.push_back(p);
  toml::table section{{"family", std::string(to_string(dist.family))},
                      {"params", std::move(params)}};
  out << '[' << key << "]\n" << section << '\n';
}

}  // namespace

void ScenarioSpec::validate() const {
  if (max_n < 4) throw ArgumentError("scenario max_n must be at least 4");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("scenario alpha must lie in (0, 1)");
  x.validate();
  y.validate();
}

std::string ScenarioSpec::to_toml() const {
  std::ostringstream out;
  toml::table head{{"name", name}, {"max_n", max_n}, {"alpha", alpha}};
  out << head << "\n\n";
  write_distribution(out, "x", x);
  out << '\n';
  write_distribution(out, "y", y);
  return out.str();
}

ScenarioSpec ScenarioSpec::from_toml(const std::string& text) {
  toml::table root;
  try {
    root = toml::parse(text);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "invalid scenario TOML: " << e.description() << " at line " << e.source().begin.line;
    throw ConfigError(msg.str());
  }
  ScenarioSpec spec;
  spec.name = root["name"].value_or(std::string("scenario"));
  const auto max_n = root["max_n"].value<std::int64_t>();
  if (!max_n) throw ConfigError("scenario needs an integer 'max_n'");
  spec.max_n = static_cast<int>(*max_n);
  const auto alpha = root["alpha"].value<double>();
  if (!alpha) throw ConfigError("scenario needs a numeric 'alpha'");
  spec.alpha = *alpha;
  spec.x = read_distribution(root, "x");
  spec.y = read_distribution(root, "y");
  try {
    spec.validate();
  } catch (const ArgumentError& e) {
    throw ConfigError(std::string("invalid scenario: ") + e.what());
  }
  return spec;
}

ScenarioSpec ScenarioSpec::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return from_toml(text.str());
}

}  // namespace dbelseq
