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

#include "dbelseq/critical_table.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "dbelseq/error.hpp"

namespace dbelseq {
namespace {

constexpr double kAlphaMatch = 1e-12;

}  // namespace

std::optional<double> CriticalValueTable::find(int max_n, double alpha) const {
  for (const auto& e : entries) {
    if (e.max_n == max_n && std::abs(e.alpha - alpha) <= kAlphaMatch) return e.critical;
  }
  return std::nullopt;
}

double CriticalValueTable::critical(int max_n, double alpha) const {
  if (auto v = find(max_n, alpha)) return *v;
  std::ostringstream msg;
  msg << "no " << to_string(test) << " critical value for N=" << max_n << ", alpha=" << alpha;
  throw ConfigError(msg.str());
}

void CriticalValueTable::merge(const CriticalValueTable& other) {
  if (other.test != test || other.delta != delta || other.reps != reps || other.seed != seed) {
    throw ConfigError("cannot merge critical-value tables with different settings");
  }
  for (const auto& e : other.entries) {
    if (!find(e.max_n, e.alpha)) entries.push_back(e);
  }
}

std::vector<std::string> CriticalValueTable::monotonicity_violations() const {
  std::vector<std::string> out;
  std::map<int, std::vector<CriticalEntry>> by_n;
  std::map<double, std::vector<CriticalEntry>> by_alpha;
  for (const auto& e : entries) {
    by_n[e.max_n].push_back(e);
    by_alpha[e.alpha].push_back(e);
  }
  for (auto& [n, row] : by_n) {
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.alpha < b.alpha; });
    for (std::size_t i = 1; i < row.size(); ++i) {
      if (row[i].critical > row[i - 1].critical) {
        std::ostringstream msg;
        msg << "N=" << n << ": critical rises from " << row[i - 1].critical << " at alpha="
            << row[i - 1].alpha << " to " << row[i].critical << " at alpha=" << row[i].alpha;
        out.push_back(msg.str());
      }
    }
  }
  for (auto& [alpha, column] : by_alpha) {
    std::sort(column.begin(), column.end(),
              [](const auto& a, const auto& b) { return a.max_n < b.max_n; });
    for (std::size_t i = 1; i < column.size(); ++i) {
      if (column[i].critical < column[i - 1].critical) {
        std::ostringstream msg;
        msg << "alpha=" << alpha << ": critical falls from " << column[i - 1].critical
            << " at N=" << column[i - 1].max_n << " to " << column[i].critical
            << " at N=" << column[i].max_n;
        out.push_back(msg.str());
      }
    }
  }
  return out;
}

std::string CriticalValueTable::to_json(int indent) const {
  nlohmann::ordered_json doc;
  doc["test"] = std::string(to_string(test));
  doc["delta"] = delta ? nlohmann::ordered_json(*delta) : nlohmann::ordered_json(nullptr);
  doc["reps"] = reps;
  doc["seed"] = seed;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    rows.push_back({{"N", e.max_n}, {"alpha", e.alpha}, {"critical", e.critical}});
  }
  doc["entries"] = std::move(rows);
  return doc.dump(indent);
}

CriticalValueTable CriticalValueTable::from_json(const std::string& text) {
  CriticalValueTable table;
  try {
    const auto doc = nlohmann::json::parse(text);
    table.test = parse_test_kind(doc.at("test").get<std::string>());
    if (doc.contains("delta") && !doc.at("delta").is_null()) {
      table.delta = doc.at("delta").get<double>();
    }
    table.reps = doc.at("reps").get<int>();
    table.seed = doc.at("seed").get<std::uint64_t>();
    for (const auto& row : doc.at("entries")) {
      table.entries.push_back({row.at("N").get<int>(), row.at("alpha").get<double>(),
                               row.at("critical").get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed critical-value table: ") + e.what());
  } catch (const ArgumentError& e) {
    throw ConfigError(std::string("malformed critical-value table: ") + e.what());
  }
  return table;
}

void CriticalValueTable::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << to_json(2) << '\n';
}

CriticalValueTable CriticalValueTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return from_json(text.str());
}

}  // namespace dbelseq
