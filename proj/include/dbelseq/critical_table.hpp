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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dbelseq/sequential.hpp"

namespace dbelseq {

struct CriticalEntry {
  int max_n = 0;
  double alpha = 0.0;
  double critical = 0.0;

  bool operator==(const CriticalEntry&) const = default;
};

/// Monte Carlo critical values for one test over a grid of (N, alpha).
///
/// JSON form:
///   {"test": "dbel", "delta": 0.1, "reps": 25000, "seed": 7,
///    "entries": [{"N": 15, "alpha": 0.05, "critical": 4.288}, ...]}
/// delta is null for SSRT tables. Doubles are written in shortest
/// round-trip form, so save/load reproduces every value bit for bit.
struct CriticalValueTable {
  TestKind test = TestKind::Dbel;
  std::optional<double> delta;
  int reps = 0;
  std::uint64_t seed = 0;
  std::vector<CriticalEntry> entries;

  /// Entry lookup; alpha matches within 1e-12. nullopt when absent.
  std::optional<double> find(int max_n, double alpha) const;
  /// Like find() but throws ConfigError when the entry is missing.
  double critical(int max_n, double alpha) const;

  /// Appends entries of `other`; the tables must share test, delta, reps and seed.
  void merge(const CriticalValueTable& other);

  /// Human-readable descriptions of violated monotonicity invariants:
  /// non-increasing in alpha at fixed N, non-decreasing in N at fixed alpha.
  std::vector<std::string> monotonicity_violations() const;

  std::string to_json(int indent = -1) const;
  static CriticalValueTable from_json(const std::string& text);

  void save(const std::filesystem::path& path) const;
  static CriticalValueTable load(const std::filesystem::path& path);

  bool operator==(const CriticalValueTable&) const = default;
};

}  // namespace dbelseq
