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

#include <filesystem>
#include <string>

#include "dbelseq/distributions.hpp"

namespace dbelseq {

/// Generating model for one power/ASN study: Z = X - Y with X ~ x, Y ~ y.
///
/// TOML form:
///   name = "S1"
///   max_n = 50
///   alpha = 0.05
///   [x]
///   family = "normal"
///   params = [0.0, 1.0]
///   [y]
///   family = "normal"
///   params = [0.5, 1.0]
struct ScenarioSpec {
  std::string name;
  DistributionSpec x;
  DistributionSpec y;
  int max_n = 0;
  double alpha = 0.05;

  /// Throws ArgumentError unless max_n >= 4, alpha in (0, 1) and both
  /// distributions are valid.
  void validate() const;

  std::string to_toml() const;
  /// Throws ConfigError on unparseable or incomplete TOML.
  static ScenarioSpec from_toml(const std::string& text);
  static ScenarioSpec load(const std::filesystem::path& path);
};

}  // namespace dbelseq
