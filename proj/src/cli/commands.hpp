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

// Command-line front end. Each subcommand writes machine-readable output to
// `out` and diagnostics to `err`, and returns a process exit code:
//   0  success
//   2  usage or validation error (bad flags, malformed input, missing table entry)
//   3  monitor input ended before max_n without a stop decision

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dbelseq/quantile.hpp"
#include "dbelseq/sequential.hpp"

namespace dbelseq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInconclusive = 3;

inline constexpr std::uint64_t kDefaultSeed = 20190101;

struct TabulateArgs {
  TestKind test = TestKind::Dbel;
  std::vector<int> max_ns;
  std::vector<double> alphas{0.05};
  int reps = 25000;
  std::uint64_t seed = kDefaultSeed;
  double delta = kDefaultDelta;
  QuantileMethod method = QuantileMethod::OrderStatistic;
  int threads = 0;
  std::optional<std::string> out_path;
  bool pretty = false;
};

enum class InputFormat { Diffs, Pairs };

struct MonitorArgs {
  TestKind test = TestKind::Dbel;
  std::optional<std::string> table_path;
  std::optional<double> critical;
  int max_n = 0;
  double alpha = 0.05;
  InputFormat format = InputFormat::Diffs;
  bool negate = false;
  double delta = kDefaultDelta;
  bool pretty = false;
};

struct SimulateArgs {
  std::string scenario_path;
  int reps = 10000;
  std::uint64_t seed = kDefaultSeed;
  std::vector<std::string> table_paths;
  std::vector<TestKind> tests{TestKind::Dbel, TestKind::Ssrt};
  int tab_reps = 25000;
  std::uint64_t tab_seed = kDefaultSeed;
  double delta = kDefaultDelta;
  int threads = 0;
  bool json = false;
  bool pretty = false;
};

struct BootstrapArgs {
  std::string data_path;
  std::vector<int> max_ns;
  int reps = 5000;
  std::uint64_t seed = kDefaultSeed;
  bool with_replacement = false;
  double alpha = 0.05;
  std::optional<std::string> dbel_table_path;
  std::optional<std::string> ssrt_table_path;
  int tab_reps = 25000;
  std::uint64_t tab_seed = kDefaultSeed;
  double delta = kDefaultDelta;
  bool negate = false;
  int threads = 0;
  bool json = false;
  bool pretty = false;
};

int cmd_tabulate(const TabulateArgs& args, std::ostream& out, std::ostream& err);
int cmd_monitor(const MonitorArgs& args, std::istream& in, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err);
int cmd_bootstrap(const BootstrapArgs& args, std::ostream& out, std::ostream& err);

/// Reads differences from CSV text: one value (z) or two values (x,y ->
/// z = x - y) per line, '#' comments and blank lines skipped, an optional
/// non-numeric header line. Throws ArgumentError naming the offending line.
std::vector<double> read_differences(std::istream& in, bool negate);

/// Parses argv with CLI11 and dispatches to a subcommand.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace dbelseq::cli
