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

// Monte Carlo studies: critical-value tabulation, power/ASN under a
// generating scenario, and subsample (bootstrap) analyses of a fixed dataset.
//
// Replication r always draws from RngStream(seed, r) (bootstrap: a stream id
// that also encodes N), and aggregates are integer counts, so every result
// is bit-identical for any thread count.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dbelseq/critical_table.hpp"
#include "dbelseq/distributions.hpp"
#include "dbelseq/quantile.hpp"
#include "dbelseq/scenario.hpp"
#include "dbelseq/sequential.hpp"

namespace dbelseq {

inline constexpr int kDefaultTabulationReps = 25000;
inline constexpr int kDefaultPowerReps = 10000;
inline constexpr int kDefaultBootstrapReps = 5000;

struct TabulationOptions {
  int reps = kDefaultTabulationReps;
  std::uint64_t seed = 1;
  double delta = kDefaultDelta;
  QuantileMethod method = QuantileMethod::OrderStatistic;
  /// Any continuous law symmetric about zero gives the same null law.
  DistributionSpec null_dist = DistributionSpec::normal(0.0, 1.0);
  int threads = 0;
};

/// Per-replication maximum statistic over n <= N for each requested N, in
/// replication order: result[k][r] belongs to max_ns[k]. Replication r
/// draws one path of length max(max_ns), so rows for different N share
/// prefixes.
std::vector<std::vector<double>> simulate_max_statistics(TestKind test,
                                                         std::span<const int> max_ns,
                                                         const TabulationOptions& options);

/// Empirical upper alpha-quantiles of max_{n <= N} statistic under the null.
CriticalValueTable tabulate_critical(TestKind test, int max_n, std::span<const double> alphas,
                                     const TabulationOptions& options = {});
CriticalValueTable tabulate_critical(TestKind test, std::span<const int> max_ns,
                                     std::span<const double> alphas,
                                     const TabulationOptions& options = {});

struct PowerResult {
  ScenarioSpec scenario;
  TestKind test = TestKind::Dbel;
  double critical = 0.0;
  double power = 0.0;
  double asn = 0.0;
  long rejections = 0;
  long total_sample = 0;
  int reps = 0;
  std::uint64_t seed = 0;
};

struct PowerOptions {
  int reps = kDefaultPowerReps;
  std::uint64_t seed = 1;
  int threads = 0;
};

/// Runs every table's test on the same simulated differences (X drawn before
/// Y within a replication). Each table must contain (max_n, alpha) of the
/// scenario; otherwise ConfigError.
std::vector<PowerResult> power_study(const ScenarioSpec& scenario,
                                     std::span<const CriticalValueTable> tables,
                                     const PowerOptions& options = {});
PowerResult power_study(const ScenarioSpec& scenario, const CriticalValueTable& table,
                        const PowerOptions& options = {});

struct BootstrapOptions {
  std::vector<int> max_ns;
  int reps = kDefaultBootstrapReps;
  std::uint64_t seed = 1;
  double alpha = 0.05;
  bool with_replacement = false;
  int threads = 0;
};

struct BootstrapArm {
  double critical = 0.0;
  double rejection_rate = 0.0;
  double asn = 0.0;
  long rejections = 0;
  long total_sample = 0;
};

struct BootstrapRow {
  int max_n = 0;
  BootstrapArm dbel;
  BootstrapArm ssrt;
  int reps = 0;
};

/// For each N, repeatedly draws N of the data's differences (without
/// replacement unless requested), runs both sequential tests on the draw in
/// order, and reports rejection rate and ASN. Requires N < data size.
std::vector<BootstrapRow> bootstrap_study(const DifferenceSample& data,
                                          const CriticalValueTable& dbel_table,
                                          const CriticalValueTable& ssrt_table,
                                          const BootstrapOptions& options);

}  // namespace dbelseq
