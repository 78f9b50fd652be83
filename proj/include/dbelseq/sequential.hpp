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

// Sequential stopping rules: after each new difference recompute the test
// statistic on the whole prefix and reject at the first n <= N where it
// reaches the critical value; otherwise stop without rejection at n = N.

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dbelseq/dbel.hpp"
#include "dbelseq/sample.hpp"
#include "dbelseq/signed_rank.hpp"

namespace dbelseq {

enum class TestKind { Dbel, Ssrt };

std::string_view to_string(TestKind test) noexcept;
/// Accepts "dbel" or "ssrt" (case-insensitive).
TestKind parse_test_kind(std::string_view text);

struct StoppingPolicy {
  TestKind test = TestKind::Dbel;
  int max_n = 0;
  double alpha = 0.05;
  double critical = 0.0;
  double delta = kDefaultDelta;  // DBEL only

  /// Throws ArgumentError on max_n < 1, alpha outside (0, 1), a non-finite
  /// critical value or an invalid delta.
  void validate() const;
};

enum class Decision { Continue, RejectStop, AcceptStop };

std::string_view to_string(Decision decision) noexcept;

struct TrajectoryPoint {
  int n = 0;
  double statistic = 0.0;
  double critical = 0.0;
  Decision decision = Decision::Continue;
};

struct SequentialOutcome {
  int stopped_at = 0;
  bool rejected = false;
  /// The input ran out before max_n with no decision; stopped_at is then the
  /// number of differences consumed.
  bool inconclusive = false;
  std::vector<TrajectoryPoint> trajectory;
};

/// Recomputes one test statistic as differences arrive.
///
/// DBEL keeps a sorted buffer (insertion) and re-evaluates log V_n from
/// scratch; SSRT keeps |z| sorted and recomputes midranks.
class StatisticTracker {
 public:
  explicit StatisticTracker(TestKind test, double delta = kDefaultDelta);

  /// Adds z (must be finite; not checked here) and returns the statistic on
  /// the full prefix.
  double push(double z);
  void clear();
  int size() const noexcept { return n_; }
  TestKind test() const noexcept { return test_; }

 private:
  TestKind test_;
  int n_ = 0;
  std::vector<double> sorted_;
  DbelKernel kernel_;
  SignedRankTracker ranks_;
};

/// Single-trial monitor. Refuses further input once a stop decision is made.
class MonitorState {
 public:
  explicit MonitorState(const StoppingPolicy& policy);

  /// Throws ArgumentError for non-finite z and StateError after a stop.
  TrajectoryPoint feed(double z);

  bool stopped() const noexcept { return stopped_; }
  int size() const noexcept { return tracker_.size(); }
  const StoppingPolicy& policy() const noexcept { return policy_; }

 private:
  StoppingPolicy policy_;
  StatisticTracker tracker_;
  bool stopped_ = false;
};

/// Feeds z in order until a stop decision or the input ends.
SequentialOutcome run_to_completion(const StoppingPolicy& policy, std::span<const double> z);
SequentialOutcome run_to_completion(const StoppingPolicy& policy, const DifferenceSample& z);

struct StopResult {
  int stopped_at = 0;
  bool rejected = false;
};

/// The stopping decision of run_to_completion without recording the
/// trajectory; the Monte Carlo hot path. Clears `tracker` first and consumes
/// at most max_n values of z.
StopResult first_crossing(StatisticTracker& tracker, std::span<const double> z, int max_n,
                          double critical);

/// Statistic on every prefix z[0..n), n = 1..size.
std::vector<double> statistic_path(TestKind test, std::span<const double> z,
                                   double delta = kDefaultDelta);

/// max over n <= N of the statistic (DBTS_N for DBEL, W_N for SSRT).
double max_statistic(TestKind test, std::span<const double> z, double delta = kDefaultDelta);

/// Fills `out` with replication `rep`'s differences. Must be a pure function
/// of (rep, out.size()) so results do not depend on scheduling.
using DifferenceGenerator = std::function<void(std::uint64_t rep, std::span<double> out)>;

struct ConsistencyRow {
  int max_n = 0;
  double threshold = 0.0;  // N^gamma
  double null_fraction = 0.0;
  double alt_fraction = 0.0;
};

/// Estimates Pr{ max_{n <= N} log V_n > N^gamma } under a null and an
/// alternative generator for each N. Replication r uses the same generated
/// prefix for every N, so rows are nested.
///
/// gamma must lie in (0.75, 1); every N >= 4; reps >= 1000.
std::vector<ConsistencyRow> empirical_consistency_check(std::span<const int> max_ns, double gamma,
                                                        int reps,
                                                        const DifferenceGenerator& null_gen,
                                                        const DifferenceGenerator& alt_gen,
                                                        double delta = kDefaultDelta,
                                                        int threads = 0);

}  // namespace dbelseq
