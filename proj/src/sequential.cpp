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

#include "dbelseq/sequential.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <memory>
#include <string>

#include "dbelseq/error.hpp"
#include "dbelseq/parallel.hpp"

namespace dbelseq {

std::string_view to_string(TestKind test) noexcept {
  return test == TestKind::Dbel ? "dbel" : "ssrt";
}

TestKind parse_test_kind(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "dbel") return TestKind::Dbel;
  if (lower == "ssrt") return TestKind::Ssrt;
  throw ArgumentError("unknown test '" + std::string(text) + "' (expected dbel or ssrt)");
}

std::string_view to_string(Decision decision) noexcept {
  switch (decision) {
    case Decision::Continue:
      return "continue";
    case Decision::RejectStop:
      return "reject_stop";
    case Decision::AcceptStop:
      return "accept_stop";
  }
  return "continue";
}

void StoppingPolicy::validate() const {
  if (max_n < 1) throw ArgumentError("max_n must be at least 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("alpha must lie in (0, 1)");
  if (!std::isfinite(critical)) throw ArgumentError("critical value must be finite");
  if (test == TestKind::Dbel) validate_delta(delta);
}

StatisticTracker::StatisticTracker(TestKind test, double delta) : test_(test), kernel_(delta) {}

double StatisticTracker::push(double z) {
  ++n_;
  if (test_ == TestKind::Ssrt) return ranks_.push(z).ts;
  sorted_.insert(std::upper_bound(sorted_.begin(), sorted_.end(), z), z);
  return kernel_.log_vn(sorted_);
}

void StatisticTracker::clear() {
  n_ = 0;
  sorted_.clear();
  ranks_.clear();
}

MonitorState::MonitorState(const StoppingPolicy& policy)
    : policy_(policy), tracker_(policy.test, policy.delta) {
  policy_.validate();
}

TrajectoryPoint MonitorState::feed(double z) {
  if (stopped_) throw StateError("monitor has already stopped");
  if (!std::isfinite(z)) throw ArgumentError("non-finite difference");
  TrajectoryPoint point;
  point.statistic = tracker_.push(z);
  point.n = tracker_.size();
  point.critical = policy_.critical;
  if (point.statistic >= policy_.critical) {
    point.decision = Decision::RejectStop;
    stopped_ = true;
  } else if (point.n >= policy_.max_n) {
    point.decision = Decision::AcceptStop;
    stopped_ = true;
  }
  return point;
}

SequentialOutcome run_to_completion(const StoppingPolicy& policy, std::span<const double> z) {
  if (z.empty()) throw ArgumentError("run_to_completion needs at least one difference");
  MonitorState state(policy);
  SequentialOutcome out;
  for (double v : z) {
    out.trajectory.push_back(state.feed(v));
    if (state.stopped()) break;
  }
  const TrajectoryPoint& last = out.trajectory.back();
  out.stopped_at = last.n;
  out.rejected = last.decision == Decision::RejectStop;
  out.inconclusive = last.decision == Decision::Continue;
  return out;
}

SequentialOutcome run_to_completion(const StoppingPolicy& policy, const DifferenceSample& z) {
  return run_to_completion(policy, z.values());
}

StopResult first_crossing(StatisticTracker& tracker, std::span<const double> z, int max_n,
                          double critical) {
  tracker.clear();
  const int limit = std::min<int>(max_n, static_cast<int>(z.size()));
  for (int n = 1; n <= limit; ++n) {
    if (tracker.push(z[static_cast<std::size_t>(n - 1)]) >= critical) return {n, true};
  }
  return {limit, false};
}

std::vector<double> statistic_path(TestKind test, std::span<const double> z, double delta) {
  require_finite(z);
  StatisticTracker tracker(test, delta);
  std::vector<double> path;
  path.reserve(z.size());
  for (double v : z) path.push_back(tracker.push(v));
  return path;
}

double max_statistic(TestKind test, std::span<const double> z, double delta) {
  if (z.empty()) throw ArgumentError("max_statistic needs at least one difference");
  const auto path = statistic_path(test, z, delta);
  return *std::max_element(path.begin(), path.end());
}

std::vector<ConsistencyRow> empirical_consistency_check(std::span<const int> max_ns, double gamma,
                                                        int reps,
                                                        const DifferenceGenerator& null_gen,
                                                        const DifferenceGenerator& alt_gen,
                                                        double delta, int threads) {
  if (!(gamma > 0.75 && gamma < 1.0)) throw ArgumentError("gamma must lie in (0.75, 1)");
  if (max_ns.empty()) throw ArgumentError("need at least one N");
  if (reps < 1000) throw ArgumentError("reps must be at least 1000");
  for (int n : max_ns) {
    if (n < 4) throw ArgumentError("every N must be at least 4");
  }
  validate_delta(delta);
  const int longest = *std::max_element(max_ns.begin(), max_ns.end());
  const std::size_t rows = max_ns.size();

  std::vector<double> thresholds(rows);
  for (std::size_t k = 0; k < rows; ++k) thresholds[k] = std::pow(max_ns[k], gamma);

  // crossed[(rep * 2 + arm) * rows + k]: one byte per cell, written by
  // exactly one replication, summed afterwards.
  std::vector<unsigned char> crossed(static_cast<std::size_t>(reps) * 2 * rows, 0);
  const int width = resolve_threads(threads);
  std::vector<std::unique_ptr<StatisticTracker>> trackers;
  std::vector<std::vector<double>> buffers(static_cast<std::size_t>(width),
                                           std::vector<double>(longest));
  for (int w = 0; w < width; ++w) {
    trackers.push_back(std::make_unique<StatisticTracker>(TestKind::Dbel, delta));
  }

  parallel_for(static_cast<std::int64_t>(reps) * 2, width, [&](std::int64_t cell, int worker) {
    const auto rep = static_cast<std::uint64_t>(cell / 2);
    const bool alternative = (cell % 2) == 1;
    auto& z = buffers[static_cast<std::size_t>(worker)];
    (alternative ? alt_gen : null_gen)(rep, z);
    require_finite(z);
    auto& tracker = *trackers[static_cast<std::size_t>(worker)];
    tracker.clear();
    double running_max = -INFINITY;
    std::vector<double> prefix_max(static_cast<std::size_t>(longest));
    for (int n = 0; n < longest; ++n) {
      running_max = std::max(running_max, tracker.push(z[static_cast<std::size_t>(n)]));
      prefix_max[static_cast<std::size_t>(n)] = running_max;
    }
    for (std::size_t k = 0; k < rows; ++k) {
      if (prefix_max[static_cast<std::size_t>(max_ns[k] - 1)] > thresholds[k]) {
        crossed[static_cast<std::size_t>(cell) * rows + k] = 1;
      }
    }
  });

  std::vector<ConsistencyRow> out(rows);
  for (std::size_t k = 0; k < rows; ++k) {
    long null_count = 0;
    long alt_count = 0;
    for (std::int64_t cell = 0; cell < static_cast<std::int64_t>(reps) * 2; ++cell) {
      const long hit = crossed[static_cast<std::size_t>(cell) * rows + k];
      if (cell % 2 == 0) {
        null_count += hit;
      } else {
        alt_count += hit;
      }
    }
    out[k] = {max_ns[k], thresholds[k], static_cast<double>(null_count) / reps,
              static_cast<double>(alt_count) / reps};
  }
  return out;
}

}  // namespace dbelseq
