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

// Density-based empirical likelihood statistic for symmetry of paired
// differences about zero.
//
// For a sample of size n with order statistics z_(1) <= ... <= z_(n), the
// symmetrised window mass is
//
//   Delta_jm = (2n)^-1 sum_i [ I(z_i <= z_(j+m)) + I(-z_i <= z_(j+m))
//                            - I(z_i <= z_(j-m)) - I(-z_i <= z_(j-m)) ]
//
// (indices clamped to [1, n], a zero window replaced by 1/n) and
//
//   log V_n = min_{m in grid} sum_j log( m (2n - m - 1) / (n^2 Delta_jm) ),
//
// where grid = [round(n^(0.5+delta)), min(round(n^(1-delta)), round(n/2))]
// with round-half-to-even; when the rounded bounds cross the grid is the
// closed range between them. log V_n is pinned to 0 for n < 4.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dbelseq/sample.hpp"

namespace dbelseq {

inline constexpr double kDefaultDelta = 0.1;

/// Smallest sample size with a non-trivial statistic.
inline constexpr int kDbelMinSize = 4;

/// Round half to even, the IEC 60559 default used by R's round().
long round_half_even(double x);

/// Window-width grid for a sample of size n: the integers lo..hi.
struct MGrid {
  int lo = 0;
  int hi = -1;

  static MGrid for_size(int n, double delta = kDefaultDelta);

  bool empty() const noexcept { return hi < lo; }
  int size() const noexcept { return empty() ? 0 : hi - lo + 1; }
};

/// Throws ArgumentError unless 0 < delta < 0.25.
void validate_delta(double delta);

/// Window mass scaled by 2n, before zero replacement. In [0, 2n].
int delta_jm_count(const SortedDifferences& sorted, int j, int m);

/// Delta_jm with the zero-replacement rule applied.
/// Requires 1 <= j <= n and 1 <= m <= n.
double delta_jm(const SortedDifferences& sorted, int j, int m);

/// m (2n - m - 1) / (n^2 Delta), the per-order-statistic factor.
double window_factor(int n, int m, double delta_jm_value);

struct MLogStatistic {
  int m = 0;
  double log_statistic = 0.0;
};

struct DbelEvaluation {
  int n = 0;
  std::vector<MLogStatistic> per_m;
  int m_star = 0;  // 0 when per_m is empty
  double log_vn = 0.0;
};

/// Full evaluation of log V_n, keeping the per-m values.
DbelEvaluation dbel_log_statistic(const DifferenceSample& sample, double delta = kDefaultDelta);
DbelEvaluation dbel_log_statistic(const SortedDifferences& sorted, double delta = kDefaultDelta);

/// Allocation-free evaluation for the Monte Carlo hot path.
///
/// Keeps scratch buffers between calls; one instance per thread.
class DbelKernel {
 public:
  explicit DbelKernel(double delta = kDefaultDelta);

  /// log V_n for an ascending, finite sample. Does not validate its input.
  double log_vn(std::span<const double> sorted);

  double delta() const noexcept { return delta_; }

 private:
  double delta_;
  std::vector<std::int32_t> cumulative_;
  std::vector<long double> log_table_;
};

}  // namespace dbelseq
