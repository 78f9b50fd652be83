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

#include "dbelseq/dbel.hpp"

#include <algorithm>
#include <cfenv>
#include <cmath>
#include <string>

#include "dbelseq/error.hpp"

namespace dbelseq {
namespace {

// A[k] = #{i : s_i <= s_k} + #{i : -s_i <= s_k} for k = 0..n-1, so that the
// 2n-scaled window mass is A[hi] - A[lo]. Two monotone pointers, O(n).
void symmetric_counts(std::span<const double> s, std::vector<std::int32_t>& out) {
  const int n = static_cast<int>(s.size());
  out.resize(s.size());
  int up = 0;  // #{i : s_i <= s_k}
  int lo = n;  // first i with s_i >= -s_k
  for (int k = 0; k < n; ++k) {
    while (up < n && s[up] <= s[k]) ++up;
    const double t = -s[k];
    while (lo > 0 && s[lo - 1] >= t) --lo;
    out[k] = up + (n - lo);
  }
}

inline int clamp_index(int r, int n) { return r <= 1 ? 0 : (r >= n ? n - 1 : r - 1); }

// Zero windows are replaced by Delta = 1/n, i.e. a scaled count of 2.
inline int replaced_count(int raw) { return raw == 0 ? 2 : raw; }

// sum_j log(2m(2n - m - 1) / (n c_j)) with c_j the scaled window counts.
// Accumulated in extended precision: the two terms are each O(n log n) while
// their difference can be close to zero.
template <typename LogOf>
double log_statistic_for_m(std::span<const std::int32_t> counts, int m, LogOf&& log_of) {
  const int n = static_cast<int>(counts.size());
  long double sum_log_counts = 0.0L;
  for (int j = 1; j <= n; ++j) {
    const int raw = counts[clamp_index(j + m, n)] - counts[clamp_index(j - m, n)];
    sum_log_counts += log_of(replaced_count(raw));
  }
  const long double numerator =
      2.0L * m * static_cast<long double>(2 * n - m - 1) / static_cast<long double>(n);
  return static_cast<double>(n * std::log(numerator) - sum_log_counts);
}

}  // namespace

long round_half_even(double x) {
  const int saved = std::fegetround();
  std::fesetround(FE_TONEAREST);
  const long r = std::lrint(x);
  std::fesetround(saved);
  return r;
}

MGrid MGrid::for_size(int n, double delta) {
  validate_delta(delta);
  if (n < 1) throw ArgumentError("sample size must be positive");
  MGrid g;
  g.lo = static_cast<int>(round_half_even(std::pow(static_cast<double>(n), 0.5 + delta)));
  g.hi = static_cast<int>(
      std::min(round_half_even(std::pow(static_cast<double>(n), 1.0 - delta)),
               round_half_even(static_cast<double>(n) / 2.0)));
  // Crossed bounds (n = 5 at delta = 0.1) span both endpoints, like R's a:b.
  if (g.hi < g.lo) std::swap(g.lo, g.hi);
  return g;
}

void validate_delta(double delta) {
  if (!(delta > 0.0 && delta < 0.25)) {
    throw ArgumentError("delta must lie in (0, 0.25), got " + std::to_string(delta));
  }
}

int delta_jm_count(const SortedDifferences& sorted, int j, int m) {
  const int n = static_cast<int>(sorted.size());
  if (n == 0) throw ArgumentError("empty sample");
  if (j < 1 || j > n) throw ArgumentError("j out of range [1, n]: " + std::to_string(j));
  if (m < 1 || m > n) throw ArgumentError("m out of range [1, n]: " + std::to_string(m));
  const auto s = sorted.values();
  const double upper = sorted.order(j + m);
  const double lower = sorted.order(j - m);
  // #{z_i <= t} + #{-z_i <= t} from the sorted buffer by binary search.
  auto count_le = [&](double t) {
    const auto le = std::upper_bound(s.begin(), s.end(), t) - s.begin();
    const auto ge_neg = s.end() - std::lower_bound(s.begin(), s.end(), -t);
    return static_cast<int>(le + ge_neg);
  };
  return count_le(upper) - count_le(lower);
}

double delta_jm(const SortedDifferences& sorted, int j, int m) {
  const int n = static_cast<int>(sorted.size());
  const int raw = delta_jm_count(sorted, j, m);
  if (raw == 0) return 1.0 / n;
  return static_cast<double>(raw) / (2.0 * n);
}

double window_factor(int n, int m, double delta_jm_value) {
  const double nd = n;
  return m * (2.0 * nd - m - 1.0) / (nd * nd * delta_jm_value);
}

DbelEvaluation dbel_log_statistic(const DifferenceSample& sample, double delta) {
  return dbel_log_statistic(SortedDifferences(sample), delta);
}

DbelEvaluation dbel_log_statistic(const SortedDifferences& sorted, double delta) {
  validate_delta(delta);
  DbelEvaluation eval;
  eval.n = static_cast<int>(sorted.size());
  if (eval.n < kDbelMinSize) return eval;

  std::vector<std::int32_t> counts;
  symmetric_counts(sorted.values(), counts);
  const auto log_of = [](int k) { return std::log(static_cast<long double>(k)); };

  const MGrid grid = MGrid::for_size(eval.n, delta);
  eval.per_m.reserve(static_cast<std::size_t>(grid.size()));
  for (int m = grid.lo; m <= grid.hi; ++m) {
    const double value = log_statistic_for_m(counts, m, log_of);
    eval.per_m.push_back({m, value});
    if (eval.m_star == 0 || value < eval.log_vn) {
      eval.m_star = m;
      eval.log_vn = value;
    }
  }
  return eval;
}

DbelKernel::DbelKernel(double delta) : delta_(delta) { validate_delta(delta); }

double DbelKernel::log_vn(std::span<const double> sorted) {
  const int n = static_cast<int>(sorted.size());
  if (n < kDbelMinSize) return 0.0;
  symmetric_counts(sorted, cumulative_);
  const auto needed = static_cast<std::size_t>(2 * n + 1);
  if (log_table_.size() < needed) {
    log_table_.resize(needed);
    for (std::size_t k = 1; k < needed; ++k) {
      log_table_[k] = std::log(static_cast<long double>(k));
    }
  }
  const MGrid grid = MGrid::for_size(n, delta_);
  double best = 0.0;
  bool first = true;
  const auto lookup = [this](int k) { return log_table_[k]; };
  for (int m = grid.lo; m <= grid.hi; ++m) {
    const double value = log_statistic_for_m(cumulative_, m, lookup);
    if (first || value < best) {
      best = value;
      first = false;
    }
  }
  return best;
}

}  // namespace dbelseq
