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

#include "dbelseq/signed_rank.hpp"

#include <algorithm>
#include <cmath>

#include "dbelseq/error.hpp"

namespace dbelseq {

double standardize_signed_rank(double sr, int n) {
  const double nd = n;
  const double mean = nd * (nd + 1.0) / 4.0;
  const double var = nd * (nd + 1.0) * (2.0 * nd + 1.0) / 24.0;
  return std::abs(sr - mean) / std::sqrt(var);
}

SignedRankEvaluation signed_rank_statistic(const DifferenceSample& sample) {
  SignedRankTracker tracker;
  return tracker.assign(sample.values());
}

SignedRankEvaluation SignedRankTracker::assign(std::span<const double> z) {
  require_finite(z);
  entries_.clear();
  entries_.reserve(z.size());
  for (double v : z) entries_.push_back({std::abs(v), v >= 0.0});
  std::stable_sort(entries_.begin(), entries_.end(),
                   [](const Entry& a, const Entry& b) { return a.magnitude < b.magnitude; });
  return evaluate();
}

SignedRankEvaluation SignedRankTracker::push(double z) {
  if (!std::isfinite(z)) throw ArgumentError("non-finite difference");
  const Entry e{std::abs(z), z >= 0.0};
  const auto pos = std::upper_bound(entries_.begin(), entries_.end(), e.magnitude,
                                    [](double v, const Entry& x) { return v < x.magnitude; });
  entries_.insert(pos, e);
  return evaluate();
}

SignedRankEvaluation SignedRankTracker::evaluate() const {
  SignedRankEvaluation eval;
  eval.n = static_cast<int>(entries_.size());
  // Walk runs of equal magnitude; each run of positions [first, last] shares
  // the midrank (first + last) / 2 in 1-based ranks.
  double sr = 0.0;
  std::size_t first = 0;
  while (first < entries_.size()) {
    std::size_t last = first;
    int nonneg = entries_[first].nonnegative ? 1 : 0;
    while (last + 1 < entries_.size() &&
           entries_[last + 1].magnitude == entries_[first].magnitude) {
      ++last;
      nonneg += entries_[last].nonnegative ? 1 : 0;
    }
    if (last > first) eval.has_ties = true;
    const double midrank = (static_cast<double>(first + 1) + static_cast<double>(last + 1)) / 2.0;
    sr += nonneg * midrank;
    first = last + 1;
  }
  eval.sr = sr;
  eval.ts = standardize_signed_rank(sr, eval.n);
  return eval;
}

}  // namespace dbelseq
