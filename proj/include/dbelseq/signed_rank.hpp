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

#include <span>
#include <vector>

#include "dbelseq/sample.hpp"

namespace dbelseq {

/// Wilcoxon signed-rank sum and its standardised absolute deviation.
///
/// sr = sum_i I(z_i >= 0) rank(|z_i|), with midranks for tied |z|. A zero
/// difference counts as nonnegative.
/// ts = |sr - n(n+1)/4| / sqrt(n(n+1)(2n+1)/24).
struct SignedRankEvaluation {
  int n = 0;
  double sr = 0.0;
  double ts = 0.0;
  bool has_ties = false;  // midranks were used; the null law assumes no ties
};

SignedRankEvaluation signed_rank_statistic(const DifferenceSample& sample);

/// ts from a signed-rank sum.
double standardize_signed_rank(double sr, int n);

/// Incremental signed-rank evaluation: keeps |z| sorted by insertion and
/// recomputes midranks in O(n) per added value.
class SignedRankTracker {
 public:
  SignedRankEvaluation push(double z);
  /// Replaces the contents with z and evaluates.
  SignedRankEvaluation assign(std::span<const double> z);
  void clear() noexcept { entries_.clear(); }
  int size() const noexcept { return static_cast<int>(entries_.size()); }

 private:
  SignedRankEvaluation evaluate() const;

  struct Entry {
    double magnitude;
    bool nonnegative;
  };
  std::vector<Entry> entries_;
};

}  // namespace dbelseq
