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

#include <cstddef>
#include <span>
#include <vector>

namespace dbelseq {

/// Paired differences z_i = x_i - y_i in arrival order.
///
/// Always holds at least one value and every value is finite.
class DifferenceSample {
 public:
  explicit DifferenceSample(std::vector<double> z);

  /// Builds z_i = x_i - y_i. Both spans must have the same nonzero length.
  static DifferenceSample from_pairs(std::span<const double> x, std::span<const double> y);

  std::span<const double> values() const noexcept { return z_; }
  std::size_t size() const noexcept { return z_.size(); }
  double operator[](std::size_t i) const noexcept { return z_[i]; }

  /// The sample with every sign flipped.
  DifferenceSample negated() const;

 private:
  std::vector<double> z_;
};

/// Throws ArgumentError if any value is NaN or infinite.
void require_finite(std::span<const double> values);

/// Order statistics of a sample with the boundary convention
/// order(r) = values[1] for r <= 1 and values[n] for r >= n (1-based).
class SortedDifferences {
 public:
  SortedDifferences() = default;
  explicit SortedDifferences(std::span<const double> values);
  explicit SortedDifferences(const DifferenceSample& sample)
      : SortedDifferences(sample.values()) {}

  /// Inserts one value, keeping the buffer sorted.
  void insert(double value);

  double order(long r) const noexcept {
    const long n = static_cast<long>(values_.size());
    if (r <= 1) return values_.front();
    if (r >= n) return values_.back();
    return values_[static_cast<std::size_t>(r - 1)];
  }

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

 private:
  std::vector<double> values_;
};

}  // namespace dbelseq
