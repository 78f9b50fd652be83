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

#include "dbelseq/sample.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dbelseq/error.hpp"

namespace dbelseq {

void require_finite(std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw ArgumentError("non-finite value at index " + std::to_string(i));
    }
  }
}

DifferenceSample::DifferenceSample(std::vector<double> z) : z_(std::move(z)) {
  if (z_.empty()) throw ArgumentError("difference sample must not be empty");
  require_finite(z_);
}

DifferenceSample DifferenceSample::from_pairs(std::span<const double> x,
                                              std::span<const double> y) {
  if (x.size() != y.size()) {
    throw ArgumentError("x and y must have the same length");
  }
  std::vector<double> z(x.size());
  std::transform(x.begin(), x.end(), y.begin(), z.begin(), std::minus<>());
  return DifferenceSample(std::move(z));
}

DifferenceSample DifferenceSample::negated() const {
  std::vector<double> z(z_.size());
  std::transform(z_.begin(), z_.end(), z.begin(), std::negate<>());
  return DifferenceSample(std::move(z));
}

SortedDifferences::SortedDifferences(std::span<const double> values)
    : values_(values.begin(), values.end()) {
  require_finite(values_);
  std::sort(values_.begin(), values_.end());
}

void SortedDifferences::insert(double value) {
  if (!std::isfinite(value)) throw ArgumentError("non-finite value");
  values_.insert(std::upper_bound(values_.begin(), values_.end(), value), value);
}

}  // namespace dbelseq
