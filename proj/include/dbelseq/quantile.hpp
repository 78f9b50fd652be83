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
#include <string_view>

namespace dbelseq {

enum class QuantileMethod {
  /// x_(ceil(p * n)), clamped to [1, n].
  OrderStatistic,
  /// R's default (type 7): linear interpolation between x_(floor(h)) and
  /// x_(floor(h)+1), h = 1 + (n - 1) p. Equal neighbours return that value
  /// exactly, so atoms of the distribution are preserved.
  Type7,
};

std::string_view to_string(QuantileMethod method) noexcept;
QuantileMethod parse_quantile_method(std::string_view text);

/// Quantile at probability p of an ascending sample.
double quantile_sorted(std::span<const double> sorted, double p, QuantileMethod method);

/// Upper alpha-quantile (the quantile at 1 - alpha) of an ascending sample.
/// alpha = 1 yields the minimum.
double upper_quantile_sorted(std::span<const double> sorted, double alpha, QuantileMethod method);

}  // namespace dbelseq
