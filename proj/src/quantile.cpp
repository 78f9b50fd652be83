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

#include "dbelseq/quantile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dbelseq/error.hpp"

namespace dbelseq {

std::string_view to_string(QuantileMethod method) noexcept {
  return method == QuantileMethod::Type7 ? "type7" : "order";
}

QuantileMethod parse_quantile_method(std::string_view text) {
  if (text == "type7") return QuantileMethod::Type7;
  if (text == "order") return QuantileMethod::OrderStatistic;
  throw ArgumentError("unknown quantile method '" + std::string(text) + "'");
}

double quantile_sorted(std::span<const double> sorted, double p, QuantileMethod method) {
  if (sorted.empty()) throw ArgumentError("quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("probability must lie in [0, 1]");
  const auto n = static_cast<long>(sorted.size());

  if (method == QuantileMethod::OrderStatistic) {
    // The small fuzz keeps p * n = 23750.000000000004 from rounding up.
    long k = static_cast<long>(std::ceil(p * static_cast<double>(n) - 1e-9));
    k = std::clamp(k, 1L, n);
    return sorted[static_cast<std::size_t>(k - 1)];
  }

  // Same arithmetic as R's quantile.default(type = 7).
  const double index = 1.0 + static_cast<double>(n - 1) * p;
  const auto lo = static_cast<long>(std::floor(index));
  const auto hi = static_cast<long>(std::ceil(index));
  const double x_lo = sorted[static_cast<std::size_t>(lo - 1)];
  const double x_hi = sorted[static_cast<std::size_t>(hi - 1)];
  if (!(index > static_cast<double>(lo)) || x_hi == x_lo) return x_lo;
  const double h = index - static_cast<double>(lo);
  return (1.0 - h) * x_lo + h * x_hi;
}

double upper_quantile_sorted(std::span<const double> sorted, double alpha, QuantileMethod method) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ArgumentError("alpha must lie in (0, 1]");
  return quantile_sorted(sorted, 1.0 - alpha, method);
}

}  // namespace dbelseq
