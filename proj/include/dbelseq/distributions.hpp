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
#include <string>
#include <string_view>
#include <vector>

#include "dbelseq/rng.hpp"

namespace dbelseq {

/// Parametric families, parameterised as in R's r* samplers:
///   Normal(mean, sd)          LogNormal(meanlog, sdlog)
///   Uniform(lo, hi)           Exponential(rate)
///   Gamma(shape, rate)        Beta(a, b)
///   ChiSquare(df)             Cauchy(location, scale)
enum class Family { Normal, LogNormal, Uniform, Exponential, Gamma, Beta, ChiSquare, Cauchy };

std::string_view to_string(Family family) noexcept;

/// Accepts canonical names and the R-style aliases norm, lnorm, logn, unif,
/// exp, chisq, chi2 (case-insensitive).
Family parse_family(std::string_view name);

/// Number of parameters the family takes.
std::size_t family_arity(Family family) noexcept;

struct DistributionSpec {
  Family family = Family::Normal;
  std::vector<double> params{0.0, 1.0};

  static DistributionSpec normal(double mean, double sd) { return {Family::Normal, {mean, sd}}; }
  static DistributionSpec lognormal(double meanlog, double sdlog) {
    return {Family::LogNormal, {meanlog, sdlog}};
  }
  static DistributionSpec uniform(double lo, double hi) { return {Family::Uniform, {lo, hi}}; }
  static DistributionSpec exponential(double rate) { return {Family::Exponential, {rate}}; }
  static DistributionSpec gamma(double shape, double rate) {
    return {Family::Gamma, {shape, rate}};
  }
  static DistributionSpec beta(double a, double b) { return {Family::Beta, {a, b}}; }
  static DistributionSpec chi_square(double df) { return {Family::ChiSquare, {df}}; }
  static DistributionSpec cauchy(double location, double scale) {
    return {Family::Cauchy, {location, scale}};
  }

  /// Throws ArgumentError on wrong arity or invalid parameters.
  void validate() const;

  /// Short label such as "LogN(0,1)".
  std::string label() const;

  bool operator==(const DistributionSpec&) const = default;
};

/// i.i.d. draws. The parameters are validated once per call.
std::vector<double> sample(const DistributionSpec& dist, std::size_t count, RngStream& stream);
void sample_into(const DistributionSpec& dist, std::span<double> out, RngStream& stream);

}  // namespace dbelseq
