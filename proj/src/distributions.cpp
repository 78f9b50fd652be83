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

#include "dbelseq/distributions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include <boost/random/beta_distribution.hpp>
#include <boost/random/cauchy_distribution.hpp>
#include <boost/random/chi_squared_distribution.hpp>
#include <boost/random/exponential_distribution.hpp>
#include <boost/random/gamma_distribution.hpp>
#include <boost/random/lognormal_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include "dbelseq/error.hpp"

namespace dbelseq {
namespace {

template <typename Dist>
void fill(Dist dist, std::span<double> out, RngStream& stream) {
  for (double& v : out) v = dist(stream);
}

}  // namespace

std::string_view to_string(Family family) noexcept {
  switch (family) {
    case Family::Normal:
      return "normal";
    case Family::LogNormal:
      return "lognormal";
    case Family::Uniform:
      return "uniform";
    case Family::Exponential:
      return "exponential";
    case Family::Gamma:
      return "gamma";
    case Family::Beta:
      return "beta";
    case Family::ChiSquare:
      return "chisquare";
    case Family::Cauchy:
      return "cauchy";
  }
  return "normal";
}

Family parse_family(std::string_view name) {
  std::string key(name);
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (key == "normal" || key == "norm") return Family::Normal;
  if (key == "lognormal" || key == "lnorm" || key == "logn") return Family::LogNormal;
  if (key == "uniform" || key == "unif") return Family::Uniform;
  if (key == "exponential" || key == "exp") return Family::Exponential;
  if (key == "gamma") return Family::Gamma;
  if (key == "beta") return Family::Beta;
  if (key == "chisquare" || key == "chisq" || key == "chi2") return Family::ChiSquare;
  if (key == "cauchy") return Family::Cauchy;
  throw ArgumentError("unknown distribution family '" + std::string(name) + "'");
}

std::size_t family_arity(Family family) noexcept {
  return (family == Family::Exponential || family == Family::ChiSquare) ? 1 : 2;
}

void DistributionSpec::validate() const {
  const std::string name(to_string(family));
  if (params.size() != family_arity(family)) {
    throw ArgumentError(name + " takes " + std::to_string(family_arity(family)) +
                        " parameter(s), got " + std::to_string(params.size()));
  }
  for (double p : params) {
    if (!std::isfinite(p)) throw ArgumentError(name + ": parameters must be finite");
  }
  auto positive = [&](double v, const char* what) {
    if (!(v > 0.0)) throw ArgumentError(name + ": " + what + " must be positive");
  };
  switch (family) {
    case Family::Normal:
      positive(params[1], "sd");
      break;
    case Family::LogNormal:
      positive(params[1], "sdlog");
      break;
    case Family::Uniform:
      if (!(params[0] < params[1])) throw ArgumentError(name + ": requires lo < hi");
      break;
    case Family::Exponential:
      positive(params[0], "rate");
      break;
    case Family::Gamma:
      positive(params[0], "shape");
      positive(params[1], "rate");
      break;
    case Family::Beta:
      positive(params[0], "a");
      positive(params[1], "b");
      break;
    case Family::ChiSquare:
      positive(params[0], "df");
      break;
    case Family::Cauchy:
      positive(params[1], "scale");
      break;
  }
}

std::string DistributionSpec::label() const {
  static constexpr const char* kShort[] = {"N", "LogN", "U", "Exp", "Gamma", "Beta", "Chisq",
                                           "Cauchy"};
  std::ostringstream out;
  out << kShort[static_cast<int>(family)] << '(';
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) out << ',';
    out << params[i];
  }
  out << ')';
  return out.str();
}

std::vector<double> sample(const DistributionSpec& dist, std::size_t count, RngStream& stream) {
  std::vector<double> out(count);
  sample_into(dist, out, stream);
  return out;
}

void sample_into(const DistributionSpec& dist, std::span<double> out, RngStream& stream) {
  dist.validate();
  const auto& p = dist.params;
  switch (dist.family) {
    case Family::Normal:
      fill(boost::random::normal_distribution<double>(p[0], p[1]), out, stream);
      break;
    case Family::LogNormal:
      fill(boost::random::lognormal_distribution<double>(p[0], p[1]), out, stream);
      break;
    case Family::Uniform:
      fill(boost::random::uniform_real_distribution<double>(p[0], p[1]), out, stream);
      break;
    case Family::Exponential:
      fill(boost::random::exponential_distribution<double>(p[0]), out, stream);
      break;
    case Family::Gamma:
      // boost takes (shape, scale)
      fill(boost::random::gamma_distribution<double>(p[0], 1.0 / p[1]), out, stream);
      break;
    case Family::Beta:
      fill(boost::random::beta_distribution<double>(p[0], p[1]), out, stream);
      break;
    case Family::ChiSquare:
      fill(boost::random::chi_squared_distribution<double>(p[0]), out, stream);
      break;
    case Family::Cauchy:
      fill(boost::random::cauchy_distribution<double>(p[0], p[1]), out, stream);
      break;
  }
}

}  // namespace dbelseq
