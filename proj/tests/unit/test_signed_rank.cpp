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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "dbelseq/distributions.hpp"
#include "dbelseq/rng.hpp"
#include "dbelseq/signed_rank.hpp"
#include "support/naive_dbel.hpp"

using namespace dbelseq;

TEST_SUITE("signed_rank") {

TEST_CASE("hand examples") {
  const auto a = signed_rank_statistic(DifferenceSample({1.0, 2.0, 3.0, 4.0}));
  CHECK(a.sr == 10.0);
  CHECK(a.ts == doctest::Approx(5.0 / std::sqrt(7.5)).epsilon(1e-14));
  CHECK(a.ts == doctest::Approx(1.8257).epsilon(1e-4));
  CHECK_FALSE(a.has_ties);

  const auto b = signed_rank_statistic(DifferenceSample({-1.0, 2.0}));
  CHECK(b.sr == 2.0);
  CHECK(b.ts == doctest::Approx(0.5 / std::sqrt(1.25)).epsilon(1e-14));
  CHECK(b.ts == doctest::Approx(0.4472).epsilon(1e-4));
}

TEST_CASE("centred sum gives zero") {
  const auto e = signed_rank_statistic(DifferenceSample({1.0, 2.0, -3.0}));
  CHECK(e.sr == 3.0);
  CHECK(e.ts == 0.0);
}

TEST_CASE("zero counts as nonnegative") {
  const auto e = signed_rank_statistic(DifferenceSample({0.0, -2.0, 3.0}));
  CHECK(e.sr == 1.0 + 3.0);
}

TEST_CASE("midranks for tied magnitudes") {
  const auto e = signed_rank_statistic(DifferenceSample({1.0, -1.0, 2.0, 2.0}));
  CHECK(e.has_ties);
  CHECK(e.sr == 1.5 + 3.5 + 3.5);
  CHECK(e.sr == naive::signed_rank_sum({1.0, -1.0, 2.0, 2.0}));
}

TEST_CASE("agrees with the naive ranking") {
  for (std::uint64_t rep = 0; rep < 300; ++rep) {
    RngStream rng(21, rep);
    auto z = sample(DistributionSpec::normal(0.2, 1.0), 1 + rep % 70, rng);
    if (rep % 3 == 0) {
      for (auto& v : z) v = std::round(v * 2.0) / 2.0;
    }
    const auto e = signed_rank_statistic(DifferenceSample(z));
    CHECK(e.sr == naive::signed_rank_sum(z));
    CHECK(e.ts == doctest::Approx(naive::signed_rank_ts(z)).epsilon(1e-13));
  }
}

TEST_CASE("tracker matches batch evaluation") {
  RngStream rng(22, 0);
  auto z = sample(DistributionSpec::cauchy(0.0, 1.0), 90, rng);
  for (std::size_t i = 0; i < z.size(); i += 7) z[i] = std::round(z[i]);
  SignedRankTracker tracker;
  for (std::size_t n = 1; n <= z.size(); ++n) {
    const auto step = tracker.push(z[n - 1]);
    const auto batch =
        signed_rank_statistic(DifferenceSample(std::vector<double>(z.begin(), z.begin() + n)));
    CHECK(step.sr == batch.sr);
    CHECK(step.ts == batch.ts);
    CHECK(step.has_ties == batch.has_ties);
  }
  tracker.clear();
  CHECK(tracker.size() == 0);
}

TEST_CASE("rank invariance under odd increasing maps") {
  for (std::uint64_t rep = 0; rep < 50; ++rep) {
    RngStream rng(23, rep);
    const auto z = sample(DistributionSpec::normal(0.0, 1.0), 3 + rep, rng);
    std::vector<double> cubed(z.size());
    std::transform(z.begin(), z.end(), cubed.begin(), [](double v) { return v * v * v; });
    const auto a = signed_rank_statistic(DifferenceSample(z));
    const auto b = signed_rank_statistic(DifferenceSample(cubed));
    CHECK(a.sr == b.sr);
    CHECK(a.ts == b.ts);
  }
}

TEST_CASE("null moments") {
  const int n = 12;
  const int reps = 40000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int rep = 0; rep < reps; ++rep) {
    RngStream rng(24, static_cast<std::uint64_t>(rep));
    const auto z = sample(DistributionSpec::uniform(-1.0, 1.0), n, rng);
    const double sr = signed_rank_statistic(DifferenceSample(z)).sr;
    sum += sr;
    sum_sq += sr * sr;
  }
  const double mean = sum / reps;
  const double var = sum_sq / reps - mean * mean;
  const double mu = n * (n + 1) / 4.0;
  const double sigma2 = n * (n + 1) * (2.0 * n + 1) / 24.0;
  // Four standard errors; the variance estimate's SE uses the kurtosis of a
  // near-normal law (sqrt(2 / reps) relative).
  CHECK(std::fabs(mean - mu) <= 4.0 * std::sqrt(sigma2 / reps));
  CHECK(std::fabs(var / sigma2 - 1.0) <= 4.0 * std::sqrt(2.0 / reps));
}

}  // TEST_SUITE
