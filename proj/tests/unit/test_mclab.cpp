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
#include <atomic>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <vector>

#include "dbelseq/critical_table.hpp"
#include "dbelseq/distributions.hpp"
#include "dbelseq/error.hpp"
#include "dbelseq/parallel.hpp"
#include "dbelseq/quantile.hpp"
#include "dbelseq/rng.hpp"
#include "dbelseq/scenario.hpp"
#include "dbelseq/studies.hpp"

using namespace dbelseq;

namespace {

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v) {
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

ScenarioSpec shift_scenario(double mu, int max_n) {
  ScenarioSpec s;
  s.name = "shift";
  s.x = DistributionSpec::normal(mu, 1.0);
  s.y = DistributionSpec::normal(0.0, 1.0);
  s.max_n = max_n;
  s.alpha = 0.05;
  return s;
}

TabulationOptions tab_options(int reps, std::uint64_t seed, int threads = 0) {
  TabulationOptions o;
  o.reps = reps;
  o.seed = seed;
  o.threads = threads;
  return o;
}

}  // namespace

TEST_SUITE("mclab") {

TEST_CASE("rng streams are pure functions of seed and stream") {
  RngStream a(5, 9);
  RngStream b(5, 9);
  RngStream c(5, 10);
  RngStream d(6, 9);
  bool differs_c = false;
  bool differs_d = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    CHECK(x == b());
    differs_c |= x != c();
    differs_d |= x != d();
  }
  CHECK(differs_c);
  CHECK(differs_d);
  RngStream u(1, 1);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.uniform01();
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("family parsing and labels") {
  CHECK(parse_family("lnorm") == Family::LogNormal);
  CHECK(parse_family("Chisq") == Family::ChiSquare);
  CHECK(parse_family("unif") == Family::Uniform);
  CHECK_THROWS_AS(parse_family("weibull"), ArgumentError);
  CHECK(DistributionSpec::lognormal(0, 1).label() == "LogN(0,1)");
  CHECK(family_arity(Family::Exponential) == 1);
  CHECK(family_arity(Family::Gamma) == 2);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(DistributionSpec::normal(0, 0).validate(), ArgumentError);
  CHECK_THROWS_AS(DistributionSpec::uniform(2, 1).validate(), ArgumentError);
  CHECK_THROWS_AS(DistributionSpec::gamma(1, -1).validate(), ArgumentError);
  CHECK_THROWS_AS(DistributionSpec::chi_square(0).validate(), ArgumentError);
  CHECK_THROWS_AS((DistributionSpec{Family::Beta, {1.0}}).validate(), ArgumentError);
  RngStream rng(1, 0);
  CHECK_THROWS_AS(sample(DistributionSpec::cauchy(0, -1), 3, rng), ArgumentError);
  CHECK(sample(DistributionSpec::normal(0, 1), 0, rng).empty());
}

TEST_CASE("sampler moments") {
  RngStream rng(41, 0);
  const auto normal = sample(DistributionSpec::normal(0.0, 1.0), 1000000, rng);
  CHECK(std::fabs(mean_of(normal)) <= 0.005);
  CHECK(std::fabs(sd_of(normal) - 1.0) <= 0.005);

  struct Case {
    DistributionSpec dist;
    double mean;
    double sd;
  };
  const std::vector<Case> cases{
      {DistributionSpec::lognormal(0.0, 0.5), std::exp(0.125), std::sqrt((std::exp(0.25) - 1.0) * std::exp(0.25))},
      {DistributionSpec::uniform(1.0, 2.0), 1.5, std::sqrt(1.0 / 12.0)},
      {DistributionSpec::exponential(2.0), 0.5, 0.5},
      {DistributionSpec::gamma(5.0, 1.0), 5.0, std::sqrt(5.0)},
      {DistributionSpec::gamma(1.0, 0.2), 5.0, 5.0},
      {DistributionSpec::beta(0.7, 1.0), 0.7 / 1.7, std::sqrt(0.7 / (1.7 * 1.7 * 2.7))},
      {DistributionSpec::chi_square(6.0), 6.0, std::sqrt(12.0)},
      {DistributionSpec::normal(0.5, 2.0), 0.5, 2.0},
  };
  std::uint64_t stream = 1;
  for (const auto& c : cases) {
    RngStream r(41, stream++);
    const auto x = sample(c.dist, 200000, r);
    CAPTURE(c.dist.label());
    CHECK(std::fabs(mean_of(x) - c.mean) <= 5.0 * c.sd / std::sqrt(200000.0));
    CHECK(sd_of(x) == doctest::Approx(c.sd).epsilon(0.02));
  }
}

TEST_CASE("cauchy median and quartiles") {
  RngStream rng(42, 0);
  auto x = sample(DistributionSpec::cauchy(1.0, 2.0), 200001, rng);
  std::sort(x.begin(), x.end());
  CHECK(quantile_sorted(x, 0.5, QuantileMethod::Type7) == doctest::Approx(1.0).epsilon(0.02));
  CHECK(quantile_sorted(x, 0.75, QuantileMethod::Type7) == doctest::Approx(3.0).epsilon(0.02));
}

TEST_CASE("uniform minus lognormal differences") {
  RngStream rng(43, 0);
  const auto u = sample(DistributionSpec::uniform(1.0, 2.0), 50000, rng);
  const auto l = sample(DistributionSpec::lognormal(0.0, 1.0), 50000, rng);
  CHECK(*std::min_element(u.begin(), u.end()) >= 1.0);
  CHECK(*std::max_element(u.begin(), u.end()) <= 2.0);
  CHECK(*std::min_element(l.begin(), l.end()) > 0.0);
  std::vector<double> d(u.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = u[i] - l[i];
  CHECK(mean_of(d) == doctest::Approx(1.5 - std::exp(0.5)).epsilon(0.05));
}

TEST_CASE("quantile estimators") {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0, 5.0};
  CHECK(quantile_sorted(x, 0.5, QuantileMethod::Type7) == 3.0);
  CHECK(quantile_sorted(x, 0.9, QuantileMethod::Type7) == doctest::Approx(4.6).epsilon(1e-14));
  CHECK(quantile_sorted(x, 0.9, QuantileMethod::OrderStatistic) == 5.0);
  CHECK(quantile_sorted(x, 0.6, QuantileMethod::OrderStatistic) == 3.0);
  CHECK(quantile_sorted(x, 0.0, QuantileMethod::OrderStatistic) == 1.0);
  CHECK(upper_quantile_sorted(x, 1.0, QuantileMethod::Type7) == 1.0);
  CHECK(upper_quantile_sorted(x, 1.0, QuantileMethod::OrderStatistic) == 1.0);
  CHECK(upper_quantile_sorted(x, 0.1, QuantileMethod::Type7) == doctest::Approx(4.6).epsilon(1e-14));
  CHECK_THROWS_AS(upper_quantile_sorted(x, 0.0, QuantileMethod::Type7), ArgumentError);
  CHECK_THROWS_AS(quantile_sorted(std::vector<double>{}, 0.5, QuantileMethod::Type7),
                  ArgumentError);
  // Atoms survive interpolation exactly.
  const std::vector<double> atoms{1.1, 2.2, 2.2, 2.2, 3.3};
  CHECK(quantile_sorted(atoms, 0.55, QuantileMethod::Type7) == 2.2);
  CHECK(parse_quantile_method("type7") == QuantileMethod::Type7);
  CHECK(parse_quantile_method("order") == QuantileMethod::OrderStatistic);
  CHECK_THROWS_AS(parse_quantile_method("type6"), ArgumentError);
}

TEST_CASE("parallel_for visits every index once") {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(1000, 4, [&](std::int64_t i, int) { hits[static_cast<std::size_t>(i)]++; });
  for (const auto& h : hits) CHECK(h.load() == 1);
  CHECK_THROWS_AS(parallel_for(10, 2,
                               [](std::int64_t i, int) {
                                 if (i == 7) throw ArgumentError("boom");
                               }),
                  ArgumentError);
}

TEST_CASE("tabulation is thread-count invariant") {
  const int ns[] = {10, 25};
  const double alphas[] = {0.05, 0.1};
  for (TestKind test : {TestKind::Dbel, TestKind::Ssrt}) {
    const auto one = tabulate_critical(test, ns, alphas, tab_options(1500, 44, 1));
    const auto three = tabulate_critical(test, ns, alphas, tab_options(1500, 44, 3));
    CHECK(one == three);
    CHECK(one.to_json() == three.to_json());
    const auto other = tabulate_critical(test, ns, alphas, tab_options(1500, 45, 1));
    CHECK_FALSE(one == other);
  }
}

TEST_CASE("tables are monotone") {
  const int ns[] = {5, 10, 15, 20, 25, 30};
  const double alphas[] = {0.01, 0.05, 0.1, 0.2};
  for (TestKind test : {TestKind::Dbel, TestKind::Ssrt}) {
    const auto t = tabulate_critical(test, ns, alphas, tab_options(3000, 46));
    CHECK(t.monotonicity_violations().empty());
    CHECK(t.entries.size() == 24);
  }
  CriticalValueTable bad;
  bad.entries = {{10, 0.05, 4.0}, {10, 0.1, 4.5}, {20, 0.05, 3.0}};
  CHECK(bad.monotonicity_violations().size() == 2);
}

TEST_CASE("alpha one gives the smallest maximum") {
  const int ns[] = {12};
  const double alphas[] = {1.0};
  TabulationOptions o = tab_options(500, 47);
  const auto t = tabulate_critical(TestKind::Ssrt, ns, alphas, o);
  auto maxima = simulate_max_statistics(TestKind::Ssrt, ns, o)[0];
  CHECK(t.entries[0].critical == *std::min_element(maxima.begin(), maxima.end()));
}

TEST_CASE("tabulation argument errors") {
  const int ns[] = {10};
  const double alphas[] = {0.05};
  CHECK_THROWS_AS(tabulate_critical(TestKind::Dbel, ns, alphas, tab_options(0, 1)),
                  ArgumentError);
  const int zero[] = {0};
  CHECK_THROWS_AS(tabulate_critical(TestKind::Dbel, zero, alphas, tab_options(10, 1)),
                  ArgumentError);
  const double bad_alpha[] = {0.0};
  CHECK_THROWS_AS(tabulate_critical(TestKind::Dbel, ns, bad_alpha, tab_options(10, 1)),
                  ArgumentError);
}

TEST_CASE("critical values agree across symmetric null generators") {
  const int ns[] = {15};
  const double alphas[] = {0.05};
  std::vector<double> crit;
  for (const auto& dist : {DistributionSpec::normal(0, 1), DistributionSpec::cauchy(0, 1),
                           DistributionSpec::uniform(-1, 1)}) {
    auto o = tab_options(20000, 48);
    o.null_dist = dist;
    o.method = QuantileMethod::Type7;
    crit.push_back(tabulate_critical(TestKind::Ssrt, ns, alphas, o).entries[0].critical);
  }
  // The signed-rank maximum is discrete; distinct generators land on the
  // same or adjacent atoms.
  CHECK(std::fabs(crit[0] - crit[1]) <= 0.15);
  CHECK(std::fabs(crit[0] - crit[2]) <= 0.15);
}

TEST_CASE("table json round trip") {
  const int ns[] = {5, 15};
  const double alphas[] = {0.05, 0.1};
  const auto t = tabulate_critical(TestKind::Dbel, ns, alphas, tab_options(800, 49));
  const auto back = CriticalValueTable::from_json(t.to_json());
  CHECK(back == t);
  CHECK(back.to_json() == t.to_json());
  CHECK(CriticalValueTable::from_json(t.to_json(2)) == t);
  REQUIRE(t.delta.has_value());

  const auto s = tabulate_critical(TestKind::Ssrt, ns, alphas, tab_options(800, 49));
  CHECK_FALSE(s.delta.has_value());
  CHECK(CriticalValueTable::from_json(s.to_json()) == s);

  const auto path = std::filesystem::temp_directory_path() / "dbelseq_unit_table.json";
  t.save(path);
  CHECK(CriticalValueTable::load(path) == t);
  std::filesystem::remove(path);

  CHECK_THROWS_AS(CriticalValueTable::from_json("{not json"), ConfigError);
  CHECK_THROWS_AS(CriticalValueTable::from_json(R"({"test":"dbel"})"), ConfigError);
  CHECK_THROWS_AS(CriticalValueTable::load("/nonexistent/table.json"), ConfigError);
}

TEST_CASE("table lookup") {
  CriticalValueTable t;
  t.entries = {{25, 0.05, 4.554}, {25, 0.1, 3.724}};
  CHECK(t.find(25, 0.05).value() == 4.554);
  CHECK_FALSE(t.find(50, 0.05).has_value());
  CHECK(t.critical(25, 0.1) == 3.724);
  CHECK_THROWS_AS(t.critical(25, 0.01), ConfigError);

  CriticalValueTable u = t;
  u.entries = {{50, 0.05, 4.89}};
  t.merge(u);
  CHECK(t.entries.size() == 3);
  u.reps = 7;
  CHECK_THROWS(t.merge(u));
}

TEST_CASE("scenario toml") {
  const auto s = ScenarioSpec::from_toml(R"(
name = "S1"
max_n = 50
alpha = 0.05

[x]
family = "normal"
params = [0.0, 1]

[y]
family = "normal"
params = [0.5, 1.0]
)");
  CHECK(s.name == "S1");
  CHECK(s.max_n == 50);
  CHECK(s.alpha == 0.05);
  CHECK(s.x == DistributionSpec::normal(0.0, 1.0));
  CHECK(s.y == DistributionSpec::normal(0.5, 1.0));
  const auto again = ScenarioSpec::from_toml(s.to_toml());
  CHECK(again.name == s.name);
  CHECK(again.x == s.x);
  CHECK(again.y == s.y);
  CHECK(again.max_n == s.max_n);

  CHECK_THROWS_AS(ScenarioSpec::from_toml("name = "), ConfigError);
  CHECK_THROWS_AS(ScenarioSpec::from_toml("name = \"a\"\nmax_n = 10\nalpha = 0.05\n"),
                  ConfigError);
  CHECK_THROWS_AS(ScenarioSpec::from_toml(
                      "name = \"a\"\nmax_n = 10\nalpha = 0.05\n[x]\nfamily = \"normal\"\n"
                      "params = [0, 1]\n[y]\nfamily = \"zipf\"\nparams = [1]\n"),
                  ConfigError);
  ScenarioSpec tiny = s;
  tiny.max_n = 3;
  CHECK_THROWS_AS(tiny.validate(), ArgumentError);
}

TEST_CASE("power study bookkeeping and determinism") {
  const auto scenario = shift_scenario(0.5, 20);
  const double alphas[] = {0.05};
  const int ns[] = {20};
  std::vector<CriticalValueTable> tables{
      tabulate_critical(TestKind::Dbel, ns, alphas, tab_options(2000, 50)),
      tabulate_critical(TestKind::Ssrt, ns, alphas, tab_options(2000, 50))};
  PowerOptions o;
  o.reps = 1500;
  o.seed = 51;
  o.threads = 1;
  const auto a = power_study(scenario, tables, o);
  o.threads = 4;
  const auto b = power_study(scenario, tables, o);
  REQUIRE(a.size() == 2);
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(a[k].rejections == b[k].rejections);
    CHECK(a[k].total_sample == b[k].total_sample);
    CHECK(a[k].power == static_cast<double>(a[k].rejections) / o.reps);
    CHECK(a[k].asn <= scenario.max_n);
    CHECK(a[k].asn >= 1.0);
  }
  CHECK(a[0].test == TestKind::Dbel);
  CHECK(a[1].test == TestKind::Ssrt);

  auto missing = scenario;
  missing.max_n = 30;
  CHECK_THROWS_AS(power_study(missing, tables, o), ConfigError);
}

TEST_CASE("asn falls as the shift grows") {
  const double alphas[] = {0.05};
  const int ns[] = {40};
  const auto table = tabulate_critical(TestKind::Dbel, ns, alphas, tab_options(4000, 52));
  PowerOptions o;
  o.reps = 3000;
  o.seed = 53;
  double previous_asn = 1e9;
  double previous_power = -1.0;
  for (double mu : {0.25, 0.5, 1.0}) {
    const auto r = power_study(shift_scenario(mu, 40), table, o);
    CHECK(r.asn < previous_asn);
    CHECK(r.power > previous_power);
    previous_asn = r.asn;
    previous_power = r.power;
  }
}

TEST_CASE("null scenario power is near alpha") {
  ScenarioSpec s;
  s.name = "null";
  s.x = DistributionSpec::gamma(2.0, 1.0);
  s.y = DistributionSpec::gamma(2.0, 1.0);
  s.max_n = 25;
  const double alphas[] = {0.05};
  const int ns[] = {25};
  auto to = tab_options(20000, 54);
  to.method = QuantileMethod::Type7;
  const auto table = tabulate_critical(TestKind::Ssrt, ns, alphas, to);
  PowerOptions o;
  o.reps = 10000;
  o.seed = 55;
  const auto r = power_study(s, table, o);
  CHECK(std::fabs(r.power - 0.05) <= 4.0 * std::sqrt(0.05 * 0.95 / o.reps) + 0.005);
}

TEST_CASE("bootstrap study") {
  RngStream rng(56, 0);
  const DifferenceSample data(sample(DistributionSpec::normal(0.0, 1.0), 40, rng));
  const double alphas[] = {0.05};
  const int ns[] = {10, 20};
  const auto dbel = tabulate_critical(TestKind::Dbel, ns, alphas, tab_options(1000, 57));
  const auto ssrt = tabulate_critical(TestKind::Ssrt, ns, alphas, tab_options(1000, 57));

  BootstrapOptions o;
  o.max_ns = {10, 20};
  o.reps = 1;
  o.seed = 58;
  const auto single = bootstrap_study(data, dbel, ssrt, o);
  REQUIRE(single.size() == 2);
  for (const auto& row : single) {
    CHECK((row.dbel.rejection_rate == 0.0 || row.dbel.rejection_rate == 1.0));
    CHECK(row.dbel.asn == static_cast<double>(row.dbel.total_sample));
    CHECK(row.ssrt.asn <= row.max_n);
  }

  o.reps = 400;
  o.threads = 1;
  const auto a = bootstrap_study(data, dbel, ssrt, o);
  o.threads = 3;
  const auto b = bootstrap_study(data, dbel, ssrt, o);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].dbel.rejections == b[k].dbel.rejections);
    CHECK(a[k].ssrt.total_sample == b[k].ssrt.total_sample);
  }
  o.with_replacement = true;
  CHECK_NOTHROW(bootstrap_study(data, dbel, ssrt, o));

  o.max_ns = {40};
  CHECK_THROWS_AS(bootstrap_study(data, dbel, ssrt, o), ArgumentError);
  o.max_ns = {10};
  CHECK_THROWS_AS(bootstrap_study(data, ssrt, dbel, o), ConfigError);
}

}  // TEST_SUITE
