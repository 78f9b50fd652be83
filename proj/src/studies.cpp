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

#include "dbelseq/studies.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <string>

#include "dbelseq/error.hpp"
#include "dbelseq/parallel.hpp"
#include "dbelseq/rng.hpp"

namespace dbelseq {
namespace {

std::vector<std::unique_ptr<StatisticTracker>> make_trackers(int width, TestKind test,
                                                             double delta) {
  std::vector<std::unique_ptr<StatisticTracker>> out;
  out.reserve(static_cast<std::size_t>(width));
  for (int w = 0; w < width; ++w) out.push_back(std::make_unique<StatisticTracker>(test, delta));
  return out;
}

void validate_alphas(std::span<const double> alphas) {
  if (alphas.empty()) throw ArgumentError("need at least one alpha");
  for (double a : alphas) {
    if (!(a > 0.0 && a <= 1.0)) throw ArgumentError("alpha must lie in (0, 1]");
  }
}

// Uniform integer in [0, bound) by rejection; exact for any bound.
std::uint64_t uniform_index(RngStream& rng, std::uint64_t bound) {
  const std::uint64_t limit = RngStream::max() - RngStream::max() % bound;
  for (;;) {
    const std::uint64_t draw = rng();
    if (draw < limit) return draw % bound;
  }
}

}  // namespace

std::vector<std::vector<double>> simulate_max_statistics(TestKind test,
                                                         std::span<const int> max_ns,
                                                         const TabulationOptions& options) {
  if (options.reps < 1) throw ArgumentError("reps must be at least 1");
  if (max_ns.empty()) throw ArgumentError("need at least one N");
  for (int n : max_ns) {
    if (n < 1) throw ArgumentError("N must be at least 1");
  }
  if (test == TestKind::Dbel) validate_delta(options.delta);
  options.null_dist.validate();

  const int longest = *std::max_element(max_ns.begin(), max_ns.end());
  const auto reps = static_cast<std::size_t>(options.reps);
  std::vector<std::vector<double>> out(max_ns.size(), std::vector<double>(reps));

  const int width = resolve_threads(options.threads);
  auto trackers = make_trackers(width, test, options.delta);
  std::vector<std::vector<double>> buffers(static_cast<std::size_t>(width),
                                           std::vector<double>(static_cast<std::size_t>(longest)));
  std::vector<std::vector<double>> prefix(static_cast<std::size_t>(width),
                                          std::vector<double>(static_cast<std::size_t>(longest)));

  parallel_for(options.reps, width, [&](std::int64_t rep, int worker) {
    const auto w = static_cast<std::size_t>(worker);
    RngStream rng(options.seed, static_cast<std::uint64_t>(rep));
    sample_into(options.null_dist, buffers[w], rng);
    auto& tracker = *trackers[w];
    tracker.clear();
    double running = -INFINITY;
    for (int n = 0; n < longest; ++n) {
      running = std::max(running, tracker.push(buffers[w][static_cast<std::size_t>(n)]));
      prefix[w][static_cast<std::size_t>(n)] = running;
    }
    for (std::size_t k = 0; k < max_ns.size(); ++k) {
      out[k][static_cast<std::size_t>(rep)] = prefix[w][static_cast<std::size_t>(max_ns[k] - 1)];
    }
  });
  return out;
}

CriticalValueTable tabulate_critical(TestKind test, int max_n, std::span<const double> alphas,
                                     const TabulationOptions& options) {
  const int ns[] = {max_n};
  return tabulate_critical(test, std::span<const int>(ns), alphas, options);
}

CriticalValueTable tabulate_critical(TestKind test, std::span<const int> max_ns,
                                     std::span<const double> alphas,
                                     const TabulationOptions& options) {
  validate_alphas(alphas);
  auto maxima = simulate_max_statistics(test, max_ns, options);

  CriticalValueTable table;
  table.test = test;
  if (test == TestKind::Dbel) table.delta = options.delta;
  table.reps = options.reps;
  table.seed = options.seed;
  for (std::size_t k = 0; k < max_ns.size(); ++k) {
    auto& values = maxima[k];
    std::sort(values.begin(), values.end());
    for (double alpha : alphas) {
      table.entries.push_back(
          {max_ns[k], alpha, upper_quantile_sorted(values, alpha, options.method)});
    }
  }
  return table;
}

std::vector<PowerResult> power_study(const ScenarioSpec& scenario,
                                     std::span<const CriticalValueTable> tables,
                                     const PowerOptions& options) {
  scenario.validate();
  if (options.reps < 1) throw ArgumentError("reps must be at least 1");
  if (tables.empty()) throw ArgumentError("need at least one critical-value table");

  const std::size_t arms = tables.size();
  std::vector<double> criticals(arms);
  for (std::size_t a = 0; a < arms; ++a) {
    criticals[a] = tables[a].critical(scenario.max_n, scenario.alpha);
  }

  const int width = resolve_threads(options.threads);
  // trackers[worker * arms + arm]
  std::vector<std::unique_ptr<StatisticTracker>> trackers;
  for (int w = 0; w < width; ++w) {
    for (const auto& t : tables) {
      trackers.push_back(
          std::make_unique<StatisticTracker>(t.test, t.delta.value_or(kDefaultDelta)));
    }
  }
  const auto n = static_cast<std::size_t>(scenario.max_n);
  std::vector<std::vector<double>> xs(static_cast<std::size_t>(width), std::vector<double>(n));
  std::vector<std::vector<double>> ys(static_cast<std::size_t>(width), std::vector<double>(n));
  // Per-replication outcomes so aggregation is independent of scheduling.
  std::vector<StopResult> outcomes(static_cast<std::size_t>(options.reps) * arms);

  parallel_for(options.reps, width, [&](std::int64_t rep, int worker) {
    const auto w = static_cast<std::size_t>(worker);
    RngStream rng(options.seed, static_cast<std::uint64_t>(rep));
    sample_into(scenario.x, xs[w], rng);
    sample_into(scenario.y, ys[w], rng);
    for (std::size_t i = 0; i < n; ++i) xs[w][i] -= ys[w][i];
    for (std::size_t a = 0; a < arms; ++a) {
      outcomes[static_cast<std::size_t>(rep) * arms + a] =
          first_crossing(*trackers[w * arms + a], xs[w], scenario.max_n, criticals[a]);
    }
  });

  std::vector<PowerResult> results(arms);
  for (std::size_t a = 0; a < arms; ++a) {
    PowerResult& r = results[a];
    r.scenario = scenario;
    r.test = tables[a].test;
    r.critical = criticals[a];
    r.reps = options.reps;
    r.seed = options.seed;
    for (int rep = 0; rep < options.reps; ++rep) {
      const StopResult& s = outcomes[static_cast<std::size_t>(rep) * arms + a];
      r.rejections += s.rejected ? 1 : 0;
      r.total_sample += s.stopped_at;
    }
    r.power = static_cast<double>(r.rejections) / options.reps;
    r.asn = static_cast<double>(r.total_sample) / options.reps;
  }
  return results;
}

PowerResult power_study(const ScenarioSpec& scenario, const CriticalValueTable& table,
                        const PowerOptions& options) {
  return power_study(scenario, std::span<const CriticalValueTable>(&table, 1), options).front();
}

std::vector<BootstrapRow> bootstrap_study(const DifferenceSample& data,
                                          const CriticalValueTable& dbel_table,
                                          const CriticalValueTable& ssrt_table,
                                          const BootstrapOptions& options) {
  if (options.reps < 1) throw ArgumentError("reps must be at least 1");
  if (options.max_ns.empty()) throw ArgumentError("need at least one N");
  if (dbel_table.test != TestKind::Dbel || ssrt_table.test != TestKind::Ssrt) {
    throw ConfigError("bootstrap needs a DBEL table and an SSRT table");
  }
  const auto size = static_cast<int>(data.size());
  for (int n : options.max_ns) {
    if (n < 1) throw ArgumentError("N must be at least 1");
    if (n >= size) {
      throw ArgumentError("N=" + std::to_string(n) + " must be smaller than the data size " +
                          std::to_string(size));
    }
  }

  const int width = resolve_threads(options.threads);
  const double delta = dbel_table.delta.value_or(kDefaultDelta);
  auto dbel_trackers = make_trackers(width, TestKind::Dbel, delta);
  auto ssrt_trackers = make_trackers(width, TestKind::Ssrt, delta);
  std::vector<std::vector<double>> pools(static_cast<std::size_t>(width));

  std::vector<BootstrapRow> rows;
  for (int max_n : options.max_ns) {
    BootstrapRow row;
    row.max_n = max_n;
    row.reps = options.reps;
    row.dbel.critical = dbel_table.critical(max_n, options.alpha);
    row.ssrt.critical = ssrt_table.critical(max_n, options.alpha);

    std::vector<StopResult> outcomes(static_cast<std::size_t>(options.reps) * 2);
    parallel_for(options.reps, width, [&](std::int64_t rep, int worker) {
      const auto w = static_cast<std::size_t>(worker);
      // Stream id encodes (N, replication).
      RngStream rng(options.seed,
                    (static_cast<std::uint64_t>(max_n) << 32) | static_cast<std::uint64_t>(rep));
      auto& pool = pools[w];
      pool.assign(data.values().begin(), data.values().end());
      std::span<double> draw;
      if (options.with_replacement) {
        for (int i = 0; i < max_n; ++i) {
          pool[static_cast<std::size_t>(i)] =
              data[static_cast<std::size_t>(uniform_index(rng, data.size()))];
        }
      } else {
        // Partial Fisher-Yates: the first max_n slots become a uniformly
        // ordered subsample without replacement.
        for (int i = 0; i < max_n; ++i) {
          const auto remaining = static_cast<std::uint64_t>(size - i);
          const auto j = static_cast<std::size_t>(i) +
                         static_cast<std::size_t>(uniform_index(rng, remaining));
          std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
        }
      }
      draw = std::span<double>(pool.data(), static_cast<std::size_t>(max_n));
      const auto base = static_cast<std::size_t>(rep) * 2;
      outcomes[base] = first_crossing(*dbel_trackers[w], draw, max_n, row.dbel.critical);
      outcomes[base + 1] = first_crossing(*ssrt_trackers[w], draw, max_n, row.ssrt.critical);
    });

    for (int rep = 0; rep < options.reps; ++rep) {
      const auto base = static_cast<std::size_t>(rep) * 2;
      row.dbel.rejections += outcomes[base].rejected ? 1 : 0;
      row.dbel.total_sample += outcomes[base].stopped_at;
      row.ssrt.rejections += outcomes[base + 1].rejected ? 1 : 0;
      row.ssrt.total_sample += outcomes[base + 1].stopped_at;
    }
    for (BootstrapArm* arm : {&row.dbel, &row.ssrt}) {
      arm->rejection_rate = static_cast<double>(arm->rejections) / options.reps;
      arm->asn = static_cast<double>(arm->total_sample) / options.reps;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace dbelseq
