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

#include "cli/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dbelseq/critical_table.hpp"
#include "dbelseq/error.hpp"
#include "dbelseq/scenario.hpp"
#include "dbelseq/studies.hpp"

namespace dbelseq::cli {
namespace {

using Json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool skippable(std::string_view line) {
  line = trim(line);
  return line.empty() || line.front() == '#';
}

// Splits on commas, tabs, semicolons or runs of spaces.
std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  line = trim(line);
  const bool has_comma = line.find_first_of(",;") != std::string_view::npos;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    const bool end = i == line.size();
    const char c = end ? ',' : line[i];
    const bool sep = has_comma ? (c == ',' || c == ';') : (c == ' ' || c == '\t');
    if (!end && !sep) continue;
    auto field = trim(line.substr(start, i - start));
    if (has_comma || !field.empty()) fields.push_back(field);
    start = i + 1;
  }
  return fields;
}

std::optional<double> parse_number(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

// Parses one data line into a difference; nullopt when it is not numeric.
std::optional<double> parse_difference(std::string_view line, std::size_t expected_fields,
                                       bool negate) {
  const auto fields = split_fields(line);
  if (fields.size() != expected_fields) return std::nullopt;
  double z = 0.0;
  if (expected_fields == 1) {
    auto v = parse_number(fields[0]);
    if (!v) return std::nullopt;
    z = *v;
  } else {
    auto x = parse_number(fields[0]);
    auto y = parse_number(fields[1]);
    if (!x || !y) return std::nullopt;
    z = *x - *y;
    if (!std::isfinite(z)) return std::nullopt;
  }
  return negate ? -z : z;
}

std::string num(double x) { return Json(x).dump(); }

TabulationOptions tabulation_options(int reps, std::uint64_t seed, double delta, int threads) {
  TabulationOptions opts;
  opts.reps = reps;
  opts.seed = seed;
  opts.delta = delta;
  opts.threads = threads;
  return opts;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream file(path);
  if (!file) throw ConfigError("cannot write " + path);
  file << text << '\n';
  if (!file) throw ConfigError("failed writing " + path);
}

void check_threads(int threads) {
  if (threads < 0) throw ArgumentError("--threads must be >= 0");
}

}  // namespace

std::vector<double> read_differences(std::istream& in, bool negate) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  std::size_t fields = 0;
  bool header_allowed = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    const std::size_t count = split_fields(line).size();
    if (fields == 0 && (count == 1 || count == 2)) fields = count;
    auto z = fields == 0 ? std::nullopt : parse_difference(line, fields, negate);
    if (!z) {
      if (header_allowed && values.empty() && (count == 1 || count == 2)) {
        header_allowed = false;
        fields = 0;
        continue;
      }
      throw ArgumentError("malformed data at line " + std::to_string(line_no) + ": '" +
                          std::string(trim(line)) + "'");
    }
    header_allowed = false;
    values.push_back(*z);
  }
  return values;
}

int cmd_tabulate(const TabulateArgs& args, std::ostream& out, std::ostream& err) {
  (void)err;
  check_threads(args.threads);
  if (args.max_ns.empty()) throw ArgumentError("--max-n is required");
  if (args.reps < 1) throw ArgumentError("--reps must be >= 1");
  for (int n : args.max_ns) {
    if (n < 1) throw ArgumentError("--max-n values must be >= 1");
  }
  for (double a : args.alphas) {
    if (!(a > 0.0 && a < 1.0)) throw ArgumentError("--alpha values must lie in (0, 1)");
  }
  auto opts = tabulation_options(args.reps, args.seed, args.delta, args.threads);
  opts.method = args.method;
  const auto table = tabulate_critical(args.test, args.max_ns, args.alphas, opts);
  const std::string text = table.to_json(args.pretty ? 2 : -1);
  if (args.out_path) {
    write_text(*args.out_path, text);
  } else {
    out << text << '\n';
  }
  return kExitOk;
}

int cmd_monitor(const MonitorArgs& args, std::istream& in, std::ostream& out, std::ostream& err) {
  if (args.max_n < 1) throw ArgumentError("--max-n must be >= 1");
  if (!(args.alpha > 0.0 && args.alpha < 1.0)) throw ArgumentError("--alpha must lie in (0, 1)");

  StoppingPolicy policy;
  policy.test = args.test;
  policy.max_n = args.max_n;
  policy.alpha = args.alpha;
  policy.delta = args.delta;
  if (args.critical) {
    policy.critical = *args.critical;
  } else if (args.table_path) {
    const auto table = CriticalValueTable::load(*args.table_path);
    if (table.test != args.test) {
      throw ConfigError("table is for " + std::string(to_string(table.test)) + ", not " +
                        std::string(to_string(args.test)));
    }
    if (table.delta) policy.delta = *table.delta;
    policy.critical = table.critical(args.max_n, args.alpha);
  } else {
    throw ArgumentError("monitor needs --critical or --table");
  }
  policy.validate();

  MonitorState monitor(policy);
  const std::size_t fields = args.format == InputFormat::Pairs ? 2 : 1;
  const std::string test_name(to_string(args.test));
  bool rejected = false;
  std::string line;
  std::size_t line_no = 0;
  while (!monitor.stopped() && std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    const auto z = parse_difference(line, fields, args.negate);
    if (!z) {
      err << "error: malformed input at line " << line_no << ": '" << trim(line) << "'\n";
      return kExitUsage;
    }
    const TrajectoryPoint p = monitor.feed(*z);
    rejected = p.decision == Decision::RejectStop;
    if (args.pretty) {
      out << "n=" << p.n << " " << test_name << "=" << num(p.statistic)
          << " critical=" << num(p.critical) << " " << to_string(p.decision) << '\n';
    } else {
      Json row;
      row["n"] = p.n;
      row["test"] = test_name;
      row["statistic"] = p.statistic;
      row["critical"] = p.critical;
      row["decision"] = to_string(p.decision);
      out << row.dump() << '\n';
    }
    out.flush();
  }

  const bool inconclusive = !monitor.stopped();
  Json summary;
  summary["stopped_at"] = monitor.size();
  summary["rejected"] = rejected;
  summary["inconclusive"] = inconclusive;
  summary["critical"] = policy.critical;
  out << summary.dump() << '\n';
  if (inconclusive) {
    err << "input ended after " << monitor.size() << " of " << args.max_n
        << " differences without a decision\n";
    return kExitInconclusive;
  }
  return kExitOk;
}

int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err) {
  check_threads(args.threads);
  if (args.reps < 1) throw ArgumentError("--reps must be >= 1");
  if (args.tab_reps < 1) throw ArgumentError("--tab-reps must be >= 1");
  if (args.tests.empty()) throw ArgumentError("--tests must name at least one test");
  const auto scenario = ScenarioSpec::load(args.scenario_path);
  scenario.validate();

  std::vector<CriticalValueTable> supplied;
  for (const auto& path : args.table_paths) supplied.push_back(CriticalValueTable::load(path));

  std::vector<CriticalValueTable> tables;
  for (TestKind test : args.tests) {
    auto it = std::find_if(supplied.begin(), supplied.end(),
                           [&](const CriticalValueTable& t) { return t.test == test; });
    if (it != supplied.end()) {
      it->critical(scenario.max_n, scenario.alpha);  // ConfigError when absent
      tables.push_back(*it);
      continue;
    }
    err << "tabulating " << to_string(test) << " critical value for N=" << scenario.max_n
        << " alpha=" << num(scenario.alpha) << " (" << args.tab_reps << " reps)\n";
    const double alphas[] = {scenario.alpha};
    tables.push_back(tabulate_critical(
        test, scenario.max_n, alphas,
        tabulation_options(args.tab_reps, args.tab_seed, args.delta, args.threads)));
  }

  PowerOptions opts;
  opts.reps = args.reps;
  opts.seed = args.seed;
  opts.threads = args.threads;
  const auto results = power_study(scenario, tables, opts);

  if (args.json) {
    Json rows = Json::array();
    for (const auto& r : results) {
      Json row;
      row["scenario"] = scenario.name;
      row["test"] = to_string(r.test);
      row["x"] = scenario.x.label();
      row["y"] = scenario.y.label();
      row["max_n"] = scenario.max_n;
      row["alpha"] = scenario.alpha;
      row["critical"] = r.critical;
      row["power"] = r.power;
      row["asn"] = r.asn;
      row["reps"] = r.reps;
      row["seed"] = r.seed;
      rows.push_back(row);
    }
    out << rows.dump(args.pretty ? 2 : -1) << '\n';
  } else {
    out << "scenario,test,x,y,max_n,alpha,critical,power,asn,reps,seed\n";
    for (const auto& r : results) {
      out << scenario.name << ',' << to_string(r.test) << ',' << scenario.x.label() << ','
          << scenario.y.label() << ',' << scenario.max_n << ',' << num(scenario.alpha) << ','
          << num(r.critical) << ',' << num(r.power) << ',' << num(r.asn) << ',' << r.reps << ','
          << r.seed << '\n';
    }
  }
  return kExitOk;
}

int cmd_bootstrap(const BootstrapArgs& args, std::ostream& out, std::ostream& err) {
  check_threads(args.threads);
  if (args.max_ns.empty()) throw ArgumentError("--n-list is required");
  if (args.reps < 1) throw ArgumentError("--reps must be >= 1");
  if (args.tab_reps < 1) throw ArgumentError("--tab-reps must be >= 1");
  if (!(args.alpha > 0.0 && args.alpha < 1.0)) throw ArgumentError("--alpha must lie in (0, 1)");

  std::ifstream file(args.data_path);
  if (!file) throw ConfigError("cannot read " + args.data_path);
  auto values = read_differences(file, args.negate);
  if (values.empty()) throw ArgumentError(args.data_path + " contains no differences");
  const DifferenceSample data(std::move(values));
  for (int n : args.max_ns) {
    if (n < 1 || static_cast<std::size_t>(n) >= data.size()) {
      throw ArgumentError("N=" + std::to_string(n) + " must lie in [1, " +
                          std::to_string(data.size() - 1) + "] for " +
                          std::to_string(data.size()) + " differences");
    }
  }

  auto table_for = [&](TestKind test, const std::optional<std::string>& path) {
    if (path) {
      auto table = CriticalValueTable::load(*path);
      if (table.test != test) {
        throw ConfigError(*path + " is not a " + std::string(to_string(test)) + " table");
      }
      return table;
    }
    err << "tabulating " << to_string(test) << " critical values (" << args.tab_reps
        << " reps)\n";
    const double alphas[] = {args.alpha};
    return tabulate_critical(
        test, args.max_ns, alphas,
        tabulation_options(args.tab_reps, args.tab_seed, args.delta, args.threads));
  };
  const auto dbel_table = table_for(TestKind::Dbel, args.dbel_table_path);
  const auto ssrt_table = table_for(TestKind::Ssrt, args.ssrt_table_path);

  BootstrapOptions opts;
  opts.max_ns = args.max_ns;
  opts.reps = args.reps;
  opts.seed = args.seed;
  opts.alpha = args.alpha;
  opts.with_replacement = args.with_replacement;
  opts.threads = args.threads;
  const auto rows = bootstrap_study(data, dbel_table, ssrt_table, opts);

  const char* scheme = args.with_replacement ? "with" : "without";
  if (args.json) {
    Json doc = Json::array();
    for (const auto& r : rows) {
      Json row;
      row["N"] = r.max_n;
      row["dbel"] = {{"critical", r.dbel.critical},
                     {"rejection_rate", r.dbel.rejection_rate},
                     {"asn", r.dbel.asn}};
      row["ssrt"] = {{"critical", r.ssrt.critical},
                     {"rejection_rate", r.ssrt.rejection_rate},
                     {"asn", r.ssrt.asn}};
      row["reps"] = r.reps;
      row["seed"] = args.seed;
      row["replacement"] = scheme;
      doc.push_back(row);
    }
    out << doc.dump(args.pretty ? 2 : -1) << '\n';
  } else {
    out << "N,dbel_critical,dbel_rate,dbel_asn,ssrt_critical,ssrt_rate,ssrt_asn,reps,seed,"
           "replacement\n";
    for (const auto& r : rows) {
      out << r.max_n << ',' << num(r.dbel.critical) << ',' << num(r.dbel.rejection_rate) << ','
          << num(r.dbel.asn) << ',' << num(r.ssrt.critical) << ','
          << num(r.ssrt.rejection_rate) << ',' << num(r.ssrt.asn) << ',' << r.reps << ','
          << args.seed << ',' << scheme << '\n';
    }
  }
  return kExitOk;
}

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Sequential paired-difference tests: density-based empirical likelihood and "
               "signed-rank"};
  app.name("dbelseq");
  app.require_subcommand(1);
  app.set_version_flag("--version", "dbelseq 0.1.0");

  std::string test_name = "dbel";
  std::string method_name = "order";
  const auto test_check = CLI::IsMember({"dbel", "ssrt"}, CLI::ignore_case);

  TabulateArgs tab;
  auto* tabulate = app.add_subcommand("tabulate", "Tabulate null critical values");
  tabulate->add_option("--test", test_name, "dbel or ssrt")->check(test_check);
  tabulate->add_option("--max-n", tab.max_ns, "Maximum sample size(s)")
      ->required()
      ->delimiter(',');
  tabulate->add_option("--alpha", tab.alphas, "Significance level(s)")->delimiter(',');
  tabulate->add_option("--reps", tab.reps, "Null replications");
  tabulate->add_option("--seed", tab.seed, "Base seed");
  tabulate->add_option("--delta", tab.delta, "DBEL window exponent");
  tabulate->add_option("--quantile", method_name, "type7 or order")
      ->check(CLI::IsMember({"type7", "order"}));
  tabulate->add_option("--threads", tab.threads, "Worker threads (0 = all cores)");
  tabulate->add_option("--out", tab.out_path, "Write the table to this file");
  tabulate->add_flag("--pretty", tab.pretty, "Indent the JSON");

  MonitorArgs mon;
  std::string format_name = "diffs";
  std::optional<std::string> input_path;
  auto* monitor = app.add_subcommand("monitor", "Run one sequential trial on streamed data");
  monitor->add_option("--test", test_name, "dbel or ssrt")->check(test_check);
  monitor->add_option("--table", mon.table_path, "Critical-value table JSON");
  monitor->add_option("--critical", mon.critical, "Explicit critical value");
  monitor->add_option("--max-n", mon.max_n, "Maximum sample size")->required();
  monitor->add_option("--alpha", mon.alpha, "Significance level for table lookup");
  monitor->add_option("--format", format_name, "diffs (z per line) or pairs (x,y per line)")
      ->check(CLI::IsMember({"diffs", "pairs"}));
  monitor->add_flag("--negate", mon.negate, "Use -z (y - x)");
  monitor->add_option("--delta", mon.delta, "DBEL window exponent");
  monitor->add_option("--input", input_path, "Input file (default: stdin)");
  monitor->add_flag("--pretty", mon.pretty, "Human-readable trajectory lines");

  SimulateArgs sim;
  std::vector<std::string> sim_tests;
  std::string sim_format = "csv";
  auto* simulate = app.add_subcommand("simulate", "Power and ASN under a scenario");
  simulate->add_option("--scenario", sim.scenario_path, "Scenario TOML")->required();
  simulate->add_option("--reps", sim.reps, "Replications");
  simulate->add_option("--seed", sim.seed, "Base seed");
  simulate->add_option("--table", sim.table_paths, "Critical-value table JSON (repeatable)");
  simulate->add_option("--tests", sim_tests, "Tests to run")->delimiter(',')->check(test_check);
  simulate->add_option("--tab-reps", sim.tab_reps, "Replications for missing tables");
  simulate->add_option("--tab-seed", sim.tab_seed, "Seed for missing tables");
  simulate->add_option("--delta", sim.delta, "DBEL window exponent");
  simulate->add_option("--threads", sim.threads, "Worker threads (0 = all cores)");
  simulate->add_option("--format", sim_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  simulate->add_flag("--pretty", sim.pretty, "Indent JSON output");

  BootstrapArgs boot;
  std::string replacement = "off";
  std::string boot_format = "csv";
  auto* bootstrap = app.add_subcommand("bootstrap", "Subsample analysis of a paired dataset");
  bootstrap->add_option("--data", boot.data_path, "CSV of z or x,y")->required();
  bootstrap->add_option("--n-list", boot.max_ns, "Maximum sample sizes")
      ->required()
      ->delimiter(',');
  bootstrap->add_option("--reps", boot.reps, "Subsamples per N");
  bootstrap->add_option("--seed", boot.seed, "Base seed");
  bootstrap->add_option("--replacement", replacement, "on or off")
      ->check(CLI::IsMember({"on", "off"}));
  bootstrap->add_option("--alpha", boot.alpha, "Significance level");
  bootstrap->add_option("--dbel-table", boot.dbel_table_path, "DBEL critical-value table");
  bootstrap->add_option("--ssrt-table", boot.ssrt_table_path, "SSRT critical-value table");
  bootstrap->add_option("--tab-reps", boot.tab_reps, "Replications for missing tables");
  bootstrap->add_option("--tab-seed", boot.tab_seed, "Seed for missing tables");
  bootstrap->add_option("--delta", boot.delta, "DBEL window exponent");
  bootstrap->add_flag("--negate", boot.negate, "Use -z (y - x)");
  bootstrap->add_option("--threads", boot.threads, "Worker threads (0 = all cores)");
  bootstrap->add_option("--format", boot_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  bootstrap->add_flag("--pretty", boot.pretty, "Indent JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*tabulate) {
      tab.test = parse_test_kind(test_name);
      tab.method = parse_quantile_method(method_name);
      return cmd_tabulate(tab, out, err);
    }
    if (*monitor) {
      mon.test = parse_test_kind(test_name);
      mon.format = format_name == "pairs" ? InputFormat::Pairs : InputFormat::Diffs;
      if (input_path) {
        std::ifstream file(*input_path);
        if (!file) throw ConfigError("cannot read " + *input_path);
        return cmd_monitor(mon, file, out, err);
      }
      return cmd_monitor(mon, in, out, err);
    }
    if (*simulate) {
      if (!sim_tests.empty()) {
        sim.tests.clear();
        for (const auto& t : sim_tests) sim.tests.push_back(parse_test_kind(t));
      }
      sim.json = sim_format == "json";
      return cmd_simulate(sim, out, err);
    }
    if (*bootstrap) {
      boot.with_replacement = replacement == "on";
      boot.json = boot_format == "json";
      return cmd_bootstrap(boot, out, err);
    }
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace dbelseq::cli
