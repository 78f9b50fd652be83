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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "dbelseq/critical_table.hpp"
#include "dbelseq/dbel.hpp"
#include "dbelseq/error.hpp"
#include "dbelseq/scenario.hpp"
#include "dbelseq/sequential.hpp"
#include "dbelseq/signed_rank.hpp"
#include "dbelseq/studies.hpp"

namespace py = pybind11;
using namespace dbelseq;

namespace {

TestKind test_arg(const std::string& name) { return parse_test_kind(name); }

py::dict point_dict(const TrajectoryPoint& p) {
  py::dict d;
  d["n"] = p.n;
  d["statistic"] = p.statistic;
  d["critical"] = p.critical;
  d["decision"] = std::string(to_string(p.decision));
  return d;
}

StoppingPolicy make_policy(const std::string& test, int max_n, double critical, double alpha,
                           double delta) {
  StoppingPolicy policy;
  policy.test = test_arg(test);
  policy.max_n = max_n;
  policy.critical = critical;
  policy.alpha = alpha;
  policy.delta = delta;
  return policy;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sequential density-based empirical likelihood and signed-rank tests";

  py::register_exception<StateError>(m, "StateError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def(
      "dbel_log_statistic",
      [](const std::vector<double>& z, double delta) {
        return dbel_log_statistic(DifferenceSample(z), delta).log_vn;
      },
      py::arg("z"), py::arg("delta") = kDefaultDelta, "log V_n of a sample of differences.");

  m.def(
      "dbel_evaluation",
      [](const std::vector<double>& z, double delta) {
        const auto e = dbel_log_statistic(DifferenceSample(z), delta);
        py::dict d;
        d["n"] = e.n;
        d["m_star"] = e.m_star;
        d["log_vn"] = e.log_vn;
        py::list per_m;
        for (const auto& r : e.per_m) per_m.append(py::make_tuple(r.m, r.log_statistic));
        d["per_m"] = per_m;
        return d;
      },
      py::arg("z"), py::arg("delta") = kDefaultDelta);

  m.def(
      "delta_jm",
      [](const std::vector<double>& z, int j, int m) {
        return delta_jm(SortedDifferences(DifferenceSample(z)), j, m);
      },
      py::arg("z"), py::arg("j"), py::arg("m"));

  m.def(
      "signed_rank_statistic",
      [](const std::vector<double>& z) {
        const auto e = signed_rank_statistic(DifferenceSample(z));
        return py::make_tuple(e.sr, e.ts);
      },
      py::arg("z"), "(SR, TS) for a sample of differences.");

  m.def(
      "statistic_path",
      [](const std::string& test, const std::vector<double>& z, double delta) {
        require_finite(z);
        return statistic_path(test_arg(test), z, delta);
      },
      py::arg("test"), py::arg("z"), py::arg("delta") = kDefaultDelta);

  m.def(
      "run_to_completion",
      [](const std::string& test, const std::vector<double>& z, int max_n, double critical,
         double alpha, double delta) {
        const auto out =
            run_to_completion(make_policy(test, max_n, critical, alpha, delta), z);
        py::dict d;
        d["stopped_at"] = out.stopped_at;
        d["rejected"] = out.rejected;
        d["inconclusive"] = out.inconclusive;
        py::list path;
        for (const auto& p : out.trajectory) path.append(point_dict(p));
        d["trajectory"] = path;
        return d;
      },
      py::arg("test"), py::arg("z"), py::arg("max_n"), py::arg("critical"),
      py::arg("alpha") = 0.05, py::arg("delta") = kDefaultDelta);

  py::class_<MonitorState>(m, "Monitor")
      .def(py::init([](const std::string& test, int max_n, double critical, double alpha,
                       double delta) {
             return MonitorState(make_policy(test, max_n, critical, alpha, delta));
           }),
           py::arg("test"), py::arg("max_n"), py::arg("critical"), py::arg("alpha") = 0.05,
           py::arg("delta") = kDefaultDelta)
      .def("feed", [](MonitorState& s, double z) { return point_dict(s.feed(z)); }, py::arg("z"))
      .def_property_readonly("stopped", &MonitorState::stopped)
      .def_property_readonly("size", &MonitorState::size);

  py::class_<CriticalValueTable>(m, "CriticalValueTable")
      .def_property_readonly("test",
                             [](const CriticalValueTable& t) { return std::string(to_string(t.test)); })
      .def_readonly("delta", &CriticalValueTable::delta)
      .def_readonly("reps", &CriticalValueTable::reps)
      .def_readonly("seed", &CriticalValueTable::seed)
      .def_property_readonly("entries",
                             [](const CriticalValueTable& t) {
                               py::list out;
                               for (const auto& e : t.entries) {
                                 out.append(py::make_tuple(e.max_n, e.alpha, e.critical));
                               }
                               return out;
                             })
      .def("critical", &CriticalValueTable::critical, py::arg("max_n"), py::arg("alpha"))
      .def("to_json", &CriticalValueTable::to_json, py::arg("indent") = -1)
      .def_static("from_json", &CriticalValueTable::from_json, py::arg("text"))
      .def("__eq__", [](const CriticalValueTable& a, const CriticalValueTable& b) { return a == b; });

  m.def(
      "tabulate_critical",
      [](const std::string& test, const std::vector<int>& max_ns,
         const std::vector<double>& alphas, int reps, std::uint64_t seed, double delta,
         const std::string& quantile, int threads) {
        TabulationOptions opts;
        opts.reps = reps;
        opts.seed = seed;
        opts.delta = delta;
        opts.method = parse_quantile_method(quantile);
        opts.threads = threads;
        py::gil_scoped_release release;
        return tabulate_critical(test_arg(test), max_ns, alphas, opts);
      },
      py::arg("test"), py::arg("max_ns"), py::arg("alphas") = std::vector<double>{0.05},
      py::arg("reps") = kDefaultTabulationReps, py::arg("seed") = 1,
      py::arg("delta") = kDefaultDelta, py::arg("quantile") = "order", py::arg("threads") = 0);

  m.def(
      "power_study",
      [](const std::string& scenario_toml, const std::vector<CriticalValueTable>& tables,
         int reps, std::uint64_t seed, int threads) {
        const auto scenario = ScenarioSpec::from_toml(scenario_toml);
        PowerOptions opts;
        opts.reps = reps;
        opts.seed = seed;
        opts.threads = threads;
        std::vector<PowerResult> results;
        {
          py::gil_scoped_release release;
          results = power_study(scenario, tables, opts);
        }
        py::list out;
        for (const auto& r : results) {
          py::dict d;
          d["scenario"] = r.scenario.name;
          d["test"] = std::string(to_string(r.test));
          d["max_n"] = r.scenario.max_n;
          d["alpha"] = r.scenario.alpha;
          d["critical"] = r.critical;
          d["power"] = r.power;
          d["asn"] = r.asn;
          d["reps"] = r.reps;
          d["seed"] = r.seed;
          out.append(d);
        }
        return out;
      },
      py::arg("scenario_toml"), py::arg("tables"), py::arg("reps") = kDefaultPowerReps,
      py::arg("seed") = 1, py::arg("threads") = 0);

  m.def(
      "bootstrap_study",
      [](const std::vector<double>& data, const CriticalValueTable& dbel_table,
         const CriticalValueTable& ssrt_table, const std::vector<int>& max_ns, int reps,
         std::uint64_t seed, double alpha, bool with_replacement, int threads) {
        BootstrapOptions opts;
        opts.max_ns = max_ns;
        opts.reps = reps;
        opts.seed = seed;
        opts.alpha = alpha;
        opts.with_replacement = with_replacement;
        opts.threads = threads;
        const DifferenceSample sample(data);
        std::vector<BootstrapRow> rows;
        {
          py::gil_scoped_release release;
          rows = bootstrap_study(sample, dbel_table, ssrt_table, opts);
        }
        py::list out;
        for (const auto& r : rows) {
          py::dict d;
          d["N"] = r.max_n;
          d["dbel_rate"] = r.dbel.rejection_rate;
          d["dbel_asn"] = r.dbel.asn;
          d["ssrt_rate"] = r.ssrt.rejection_rate;
          d["ssrt_asn"] = r.ssrt.asn;
          d["reps"] = r.reps;
          out.append(d);
        }
        return out;
      },
      py::arg("data"), py::arg("dbel_table"), py::arg("ssrt_table"), py::arg("max_ns"),
      py::arg("reps") = kDefaultBootstrapReps, py::arg("seed") = 1, py::arg("alpha") = 0.05,
      py::arg("with_replacement") = false, py::arg("threads") = 0);
}
