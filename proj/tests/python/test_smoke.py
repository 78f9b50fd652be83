# Copyright 2026 The dbelseq Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import pytest

import dbelseq

FOUR = [-0.5, 1.0, 2.0, 3.0]

S1 = """
name = "S1"
max_n = 20
alpha = 0.05

[x]
family = "normal"
params = [0.0, 1.0]

[y]
family = "normal"
params = [0.5, 1.0]
"""


def test_statistics():
    assert dbelseq.dbel_log_statistic(FOUR) == pytest.approx(math.log(6.5104166666), rel=1e-9)
    ev = dbelseq.dbel_evaluation(FOUR)
    assert ev["m_star"] == 2
    assert ev["n"] == 4
    assert dbelseq.delta_jm(FOUR, 1, 2) == pytest.approx(0.375)
    assert dbelseq.dbel_log_statistic([1.0, 2.0, 3.0]) == 0.0
    sr, ts = dbelseq.signed_rank_statistic([1.0, 2.0, 3.0, 4.0])
    assert sr == 10.0
    assert ts == pytest.approx(1.8257, abs=1e-4)


def test_errors():
    with pytest.raises(ValueError):
        dbelseq.dbel_log_statistic([1.0, float("nan")])
    with pytest.raises(ValueError):
        dbelseq.statistic_path("wilcoxon", [1.0])
    with pytest.raises(ValueError):
        dbelseq.tabulate_critical("dbel", [10], reps=0)


def test_monitor_matches_batch():
    z = [0.3, 1.2, -0.4, 2.2, 0.9, 1.7, -0.1, 2.8, 1.1, 0.6]
    batch = dbelseq.run_to_completion("ssrt", z, max_n=10, critical=2.0)
    monitor = dbelseq.Monitor("ssrt", max_n=10, critical=2.0)
    points = []
    for value in z:
        points.append(monitor.feed(value))
        if monitor.stopped:
            break
    assert [p["statistic"] for p in points] == [p["statistic"] for p in batch["trajectory"]]
    assert batch["stopped_at"] == len(points)
    with pytest.raises(dbelseq.StateError):
        monitor.feed(1.0)


def test_table_round_trip_and_power():
    dbel = dbelseq.tabulate_critical("dbel", [20], [0.05], reps=500, seed=3)
    ssrt = dbelseq.tabulate_critical("ssrt", [20], [0.05], reps=500, seed=3)
    assert dbelseq.CriticalValueTable.from_json(dbel.to_json()) == dbel
    assert dbel.test == "dbel" and ssrt.delta is None
    assert dbel.entries[0][0] == 20
    rows = dbelseq.power_study(S1, [dbel, ssrt], reps=300, seed=4)
    assert [r["test"] for r in rows] == ["dbel", "ssrt"]
    for r in rows:
        assert 0.0 <= r["power"] <= 1.0
        assert 1.0 <= r["asn"] <= 20.0
    with pytest.raises(dbelseq.ConfigError):
        dbel.critical(30, 0.05)


def test_bootstrap():
    data = [math.sin(i) + 0.1 * i % 1.3 for i in range(40)]
    dbel = dbelseq.tabulate_critical("dbel", [10, 20], [0.05], reps=300)
    ssrt = dbelseq.tabulate_critical("ssrt", [10, 20], [0.05], reps=300)
    rows = dbelseq.bootstrap_study(data, dbel, ssrt, [10, 20], reps=50, seed=2)
    assert [r["N"] for r in rows] == [10, 20]
    with pytest.raises(ValueError):
        dbelseq.bootstrap_study(data, dbel, ssrt, [40], reps=5)
