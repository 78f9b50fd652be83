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

"""Sequential paired-difference tests: DBEL and the standardized signed-rank test."""

from ._core import (
    ConfigError,
    CriticalValueTable,
    Monitor,
    StateError,
    bootstrap_study,
    dbel_evaluation,
    dbel_log_statistic,
    delta_jm,
    power_study,
    run_to_completion,
    signed_rank_statistic,
    statistic_path,
    tabulate_critical,
)

__all__ = [
    "ConfigError",
    "CriticalValueTable",
    "Monitor",
    "StateError",
    "bootstrap_study",
    "dbel_evaluation",
    "dbel_log_statistic",
    "delta_jm",
    "power_study",
    "run_to_completion",
    "signed_rank_statistic",
    "statistic_path",
    "tabulate_critical",
]

__version__ = "0.1.0"
