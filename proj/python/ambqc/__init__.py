# Copyright 2026 The AMBQC Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Simulator and test bench for abstract measurement-based quantum computation."""

import json as _json

from ._ambqc import (
    Error,
    Instance,
    IoError,
    ModelError,
    ValidationError,
    __version__,
    accepting_operator,
    bounds,
    estimate_acceptance,
    exact_acceptance,
    geometric_entanglement,
    gram_spectrum,
    haar_state,
    incomplete_instance,
    load_instance,
    mixed_acceptance,
    output_distribution,
    parse_instance,
    random_instance,
    sampling_instance,
    save_instance,
    schmidt_state,
    sweep_instance,
    verify_completeness,
)
from . import _ambqc


def run_experiment(config):
    """Runs an experiment described by a config dict and returns the report dict."""
    return _json.loads(_ambqc.run_experiment(_json.dumps(config)))


def compare_with_bounds(report):
    """Bound-comparison rows for a report dict."""
    return _ambqc.compare_with_bounds(_json.dumps(report))


def report_to_csv(report):
    return _ambqc.report_to_csv(_json.dumps(report))
