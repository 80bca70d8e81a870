# Copyright 2026 The GeoFed Authors
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
#

"""Differentially private federated optimization on Riemannian manifolds."""

import json as _json
import os as _os

from ._geofed import (
    GeofedError,
    Manifold,
    budget,
    budget_table,
    calibrate_sigma,
    format_sci3,
)
from ._geofed import _run_json

__all__ = [
    "GeofedError",
    "Manifold",
    "budget",
    "budget_table",
    "calibrate_sigma",
    "format_sci3",
    "run",
]


def run(config, *, no_dp=False, threads=0, write_outputs=False):
    """Runs an experiment config and returns (summary, traces).

    `config` is a dict, a JSON string, or a path to a JSON file. `summary`
    is the parsed summary.json; `traces` holds one dict of per-round columns
    (round, cost, grad_norm, dist_to_opt, ms) per repeat.
    """
    if isinstance(config, dict):
        text = _json.dumps(config)
    elif isinstance(config, (str, _os.PathLike)) and _os.path.isfile(config):
        with open(config, encoding="utf-8") as f:
            text = f.read()
    else:
        text = str(config)
    summary, traces = _run_json(text, no_dp, threads, write_outputs)
    return _json.loads(summary), traces
