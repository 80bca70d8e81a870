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

import json
import math
import os

import numpy as np
import pytest

import geofed


def test_budget_matches_reference_cell():
    b = geofed.budget(0.15, 1e-4, agents=100, sampled=5, rounds=500)
    assert geofed.format_sci3(b["eps_total"]) == "6.03e+00"
    assert geofed.format_sci3(b["delta_total"]) == "1.35e-02"
    assert len(geofed.budget_table()) == 48


def test_invalid_schedule_raises():
    with pytest.raises(geofed.GeofedError):
        geofed.budget(0.15, 1e-4, agents=10, sampled=11, rounds=5)


@pytest.mark.parametrize(
    "manifold",
    [geofed.Manifold.sphere(4), geofed.Manifold.spd(3), geofed.Manifold.hyperboloid(2)],
    ids=lambda m: m.name,
)
def test_geometry_round_trip(manifold):
    rng = np.random.default_rng(0)
    x = manifold.canonical_point()
    v = manifold.project_tangent(x, 0.3 * rng.standard_normal(np.shape(x)))
    y = manifold.exp(x, v)
    assert np.allclose(manifold.log(x, y), v, atol=1e-10)
    assert math.isclose(manifold.dist(x, y), math.sqrt(manifold.inner(x, v, v)),
                        abs_tol=1e-12)
    w = manifold.transport(x, y, v)
    assert math.isclose(manifold.inner(y, w, w), manifold.inner(x, v, v),
                        abs_tol=1e-12)


def test_invalid_point_raises():
    with pytest.raises(geofed.GeofedError):
        geofed.Manifold.sphere(2).dist(np.array([1.0, 1.0, 0.0]),
                                       np.array([1.0, 0.0, 0.0]))


def test_calibration_scales_with_inner_steps():
    a = geofed.calibrate_sigma("dp_rsgd", 0.15, 1e-5, 1.0, 70, 5)
    b = geofed.calibrate_sigma("dp_rsvrg", 0.15, 1e-5, 1.0, 70, 5, inner_steps=4)
    assert math.isclose(b, 2.0 * a, rel_tol=1e-14)


def small_config():
    return {
        "problem": "pca",
        "data": {"agents": 4, "per_agent": 10, "dim": 6, "eigengap": 0.1, "seed": 3},
        "federation": {"rounds": 10, "sampled": 2, "seed": 9},
        "trainer": {"kind": "dp_rsgd", "local_steps": 2, "batch": 4, "alpha": 0.2},
        "privacy": {"epsilon": 0.5, "delta": 1e-5},
        "repeats": 2,
    }


def test_run_is_deterministic_and_accounted():
    s1, t1 = geofed.run(small_config(), threads=1)
    s2, t2 = geofed.run(small_config(), threads=4)
    assert t1 == t2
    assert len(t1) == 2 and len(t1[0]["cost"]) == 11
    expect = geofed.budget(0.5, 1e-5, agents=4, sampled=2, rounds=10)
    assert s1["privacy"]["eps_total"] == expect["eps_total"]
    clean, _ = geofed.run(small_config(), no_dp=True)
    assert clean["privacy"] is None


def test_shipped_configs_parse():
    configs = os.environ.get("GEOFED_CONFIGS")
    if not configs:
        pytest.skip("GEOFED_CONFIGS not set")
    path = os.path.join(configs, "spd_rsgd_n20.json")
    with open(path, encoding="utf-8") as f:
        cfg = json.load(f)
    cfg["federation"]["rounds"] = 3
    cfg["repeats"] = 1
    summary, traces = geofed.run(cfg)
    assert summary["resolved"]["problem"] == "frechet_spd"
    assert len(traces[0]["round"]) == 4
