# Copyright 2026 The SubDP Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


import math

import numpy as np
import pytest

import subdp


def test_noise_scales():
    assert subdp.laplace_scale(1.0, 0.0, 1.0) == pytest.approx(1 + 4 * math.log(2))
    assert subdp.laplace_scale(1.0, 0.0, 1.0, k=3) == pytest.approx(
        3 * (3 + 12 * math.log(2)))
    assert subdp.zspareto_scale(3.0, 1.0, 0.0, 1.0) == pytest.approx(5.5)
    with pytest.raises(ValueError):
        subdp.laplace_scale(1.0, 0.0, 0.0)
    with pytest.raises(subdp.InvalidParameter):
        subdp.zspareto_scale(1.0, 1.0, 0.0, 1.0)


def test_samplers_are_seeded():
    a = subdp.sample_zspareto(3.0, 1.0, 20000, seed=5)
    b = subdp.sample_zspareto(3.0, 1.0, 20000, seed=5)
    np.testing.assert_array_equal(a, b)
    assert abs(np.mean(np.abs(a)) - 1.0) < 0.05
    lap = subdp.sample_laplace(2.0, 20000, seed=5, stream=1)
    assert np.mean(np.abs(lap)) == pytest.approx(2.0, rel=0.05)
    assert subdp.zspareto_cdf(3.0, 1.0, 0.0) == pytest.approx(0.5)


def test_boost_run_count():
    assert subdp.boost_run_count(1 / 3) == 3
    assert subdp.boost_run_count(0.01) == 11


def test_graph_basics():
    g = subdp.Graph(4, [(0, 1), (2, 3)])
    assert (g.n, g.m) == (4, 2)
    assert subdp.component_count(g) == 2
    assert subdp.maximum_matching_size(subdp.Graph.path(5)) == 2
    assert repr(g) == "Graph(n=4, m=2)"
    with pytest.raises(ValueError):
        subdp.Graph(2, [(0, 5)])


def test_private_cc_report():
    g = subdp.Graph.gnp(1000, 1.5 / 1000, seed=7)
    r = subdp.private_cc(g, rho=0.2, epsilon=1.0, seed=3)
    assert r["meta"]["runs"] == 3
    assert r["mechanism"]["kind"] == "zspareto"
    assert r == subdp.private_cc(g, rho=0.2, epsilon=1.0, seed=3)


def test_regime_violation_and_force():
    g = subdp.Graph.complete(2)
    with pytest.raises(subdp.RegimeViolation):
        subdp.private_matching(g, rho=0.1, epsilon=1.0)
    r = subdp.private_matching(g, rho=0.1, epsilon=1.0, force=True)
    assert r["meta"]["forced"] is True


def test_private_f2_and_avg_degree():
    updates = [(i % 50, 1) for i in range(200)]
    assert subdp.exact_f2(updates, 50) == 50 * 16
    r = subdp.private_f2(updates, 50, rho=0.5, epsilon=1.0, seed=2)
    assert math.isfinite(r["value"])
    g = subdp.Graph.gnp(2000, 0.01, seed=1)
    d = subdp.private_avg_degree(g, rho=0.2, epsilon=1.0, seed=4)
    assert d["value"] == pytest.approx(g.average_degree(), rel=0.5)


def test_rank_session_budget():
    data = list(np.linspace(0.0, 1.0, 1000))
    s = subdp.RankSession(data, rho=0.1, epsilon=1.0, k=2, seed=9)
    assert subdp.exact_rank(data, 0.5) == 500
    s.ask(0.5)
    s.ask(0.25)
    assert s.remaining == 0
    with pytest.raises(subdp.BudgetExhausted):
        s.ask(0.75)


def test_audits():
    names = [a["name"] for a in subdp.designated_audits()]
    assert "control" in names
    rep = subdp.audit("laplace", trials=20000, seed=1)
    assert rep["verdict"] == "pass"
    assert subdp.audit("control", trials=20000, seed=1)["verdict"] == "fail"


def test_integral_table():
    rows = subdp.verify_integral_bound([2.0, 3.0], [0.5, 1.0], [0.0, 10.0])
    assert len(rows) == 8
    assert all(r["pass"] for r in rows)
