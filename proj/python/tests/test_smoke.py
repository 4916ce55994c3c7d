# Copyright 2026 The qcrit Authors
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

import math

import numpy as np
import pytest

import qcrit

ZERO = np.array([[1, 0], [0, 0]], dtype=complex)
ONE = np.array([[0, 0], [0, 1]], dtype=complex)


def test_version():
    assert qcrit.__version__ == "0.1.0"


def test_trace_distance_and_helstrom():
    plus = 0.5 * np.ones((2, 2), dtype=complex)
    assert qcrit.trace_distance(ZERO, ONE) == pytest.approx(1.0)
    assert qcrit.trace_distance(ZERO, plus) == pytest.approx(math.sqrt(0.5))
    assert qcrit.helstrom(ZERO, plus) == pytest.approx(0.5 + 0.5 * math.sqrt(0.5))


def test_criterion_d_single_bit():
    for c in [0.0, 0.3, 0.8]:
        v = np.array([c, math.sqrt(1 - c * c)], dtype=complex)
        probes = [ZERO, np.outer(v, v.conj())]
        assert qcrit.criterion_d(probes) == pytest.approx(0.5 * math.sqrt(1 - c * c))
        assert qcrit.criterion_d_entangled(probes) == pytest.approx(qcrit.criterion_d(probes))


def test_two_bit_family_and_leak():
    r1 = np.diag([0.6, 0.4]).astype(complex)
    r2 = np.diag([0.1, 0.9]).astype(complex)
    assert qcrit.two_bit_family_d(ZERO, r1, r2) == pytest.approx(0.25)
    res = qcrit.post_leak_success(ZERO, r1, r2)
    assert res["p_success"] == pytest.approx(0.75)
    assert res["mixture_cap"] == pytest.approx(0.625)


def test_couplings():
    assert qcrit.independent_mismatch(4) == 0.75
    p = {"a": 0.7, "b": 0.3}
    q = {"a": 0.2, "b": 0.8}
    assert qcrit.variational_distance(p, q) == pytest.approx(0.5)
    assert qcrit.maximal_mismatch(p, q) == pytest.approx(0.5)


def test_side_channels():
    assert qcrit.singular_fraction(2, 2)["fraction"] == 0.5
    t = qcrit.toeplitz([1, 0, 1], 2, 2)
    assert len(t) == 2
    assert qcrit.pac_leakage(["11", "11"]) == 1
    assert qcrit.gf2_rank(["101", "011"]) == 2
    sizes, bias = qcrit.region_census(["1000110", "0100101", "0010011", "0001111"])
    assert set(sizes.values()) == {8}
    assert bias == 0.0


def test_bounds():
    assert qcrit.markov_bound(0.25, 0.5) == 0.5
    assert qcrit.chained_budget(2**-10, 2**-6, 2) == 2**-22
    assert qcrit.log2_ratio(1000, 20, 100, 2**-20) == pytest.approx(80.0)


def test_experiments():
    assert "cex_ii" in qcrit.experiment_names()
    rep = qcrit.run_experiment("spiked", {"n": 8, "l": 3})
    assert rep["results"]["delta_E_analytic"] == 0.12109375
    assert all(v["status"] == "PASS" for v in rep["verdicts"])
    a = qcrit.canonical_report("markov", None, 42)
    assert a == qcrit.canonical_report("markov", None, 42)
    csv = qcrit.run_sweep("cex_i", {"N": [2, 4]})
    assert csv.splitlines()[0].startswith("index,N,")
    assert len(csv.splitlines()) == 3


def test_errors():
    with pytest.raises(qcrit.QcritError, match="UnknownExperiment"):
        qcrit.run_experiment("nope")
    with pytest.raises(qcrit.QcritError, match="NotPsd"):
        qcrit.trace_distance(np.diag([1.5, -0.5]).astype(complex), ZERO)
    with pytest.raises(ValueError):
        qcrit.markov_bound(-1.0, 1.0)
