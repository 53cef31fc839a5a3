# Copyright 2026 The Authors.
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


import json

import pytest

import matlink

U24 = "field gf(3)\nlabels a b c d\nrows 2\n1 0 1 1\n0 1 1 2\n"


@pytest.fixture
def u24():
    return matlink.Matroid.parse(U24)


def test_basic_queries(u24):
    assert len(u24) == 4
    assert u24.labels == ["a", "b", "c", "d"]
    assert u24.rank() == 2
    assert u24.rank({"a"}) == 1
    assert u24.connectivity(["a", "b"]) == 2
    assert u24.closure(["a", "b"]) == {"a", "b", "c", "d"}
    assert u24.dual().rank() == 2


def test_build_from_rows_round_trips(u24):
    m = matlink.Matroid("gf(3)", ["a", "b", "c", "d"], [["1", "0", "1", "1"], ["0", "1", "1", "2"]])
    assert m.same_as(u24)
    assert matlink.Matroid.parse(m.serialize()).rows == m.rows


def test_kappa_and_certificate(u24):
    assert matlink.kappa(u24, {"a"}, {"b"}) == 1
    assert matlink.kappa(u24, {"a"}, {"b"}, method="bruteforce") == 1
    cert = matlink.linking_certificate(u24, ["a"], ["b"])
    assert cert["achieved"] == 1
    assert cert["contract"] | cert["delete"] == {"c", "d"}
    flags = matlink.classify(u24, ["a"], ["b"], "c")
    assert flags["deletable"] or flags["contractible"]


def test_parallel_class():
    m = matlink.Matroid.parse("field gf(2)\nlabels s f1 f2 t\nrows 1\n1 1 1 1\n")
    flags = matlink.classify(m, ["s"], ["t"], "f1")
    assert flags["deletable"] and not flags["contractible"]
    seq = matlink.nested_sequence(m, ["s"], ["t"], [])
    assert seq["order"] == 1


def test_extension_adds_pg_points(u24):
    # lambda({a, c}) = 2, so the guts is the whole line PG(1, 3).
    ext, added = matlink.extend_guts(u24, ["a", "c"])
    assert len(added) == 4
    assert len(ext) == 8
    assert ext.minor([], added).same_as(u24)


def test_shrink_and_bounds():
    m = matlink.Matroid.parse("field gf(2)\nlabels s f1 f2 t\nrows 1\n1 1 1 1\n")
    res = matlink.shrink(m, ["s"], ["t"], ["s"], ["t"])
    assert res["k"] == 1 and res["l"] == 1
    assert res["remaining"] < res["bound"] == 16
    assert matlink.c_minor(2, 2) == 98
    assert matlink.c_minor(7, 5) == 16092823435967578809689


def test_find_removable():
    m = matlink.Matroid.parse("field gf(2)\nlabels s f1 f2 f3 t\nrows 1\n1 1 1 1 1\n")
    n = matlink.Matroid.parse("field gf(2)\nlabels s t\nrows 1\n1 1\n")
    advice = matlink.find_removable(m, ["s"], ["t"], n)
    assert advice is not None and advice["kappa"] == 1
    result = matlink.find_removable(m, ["s"], ["t"], n, method="pigeonhole")
    assert result["status"] in {"advice", "fallback", "no_collision", "no_candidates"}


def test_errors_carry_codes():
    with pytest.raises(matlink.MatlinkError) as info:
        matlink.Matroid.parse("field gf(2)\nlabels a a\nrows 1\n1 1\n")
    assert info.value.code == "DuplicateLabel"
    with pytest.raises(ValueError):
        matlink.kappa(matlink.Matroid.parse(U24), ["a"], ["zz"])


def test_run_command_and_suites():
    code, out, _ = matlink.run_command(["bounds", "--q", "2", "--n", "2"])
    assert code == 0
    assert json.loads(out)["results"]["c_minor"] == 98
    assert "shrink" in matlink.suite_names()
    res = matlink.run_suite("shrink", seed=1, scale=0.05)
    assert res["passed"] and res["instances"] == 10
