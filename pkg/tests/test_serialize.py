from __future__ import annotations

import json

import pytest

from idiom import allocations as al
from idiom import serialize as sz
from idiom.errors import IdiomError, ParseError
from idiom.intervals import IntervalSet, dvs_closure
from idiom.lattice import chain
from idiom.nuclei import enumerate_nuclei


def test_lattice_round_trip(corpus, tmp_path):
    for e in corpus:
        L = e.lattice
        data = json.loads(json.dumps(sz.lattice_to_json(L)))
        K = sz.lattice_from_json(data)
        assert K.labels == L.labels and K.covers == L.covers and K.name == L.name
        path = tmp_path / f"{L.name}.json"
        path.write_text(json.dumps(data))
        assert sz.load_lattice(path).covers == L.covers


@pytest.mark.parametrize(
    "data",
    [
        [],
        {"elements": ["0", "1"]},
        {"elements": "01", "covers": []},
        {"elements": ["0", "1"], "covers": [["0"]]},
    ],
)
def test_malformed_lattice_json(data):
    with pytest.raises(ParseError):
        sz.lattice_from_json(data)


@pytest.mark.parametrize(
    "data",
    [
        {"elements": ["0", "0", "1"], "covers": [["0", "1"]]},
        {"elements": ["0", "1"], "covers": [["0", "1"], ["1", "1"]]},
        {"elements": ["0", "1"], "covers": [["0", "1"], ["1", "0"]]},
    ],
)
def test_rejected_orders(data):
    with pytest.raises(IdiomError):
        sz.lattice_from_json(data)


def test_bad_json_file(tmp_path):
    p = tmp_path / "x.json"
    p.write_text("{not json")
    with pytest.raises(ParseError):
        sz.load_lattice(p)


def test_interval_set_round_trip(B2):
    S = dvs_closure(IntervalSet.from_pairs(B2, [("0", "a")]))
    back = sz.interval_set_from_json(json.loads(json.dumps(sz.interval_set_to_json(S))))
    assert back.pairs() == S.pairs()
    with pytest.raises(ParseError):
        sz.interval_set_from_json({"intervals": [["0"]]}, B2)


def test_nucleus_round_trip(C3):
    for j in enumerate_nuclei(C3).nuclei:
        assert sz.nucleus_from_json(sz.nucleus_to_json(j), C3) == j
    with pytest.raises(ParseError):
        sz.nucleus_from_json({"nope": 1}, C3)


def test_interval_map_round_trip(C3, B2):
    for L in (C3, B2):
        f = al.R(L, chain(3), 1)
        g = sz.ivm_from_json(json.loads(json.dumps(sz.ivm_to_json(f))), L, f.values)
        assert g.table == f.table and g.kind == f.kind
    data = sz.ivm_to_json(al.R(C3, chain(2), 1))
    del data["table"]["0,1"]
    with pytest.raises(ParseError):
        sz.ivm_from_json(data, C3, chain(2))


def test_dot_output(C3, M3):
    dot = sz.to_dot(C3)
    assert dot.startswith('digraph "C3" {') and dot.rstrip().endswith("}")
    assert "rankdir=BT" in dot
    assert dot.count("->") == len(C3.covers) == 2
    assert sz.to_dot(M3).count("rank=same") == 3
