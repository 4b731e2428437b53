from __future__ import annotations

import pytest

from idiom import fixtures as fx
from idiom.errors import NotPrime, SizeLimit
from idiom.lattice import chain, is_modular

from .oracles import isomorphic


@pytest.mark.parametrize(
    "p, partition, like",
    [(2, [1], chain(2)), (2, [2], chain(3)), (2, [1, 1], fx.m3()), (3, [1], chain(2))],
)
def test_small_subgroup_lattices(p, partition, like):
    assert isomorphic(fx.subgroup_lattice(p, partition), like)


def test_subgroup_lattice_sizes():
    # Z4 + Z2 has 8 subgroups, Z2^3 has 16
    assert fx.subgroup_lattice(2, [2, 1]).n == 8
    assert fx.subgroup_lattice(2, [1, 1, 1]).n == 16
    assert fx.subgroup_lattice(3, [1, 1]).n == 6


def test_subgroup_lattice_guards():
    with pytest.raises(NotPrime):
        fx.subgroup_lattice(4, [1])
    with pytest.raises(SizeLimit):
        fx.subgroup_lattice(2, [9])
    with pytest.raises(SizeLimit):
        fx.subgroup_lattice(2, [1, 1, 1, 1, 1], max_subgroups=20)


def test_random_modular_is_deterministic_and_modular():
    for seed in range(6):
        for size in (1, 2, 5, 8):
            L = fx.random_modular(seed, size)
            assert L.n == size and is_modular(L)
            assert L.labels == fx.random_modular(seed, size).labels
            assert L.covers == fx.random_modular(seed, size).covers
    assert isomorphic(fx.random_modular(0, 2), chain(2))
    with pytest.raises(SizeLimit):
        fx.random_modular(0, 40)


def test_default_corpus_contents(corpus):
    names = [e.name for e in corpus]
    for want in ("C1", "C2", "C3", "C4", "B2", "M3", "B2xC2", "M3xC2"):
        assert want in names
    assert sum(e.provenance["kind"] == "subgroup-lattice" for e in corpus) == 2
    assert sum(e.provenance["kind"] == "random" for e in corpus) == 3
    assert all(is_modular(e.lattice) for e in corpus)
    assert [e.name for e in fx.default_corpus()] == names


def test_negative_fixture_is_not_modular():
    (entry,) = fx.negative_fixtures()
    assert entry.name == "N5" and not is_modular(entry.lattice)


def test_named_lookup():
    assert fx.get_named("M3").n == 5
    assert fx.get_named("B2xC2").n == 8
    with pytest.raises(KeyError):
        fx.get_named("nope")
