from __future__ import annotations

import random

import pytest

from idiom import allocations as al
from idiom import dimension as dm
from idiom.errors import InvalidAspect, InvalidSeq, NoLength, NotBasicOperator, NotDivision
from idiom.fixtures import c1
from idiom.intervals import IntervalSet
from idiom.lattice import chain
from idiom.nuclei import enumerate_nuclei

C2V = chain(2)


def test_cap_and_ordinal_chain():
    assert dm.cap(C2V) == 3
    assert dm.infinity_chain(C2V).n == 4


def test_seq_validation():
    assert dm.Seq(C2V, (0, 0, 1, 1)).bnd == 2
    assert dm.Seq(C2V, (0, 1, 1, 1)).bnd == 1
    with pytest.raises(InvalidSeq):
        dm.Seq(C2V, (1, 1, 1, 1))
    with pytest.raises(InvalidSeq):
        dm.Seq(C2V, (0, 1, 0, 1))
    with pytest.raises(InvalidSeq):
        dm.Seq(C2V, (0, 1))
    assert dm.Seq.constant(C2V, 1).generalized
    assert dm.Seq.constant(C2V, 0).bnd == 0


def test_dimension_examples(corpus):
    for e in corpus:
        L = e.lattice
        xi = al.xi_aspect(L)
        N = enumerate_nuclei(L)
        h = dm.opr_filtration(xi, N.identity, "crt").completed
        d = dm.dim_aspect(xi, h)
        for (a, b), v in zip(L.intervals, d.table):
            assert v == (0 if a == b else 1)


def test_two_valued_sequences(C3):
    psi = al.R(C3, C2V, 1)
    late = dm.dim_aspect(psi, dm.Seq(C2V, (0, 0, 0, 1)))
    early = dm.dim_aspect(psi, dm.Seq(C2V, (0, 1, 1, 1)))
    assert set(early.table) == {0, 1}
    assert set(late.table) == {0, 3}
    assert early.leq(late)


def test_no_length_signals(C3):
    xi = al.xi_aspect(C3)
    N = enumerate_nuclei(C3)
    f = dm.opr_filtration(xi, N.identity, "id")
    assert f.raw.values == (N.identity,) * len(f.raw.values) and f.raw.bnd == 0
    assert f.completed.forced
    assert set(dm.dim_aspect(xi, f.completed).table) == {0, f.completed.cap}
    with pytest.raises(NoLength):
        dm.dim_aspect(xi, f.completed, strict=True)
    with pytest.raises(NoLength):
        dm.dim_aspect(xi, dm.Seq.constant(xi.values, xi.values.bottom), strict=True)


def test_dimension_needs_an_aspect(C3):
    with pytest.raises(InvalidAspect):
        dm.dim_aspect(al.chi_allocation(C3), dm.Seq(C2V, (0, 0, 0, 1)))
    with pytest.raises(InvalidSeq):
        dm.dim_aspect(al.R(C3, chain(3), 1), dm.Seq(C2V, (0, 0, 0, 1)))


def test_opr_filtration_examples(C3):
    xi = al.xi_aspect(C3)
    D = xi.values
    f = dm.opr_filtration(xi, D.bottom, "crt")
    assert f.raw.values[1] == D.top and f.raw.bnd == 1
    top = dm.opr_filtration(xi, D.top, "crt")
    assert set(top.raw.values) == {D.top} and top.raw.bnd == 0


def test_operator_must_keep_sets_basic(C3):
    xi = al.xi_aspect(C3)
    stray = lambda B: IntervalSet.from_pairs(C3, [("0", "m")])
    with pytest.raises(NotBasicOperator):
        dm.opr_filtration(xi, xi.values.bottom, stray)
    with pytest.raises(NotBasicOperator):
        dm.opr_filtration(xi, xi.values.bottom, "nope")


def test_kpr_filtration_examples(corpus):
    for e in corpus:
        L = e.lattice
        full, O = IntervalSet.full(L), IntervalSet.trivial(L)
        assert dm.kpr_filtration(full, "crt") == [full]
        assert dm.kpr_filtration(O, "id") == [O]
        terms = dm.kpr_filtration(O, "crt")
        assert terms[-1] == full and len(terms) == (1 if L.n == 1 else 2)
    with pytest.raises(NotDivision):
        dm.kpr_filtration(IntervalSet.from_pairs(c1(), []), "crt")


def test_gabriel_and_boyle_dimensions(corpus, B2):
    P = c1()
    assert dm.gabriel_dimension(P) == dm.boyle_dimension(P) == 0
    for e in corpus:
        L = e.lattice
        want = 0 if L.n == 1 else 1
        assert dm.gabriel_dimension(L) == dm.boyle_dimension(L) == want
        assert dm.gabriel_dimension(L, IntervalSet.full(L)) == 0
    dim, trace = dm.kpr_dimension(IntervalSet.trivial(B2), "crt")
    assert dim == 1 and len(trace) == 2


def test_opr_and_kpr_filtrations_agree(corpus):
    for e in corpus:
        L = e.lattice
        N = enumerate_nuclei(L)
        xi = al.xi_aspect(L)
        for op in ("crt", "fll", "smp", "cmp", "id"):
            for k, D in enumerate(N.divisions):
                h = dm.opr_filtration(xi, k, op, check=False).raw.values
                assert [N.divisions[v] for v in h] == dm.kpr_filtration(D, op, length=len(h) - 1)


def test_dimension_is_monotone_in_both_arguments(corpus):
    rng = random.Random(12)
    V = chain(3)
    for e in corpus:
        L = e.lattice
        p = al.random_aspect(L, V, rng)
        q = p.join(al.random_aspect(L, V, rng))
        lo, hi = dm.Seq(V, (0, 0, 1, 1, 2)), dm.Seq(V, (0, 1, 2, 2, 2))
        assert dm.dim_aspect(p, hi).leq(dm.dim_aspect(p, lo))
        assert dm.dim_aspect(p, lo).leq(dm.dim_aspect(q, lo))


def test_constant_sequences_recover_m(corpus):
    for e in corpus:
        L = e.lattice
        for psi in (al.xi_aspect(L), al.R(L, chain(3), 1)):
            V = psi.values
            for a in V.elements:
                d = dm.dim_aspect(psi, dm.Seq.constant(V, a))
                assert al.M(d, 0) == al.M(psi, a)
