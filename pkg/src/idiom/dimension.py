"""Increasing sequences, the dimension aspect, and Opr/Kpr filtrations.

For a finite value lattice V the sequences are indexed 0..cap with
cap = |V| + 1, and the dimension aspect takes values in the chain
0..cap.  No limit ordinals occur below cap, so the limit clauses of the
filtrations never fire.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .allocations import M, is_aspect
from .errors import InvalidAspect, InvalidSeq, NoLength, NotBasic, NotBasicOperator, NotDivision
from .intervals import OPERATORS, IntervalSet, dvs_closure
from .lattice import FiniteLattice, chain
from .maps import IntervalValuedMap

Operator = Callable[[IntervalSet], IntervalSet]


def _identity(B: IntervalSet) -> IntervalSet:
    return B


FILTRATION_OPERATORS: dict[str, Operator] = {**OPERATORS, "id": _identity}


def cap(V: FiniteLattice) -> int:
    """Least cardinal above |V| for finite V."""
    return V.n + 1


def infinity_chain(V: FiniteLattice) -> FiniteLattice:
    """Ordinals 0..cap(V) as a chain."""
    return chain(cap(V) + 1, f"inf({V.name})")


@dataclass(frozen=True)
class Seq:
    """An increasing V-valued sequence on 0..cap(V).

    Proper sequences start at bottom and end at top.  ``generalized``
    drops both end conditions (constant sequences, filtrations started
    above bottom).  ``forced`` marks a sequence whose last value was set
    to top by completion rather than reached.
    """

    lattice: FiniteLattice
    values: tuple[int, ...]
    generalized: bool = False
    forced: bool = False

    def __post_init__(self):
        V, vs = self.lattice, self.values
        if len(vs) != cap(V) + 1:
            raise InvalidSeq(f"expected {cap(V) + 1} values, got {len(vs)}")
        if any(not V.leq(u, v) for u, v in zip(vs, vs[1:])):
            raise InvalidSeq("sequence is not increasing")
        if not self.generalized and (vs[0] != V.bottom or vs[-1] != V.top):
            raise InvalidSeq("a proper sequence runs from bottom to top")

    @property
    def cap(self) -> int:
        return len(self.values) - 1

    def __call__(self, i: int) -> int:
        return self.values[i]

    @property
    def bnd(self) -> int:
        """Least index from which the sequence is constant."""
        i = self.cap
        while i > 0 and self.values[i - 1] == self.values[i]:
            i -= 1
        return i

    @classmethod
    def constant(cls, V: FiniteLattice, alpha: int) -> Seq:
        return cls(V, (alpha,) * (cap(V) + 1), generalized=V.bottom != V.top)

    @classmethod
    def completed(cls, V: FiniteLattice, prefix) -> Seq:
        """Extend ``prefix`` by its last value and set the final index to top."""
        vs = list(prefix)[: cap(V) + 1]
        vs += [vs[-1]] * (cap(V) + 1 - len(vs))
        forced = vs[-1] != V.top
        vs[-1] = V.top
        return cls(V, tuple(vs), generalized=vs[0] != V.bottom, forced=forced)

    def meet(self, other: Seq) -> Seq:
        V = self.lattice
        vs = tuple(V.meet(u, v) for u, v in zip(self.values, other.values))
        return Seq(V, vs, self.generalized or other.generalized, self.forced or other.forced)

    def leq(self, other: Seq) -> bool:
        return all(self.lattice.leq(u, v) for u, v in zip(self.values, other.values))

    def labels(self) -> list[str]:
        return [self.lattice.label(v) for v in self.values]


def dim_aspect(psi: IntervalValuedMap, h: Seq, strict: bool = False, check: bool = True) -> IntervalValuedMap:
    """Least index i with psi(a,b) <= h(i); 0 on trivial intervals.

    With no such index the value is cap (the empty infimum).  ``strict``
    raises NoLength instead, and also when the index found is a top that
    completion forced in.
    """
    if check and not is_aspect(psi):
        raise InvalidAspect("dimension needs an aspect")
    V = psi.values
    if h.lattice != V:
        raise InvalidSeq("sequence and aspect use different value lattices")
    L = psi.lattice
    out = infinity_chain(V)

    def dim(a: int, b: int) -> int:
        if a == b:
            return 0
        v = psi(a, b)
        for i, hv in enumerate(h.values):
            if V.leq(v, hv):
                if strict and h.forced and i == h.cap:
                    break
                return i
        if strict:
            raise NoLength(f"[{L.label(a)},{L.label(b)}] lies above every term")
        return h.cap

    return IntervalValuedMap.tabulate(L, out, dim, "aspect")


def _operator(opr) -> Operator:
    if callable(opr):
        return opr
    try:
        return FILTRATION_OPERATORS[opr]
    except KeyError:
        raise NotBasicOperator(f"unknown operator {opr!r}") from None


def _apply(op: Operator, B: IntervalSet) -> IntervalSet:
    try:
        out = op(B)
    except NotBasic as exc:
        raise NotBasicOperator(str(exc)) from None
    if not out.is_basic():
        raise NotBasicOperator("operator output is not basic")
    return out


@dataclass(frozen=True)
class Filtration:
    raw: Seq
    completed: Seq


def opr_filtration(psi: IntervalValuedMap, alpha: int, opr, check: bool = True) -> Filtration:
    """h(0) = alpha; h(i) = h(i-1) v join of psi over Opr(M(psi, h(i-1)))."""
    if check and not is_aspect(psi):
        raise InvalidAspect("filtration needs an aspect")
    op = _operator(opr)
    V = psi.values
    hs = [alpha]
    for _ in range(cap(V)):
        prev = hs[-1]
        B = _apply(op, M(psi, prev, check=False))
        hs.append(V.join_all((psi(a, b) for a, b in B.pairs()), start=prev))
    raw = Seq(V, tuple(hs), generalized=True)
    return Filtration(raw, Seq.completed(V, hs))


def kpr_filtration(D: IntervalSet, opr, length: int | None = None) -> list[IntervalSet]:
    """D, Dvs(Opr(D)), Dvs(Opr(Dvs(Opr(D)))), ...

    With ``length`` the list has length + 1 terms; otherwise it stops at
    the first term equal to its successor.
    """
    if not D.is_division():
        raise NotDivision(f"{D} is not a division set")
    op = _operator(opr)
    terms = [D]
    while length is None or len(terms) <= length:
        nxt = dvs_closure(_apply(op, terms[-1]))
        assert nxt.is_division()
        if length is None and nxt == terms[-1]:
            break
        terms.append(nxt)
    return terms


def kpr_dimension(D: IntervalSet, opr) -> tuple[int, list[IntervalSet]]:
    """Least index whose term is every interval, with the trace that reached it."""
    terms = kpr_filtration(D, opr)
    full = IntervalSet.full(D.lattice)
    for i, T in enumerate(terms):
        if T == full:
            return i, terms[: i + 1]
    raise NoLength(f"filtration stops at {terms[-1].level} set of {len(terms[-1])} intervals")


def gabriel_dimension(L: FiniteLattice, D: IntervalSet | None = None) -> int:
    """Steps of Dvs(Crt(-)) from D (default: trivial intervals) to every interval."""
    return kpr_dimension(IntervalSet.trivial(L) if D is None else D, "crt")[0]


def boyle_dimension(L: FiniteLattice, D: IntervalSet | None = None) -> int:
    """Steps of Dvs(Fll(-)) from D (default: trivial intervals) to every interval."""
    return kpr_dimension(IntervalSet.trivial(L) if D is None else D, "fll")[0]
