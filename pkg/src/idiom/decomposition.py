"""Radical functions, supports, p-inertial intervals and decompositions.

A radical function here is any `IntervalValuedMap`; its value set Omega
is ``rho.values`` (a `FiniteLattice`, usually N(A) through chi).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as _cartesian

from .allocations import Verdict, PASS
from .errors import Absent, NotInert, Unknown
from .intervals import IntervalSet
from .lattice import FiniteLattice, Interval, chain, is_independent_over, is_large
from .maps import IntervalValuedMap, PowersetOp

EXHAUSTIVE_TRUST = 10


def is_radical(rho: IntervalValuedMap) -> Verdict:
    """Transpose equality and rho(a,c) <= rho(a,b) for a <= b <= c."""
    L, V = rho.lattice, rho.values
    for l in L.elements:
        for r in L.elements:
            if rho(L.meet(l, r), r) != rho(l, L.join(l, r)):
                return Verdict(False, 1, f"l={L.label(l)} r={L.label(r)}")
    for a, c in L.intervals:
        for b in L.between(a, c):
            if not V.leq(rho(a, c), rho(a, b)):
                return Verdict(False, 2, f"a,b,c={L.label(a)},{L.label(b)},{L.label(c)}")
    return PASS


def _above(L: FiniteLattice, lo: int, hi: int) -> list[int]:
    return [x for x in L.between(lo, hi) if x != lo]


def is_stable(rho: IntervalValuedMap, I: Interval) -> bool:
    """lo < hi and rho(lo, x) is the same for every lo < x <= hi."""
    if I.trivial:
        return False
    v = rho(I.lo, I.hi)
    return all(rho(I.lo, x) == v for x in _above(I.lattice, I.lo, I.hi))


def support(rho: IntervalValuedMap, I: Interval) -> frozenset:
    """Values rho(lo, x) over the stable [lo, x] inside I."""
    L = I.lattice
    return frozenset(
        rho(I.lo, x) for x in _above(L, I.lo, I.hi) if is_stable(rho, Interval(I.lo, x, L))
    )


def _omega(rho: IntervalValuedMap) -> PowersetOp:
    V = rho.values
    universe = V.elements if isinstance(V, FiniteLattice) else set(rho.table)
    return PowersetOp(universe, V.label if isinstance(V, FiniteLattice) else None)


def support_map(rho: IntervalValuedMap) -> IntervalValuedMap:
    """The support as a map into P(Omega)^op."""
    L = rho.lattice
    return IntervalValuedMap.tabulate(L, _omega(rho), lambda a, b: support(rho, Interval(a, b, L)), "allocation")


def singleton_lift(rho: IntervalValuedMap) -> IntervalValuedMap:
    """a,b -> {rho(a,b)} in P(Omega)^op."""
    return IntervalValuedMap(rho.lattice, _omega(rho), tuple(frozenset([v]) for v in rho.table), rho.kind)


def rho_from_allocation(phi: IntervalValuedMap, omega: FiniteLattice) -> IntervalValuedMap:
    """Pointwise meet in Omega of a set-valued map; the empty set meets to top."""
    return IntervalValuedMap(phi.lattice, omega, tuple(omega.meet_all(s) for s in phi.table), "radical")


# -- p-inertial intervals ------------------------------------------------


def is_p_inertial(phi: IntervalValuedMap, p, I: Interval) -> bool:
    return phi(I.lo, I.hi) == p and is_stable(phi, I)


def p_indicator(phi: IntervalValuedMap, p) -> IntervalValuedMap:
    """2-valued map: 1 on p-inert and trivial intervals, 0 elsewhere."""
    L = phi.lattice
    two = chain(2)
    return IntervalValuedMap.tabulate(
        L, two, lambda a, b: two.top if a == b or is_p_inertial(phi, p, Interval(a, b, L)) else two.bottom
    )


def D_p(phi: IntervalValuedMap, p) -> IntervalSet:
    """The p-inert intervals together with the trivial ones."""
    L = phi.lattice
    return IntervalSet.where(L, lambda a, b: a == b or is_p_inertial(phi, p, Interval(a, b, L)))


def is_inertial_point(phi: IntervalValuedMap, p, I: Interval, x: int) -> bool:
    """[lo,x] is p-inert and no y in I with x ^ y = lo has [lo,y] p-inert."""
    L, lo = I.lattice, I.lo
    if x not in I or not is_p_inertial(phi, p, Interval(lo, x, L)):
        return False
    return not any(
        L.meet(x, y) == lo and is_p_inertial(phi, p, Interval(lo, y, L)) for y in _above(L, lo, I.hi)
    )


def find_inertial_point(phi: IntervalValuedMap, p, I: Interval, z: int) -> int:
    """Grow z to a p-inertial point by adding independent p-inert pieces.

    Candidates are taken in element order.  If the greedy pass ends
    somewhere that is not an inertial point, every x above z is tried.
    """
    L, lo = I.lattice, I.lo
    if z not in I or not is_p_inertial(phi, p, Interval(lo, z, L)):
        raise NotInert(f"[{L.label(lo)},{L.label(z)}] is not {p}-inert")
    x = z
    grew = True
    while grew:
        grew = False
        for y in _above(L, lo, I.hi):
            if L.meet(x, y) == lo and is_p_inertial(phi, p, Interval(lo, y, L)):
                xy = L.join(x, y)
                if is_p_inertial(phi, p, Interval(lo, xy, L)):
                    x, grew = xy, True
                    break
    if is_inertial_point(phi, p, I, x):
        return x
    for x in L.between(z, I.hi):
        if is_inertial_point(phi, p, I, x):
            return x
    raise NotInert(f"no {p}-inertial point above {L.label(z)} in {I}")


def is_adequate(phi: IntervalValuedMap) -> Verdict:
    """Every nontrivial interval has nonempty support."""
    L = phi.lattice
    for a, b in L.intervals:
        if a != b and not support(phi, Interval(a, b, L)):
            return Verdict(False, None, f"[{L.label(a)},{L.label(b)}]")
    return PASS


def is_atomic(phi: IntervalValuedMap, I: Interval) -> bool:
    return len(support(phi, I)) == 1


# -- decompositions ----------------------------------------------------------


@dataclass
class Decomposition:
    interval: Interval
    parts: dict  # support value -> element
    transcript: list[str] = field(default_factory=list)


def check_decomposition(phi: IntervalValuedMap, I: Interval, parts: dict) -> list[str]:
    """Re-verify the three conditions; returns failure messages, empty when valid."""
    L, lo = I.lattice, I.lo
    bad = []
    if set(parts) != set(support(phi, I)):
        bad.append("family is not indexed by the support")
    xs = list(parts.values())
    if any(x not in I for x in xs):
        bad.append("a part lies outside the interval")
        return bad
    if not is_independent_over(lo, xs, L):
        bad.append("parts are not independent over the base")
    if not is_large(L.join_all(xs, start=lo), I):
        bad.append("join of the parts is not large")
    for p, x in parts.items():
        if not is_p_inertial(phi, p, Interval(lo, x, L)):
            bad.append(f"part for {_vlabel(phi, p)} is not inert")
    return bad


def _vlabel(phi: IntervalValuedMap, v) -> str:
    return phi.values.label(v)


def _ordered(phi: IntervalValuedMap, values) -> list:
    return sorted(values, key=lambda v: _vlabel(phi, v))


def find_decomposition(phi: IntervalValuedMap, I: Interval) -> Decomposition:
    """A support-indexed family of p-inert pieces, independent over lo with large join.

    Tries one inertial point per support value first, then every
    assignment of p-inert elements.  Raises Absent when nothing works on a
    lattice of at most `EXHAUSTIVE_TRUST` elements, Unknown above that.
    """
    L, lo = I.lattice, I.lo
    if I.trivial:
        raise Absent(f"{I} is trivial")
    sup = _ordered(phi, support(phi, I))
    log = [f"support: {{{', '.join(_vlabel(phi, p) for p in sup)}}}"]
    if not sup:
        return _give_up(L, I, log, "empty support")
    inert = {p: [x for x in _above(L, lo, I.hi) if is_p_inertial(phi, p, Interval(lo, x, L))] for p in sup}

    parts: dict = {}
    for p in sup:
        for z in inert[p]:
            try:
                x = find_inertial_point(phi, p, I, z)
            except NotInert:
                continue
            if is_independent_over(lo, [*parts.values(), x], L):
                parts[p] = x
                log.append(f"{_vlabel(phi, p)}: inertial point {L.label(x)} from {L.label(z)}")
                break
        else:
            log.append(f"{_vlabel(phi, p)}: no independent inertial point")
            break
    if len(parts) == len(sup) and not check_decomposition(phi, I, parts):
        log.append("verified: independent, large, inert")
        return Decomposition(I, parts, log)

    log.append("greedy pass failed; searching all assignments")
    for choice in _cartesian(*(inert[p] for p in sup)):
        cand = dict(zip(sup, choice))
        if not check_decomposition(phi, I, cand):
            log.append("verified: independent, large, inert")
            return Decomposition(I, cand, log)
    return _give_up(L, I, log, "no assignment satisfies all three conditions")


def _give_up(L: FiniteLattice, I: Interval, log: list[str], why: str):
    log.append(why)
    if L.n <= EXHAUSTIVE_TRUST:
        raise Absent(f"{I}: {why}")
    raise Unknown(f"{I}: {why} (lattice too large to trust the search)")
