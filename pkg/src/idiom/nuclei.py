"""Inflators, nuclei, quotients and the nucleus/division-set correspondence."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .errors import IdiomError, NotDivision, NotInflator, NotNucleus, NotTotal
from .intervals import IntervalSet, associated_inflator, dvs_closure
from .lattice import FiniteLattice, Interval, _bits, is_frame, is_modular
from .maps import LatticeMap

FLAGS = ("inflator", "stable", "prenucleus", "closure", "nucleus")


def _endomap(d: LatticeMap) -> FiniteLattice:
    if d.target is not None and d.target != d.source:
        raise NotTotal("expected a map from a lattice to itself")
    return d.source


def is_inflator(d: LatticeMap) -> bool:
    L = _endomap(d)
    t = d.table
    if any(not L.leq(x, t[x]) for x in L.elements):
        return False
    return all(L.leq(t[x], t[y]) for x in L.elements for y in _bits(L.up[x]))


def classify(d: LatticeMap) -> frozenset[str]:
    """Which of inflator / stable / prenucleus / closure / nucleus ``d`` is."""
    L = _endomap(d)
    if not is_inflator(d):
        return frozenset()
    t = d.table
    flags = {"inflator"}
    stable = prenucleus = True
    for x in L.elements:
        for y in L.elements:
            xy = L.meet(x, y)
            if not L.leq(L.meet(t[x], y), t[xy]):
                stable = False
            if t[xy] != L.meet(t[x], t[y]):
                prenucleus = False
    if stable:
        flags.add("stable")
    if prenucleus:
        flags.add("prenucleus")
    if all(t[t[x]] == t[x] for x in L.elements):
        flags.add("closure")
        if prenucleus:
            flags.add("nucleus")
    return frozenset(flags)


def is_nucleus(d: LatticeMap) -> bool:
    return "nucleus" in classify(d)


@dataclass(frozen=True)
class Tower:
    limit: LatticeMap
    steps: int
    has_length: bool


def tower(d: LatticeMap) -> Tower:
    """Iterate d until d^g == d^(g+1); finite lattices need no limit stages."""
    if not is_inflator(d):
        raise NotInflator(f"{d} is not an inflator")
    L = d.source
    power = LatticeMap.identity(L)
    steps = 0
    while True:
        nxt = d.compose(power)
        if nxt.table == power.table:
            break
        power = nxt
        steps += 1
    return Tower(power, steps, power(L.bottom) == L.top)


# -- enumeration -----------------------------------------------------------


def _closure_from_fixed(L: FiniteLattice, fixed: int) -> tuple[int, ...]:
    return tuple(L.meet_all(_bits(fixed & L.up[x])) for x in L.elements)


def _nucleus_tables(L: FiniteLattice) -> list[tuple[int, ...]]:
    """Every nucleus, found through its fixed set.

    A closure operator is determined by its set of fixed points, which is
    any meet-closed subset containing the top.  Only meet preservation is
    left to check.
    """
    # bottom-up, so every meet strictly below x is already decided
    others = [x for x in L.topological if x != L.top]
    found = []

    def extend(k: int, fixed: int) -> None:
        if k == len(others):
            table = _closure_from_fixed(L, fixed)
            if all(
                table[L.meet(x, y)] == L.meet(table[x], table[y])
                for x in L.elements
                for y in range(x + 1, L.n)
            ):
                found.append(table)
            return
        extend(k + 1, fixed)
        x = others[k]
        if all(fixed >> L.meet(s, x) & 1 or L.meet(s, x) == x for s in _bits(fixed)):
            extend(k + 1, fixed | 1 << x)

    extend(0, 1 << L.top)
    return found


class NucleusLattice:
    """All nuclei of a finite lattice, ordered pointwise.

    ``lattice`` is N(A) as a `FiniteLattice` with ids ``j0, j1, ...``;
    ``nuclei[k]`` and ``divisions[k]`` correspond to element ``k``.
    The identity is always ``j0`` and the constant-top map the last id.
    """

    def __init__(self, ambient: FiniteLattice, tables: Iterable[tuple[int, ...]]):
        self.ambient = ambient
        tabs = sorted(set(tables), key=lambda t: (-sum(t[x] == x for x in range(len(t))), t))
        width = len(str(max(len(tabs) - 1, 0)))
        labels = [f"j{str(k).zfill(width)}" for k in range(len(tabs))]
        self.nuclei = tuple(LatticeMap(ambient, t) for t in tabs)
        self._by_table = {t: k for k, t in enumerate(tabs)}
        pos = dict(zip(labels, tabs))
        self.lattice = FiniteLattice.from_leq(
            labels,
            lambda u, v: all(ambient.leq(p, q) for p, q in zip(pos[u], pos[v])),
            f"N({ambient.name})",
        )
        # from_leq re-sorts labels; zero padding keeps the order
        assert self.lattice.labels == tuple(labels)

    def __len__(self) -> int:
        return len(self.nuclei)

    def index(self, j: LatticeMap) -> int:
        return self._by_table[j.table]

    @property
    def identity(self) -> int:
        return self._by_table[tuple(range(self.ambient.n))]

    @property
    def top(self) -> int:
        return self._by_table[(self.ambient.top,) * self.ambient.n]

    @cached_property
    def divisions(self) -> tuple[IntervalSet, ...]:
        return tuple(_division_of(j) for j in self.nuclei)

    @cached_property
    def division_lattice(self) -> FiniteLattice:
        """D(A) as a `FiniteLattice` with ids ``D0, D1, ...`` matching ``j0, j1, ...``."""
        labels = ["D" + lab[1:] for lab in self.lattice.labels]
        sets = dict(zip(labels, self.divisions))
        return FiniteLattice.from_leq(labels, lambda u, v: sets[u] <= sets[v], f"D({self.ambient.name})")

    def division_index(self, D: IntervalSet) -> int:
        return self._by_table[associated_inflator(D).table]

    def join(self, ks: Iterable[int]) -> int:
        """Join in N(A), computed through division sets."""
        bits = IntervalSet.trivial(self.ambient).bits
        for k in ks:
            bits |= self.divisions[k].bits
        D = dvs_closure(IntervalSet(self.ambient, bits))
        return self.division_index(D)

    def is_frame(self) -> bool:
        return is_frame(self.lattice)


def enumerate_nuclei(L: FiniteLattice, max_size: int | None = None, force: bool = False) -> NucleusLattice:
    L.check_size(max_size, force)
    key = "nuclei"
    if key not in L._cache:
        L._cache[key] = NucleusLattice(L, _nucleus_tables(L))
    return L._cache[key]


def quotient(L: FiniteLattice, j: LatticeMap) -> FiniteLattice:
    """The fixed set of j with the induced order; joins are j(join)."""
    if not is_nucleus(j):
        raise NotNucleus(f"{j} is not a nucleus")
    fixed = [L.label(x) for x in L.elements if j(x) == x]
    Q = FiniteLattice.from_leq(fixed, lambda u, v: L.leq(L[u], L[v]), f"{L.name}_j")
    assert is_modular(Q) or not is_modular(L)
    return Q


# -- nuclei <-> division sets ------------------------------------------------


def _division_of(j: LatticeMap) -> IntervalSet:
    L = j.source
    return IntervalSet.where(L, lambda a, b: L.leq(b, j(a)))


def nucleus_to_division(j: LatticeMap) -> IntervalSet:
    """[a,b] is in D_j iff b <= j(a)."""
    if not is_nucleus(j):
        raise NotNucleus(f"{j} is not a nucleus")
    return _division_of(j)


def division_to_nucleus(D: IntervalSet) -> LatticeMap:
    """The associated inflator of a division set, which is a nucleus."""
    if not D.is_division():
        raise NotDivision(f"{D} is not a division set")
    return associated_inflator(D)


def chi(I: Interval) -> LatticeMap:
    """The largest nucleus j with j(lo) ^ hi == lo."""
    L = I.lattice
    N = enumerate_nuclei(L, force=True)
    ok = [k for k, j in enumerate(N.nuclei) if L.meet(j(I.lo), I.hi) == I.lo]
    best = N.nuclei[N.join(ok)]
    if L.meet(best(I.lo), I.hi) != I.lo or not all(N.nuclei[k].leq(best) for k in ok):
        raise IdiomError(f"no largest nucleus for {I}")
    return best
