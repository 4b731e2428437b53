"""Table-valued maps: element maps A -> A' and interval-valued maps I(A) -> value lattice.

A value lattice is anything with ``bottom``, ``top``, ``leq``, ``meet``,
``join``, ``meet_all``, ``join_all`` and ``label``.  `FiniteLattice`
qualifies (values are element indices); `PowersetOp` is the opposite of
a powerset, used for supports, whose values are frozensets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .errors import NotTotal, ParseError
from .lattice import FiniteLattice


class PowersetOp:
    """P(universe) ordered by reverse inclusion: meet is union, join is intersection."""

    def __init__(self, universe: Iterable, label: Callable | None = None):
        self.universe = frozenset(universe)
        self.bottom = self.universe
        self.top = frozenset()
        self._label = label

    def leq(self, x: frozenset, y: frozenset) -> bool:
        return x >= y

    def meet(self, x, y):
        return x | y

    def join(self, x, y):
        return x & y

    def meet_all(self, xs, start=None):
        acc = self.top if start is None else start
        for x in xs:
            acc = acc | x
        return acc

    def join_all(self, xs, start=None):
        acc = self.bottom if start is None else start
        for x in xs:
            acc = acc & x
        return acc

    def label(self, x) -> str:
        f = self._label or str
        return "{" + ",".join(sorted(f(e) for e in x)) + "}"


@dataclass(frozen=True)
class LatticeMap:
    """A total function on elements, stored as a tuple of target indices."""

    source: FiniteLattice
    table: tuple[int, ...]
    target: FiniteLattice | None = None

    def __post_init__(self):
        if len(self.table) != self.source.n:
            raise NotTotal(f"table has {len(self.table)} entries for {self.source.n} elements")

    @property
    def codomain(self) -> FiniteLattice:
        return self.source if self.target is None else self.target

    def __call__(self, x: int) -> int:
        return self.table[x]

    @classmethod
    def from_dict(cls, source: FiniteLattice, mapping: Mapping[str, str], target: FiniteLattice | None = None) -> LatticeMap:
        tgt = source if target is None else target
        missing = [lab for lab in source.labels if lab not in mapping]
        if missing:
            raise NotTotal(f"no image for {', '.join(missing)}")
        try:
            table = tuple(tgt[mapping[lab]] for lab in source.labels)
        except KeyError as exc:
            raise ParseError(f"unknown target element {exc}") from None
        return cls(source, table, target)

    @classmethod
    def identity(cls, L: FiniteLattice) -> LatticeMap:
        return cls(L, tuple(range(L.n)))

    @classmethod
    def constant(cls, L: FiniteLattice, value: int, target: FiniteLattice | None = None) -> LatticeMap:
        return cls(L, (value,) * L.n, target)

    def compose(self, inner: LatticeMap) -> LatticeMap:
        """self after inner."""
        return LatticeMap(inner.source, tuple(self.table[v] for v in inner.table), self.target)

    def leq(self, other: LatticeMap) -> bool:
        C = self.codomain
        return all(C.leq(u, v) for u, v in zip(self.table, other.table))

    def to_dict(self) -> dict[str, str]:
        C = self.codomain
        return {self.source.label(i): C.label(v) for i, v in enumerate(self.table)}

    def __str__(self) -> str:
        return "{" + ", ".join(f"{k}->{v}" for k, v in self.to_dict().items()) + "}"


@dataclass(frozen=True)
class IntervalValuedMap:
    """A total function from the intervals of ``lattice`` to ``values``.

    ``table[k]`` is the value on ``lattice.intervals[k]``.  ``kind`` is a
    claim made by the constructor (allocation, aspect, radical, raw), never
    trusted by the checkers.
    """

    lattice: FiniteLattice
    values: object
    table: tuple
    kind: str = "raw"

    def __post_init__(self):
        if len(self.table) != len(self.lattice.intervals):
            raise NotTotal("interval-valued map is not total")

    def __call__(self, lo: int, hi: int):
        return self.table[self.lattice.interval_id[lo, hi]]

    @classmethod
    def tabulate(cls, L: FiniteLattice, values, fn: Callable[[int, int], object], kind: str = "raw") -> IntervalValuedMap:
        return cls(L, values, tuple(fn(a, b) for a, b in L.intervals), kind)

    @classmethod
    def constant(cls, L: FiniteLattice, values, value, kind: str = "raw") -> IntervalValuedMap:
        return cls(L, values, (value,) * len(L.intervals), kind)

    def leq(self, other: IntervalValuedMap) -> bool:
        V = self.values
        return all(V.leq(u, v) for u, v in zip(self.table, other.table))

    def meet(self, other: IntervalValuedMap) -> IntervalValuedMap:
        V = self.values
        return IntervalValuedMap(self.lattice, V, tuple(V.meet(u, v) for u, v in zip(self.table, other.table)))

    def join(self, other: IntervalValuedMap) -> IntervalValuedMap:
        V = self.values
        return IntervalValuedMap(self.lattice, V, tuple(V.join(u, v) for u, v in zip(self.table, other.table)))

    def with_kind(self, kind: str) -> IntervalValuedMap:
        return IntervalValuedMap(self.lattice, self.values, self.table, kind)

    def postcompose(self, rho: LatticeMap) -> IntervalValuedMap:
        """rho after self, for a map rho between value lattices."""
        return IntervalValuedMap(self.lattice, rho.codomain, tuple(rho(v) for v in self.table))
