"""Finite bounded lattices.

A finite lattice is complete and upper-continuous for free, so every
finite modular lattice is an idiom.  Nothing here checks
upper-continuity separately; `idl_holds` exists so the tests can state
the law literally on directed families.

Elements are opaque string ids.  Internally every element is an index
into ``labels`` (which is sorted lexicographically) and every up-set or
down-set is an ``int`` bitmask over those indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product as _cartesian
from typing import Iterable, Sequence

from .errors import (
    CycleDetected,
    ElementBelowBase,
    MixedLattices,
    NoBounds,
    NotALattice,
    OutOfInterval,
    ParseError,
    SizeLimit,
)

DEFAULT_MAX_SIZE = 12


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class FiniteLattice:
    """An immutable finite lattice with precomputed meet and join tables.

    Do not call the constructor directly unless ``up`` is already a
    partial order; use `build_lattice` or `FiniteLattice.from_leq`.
    """

    def __init__(self, labels: Sequence[str], up: Sequence[int], name: str | None = None):
        self.labels = tuple(labels)
        self.n = len(self.labels)
        self.up = tuple(up)
        self.name = name
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        down = [0] * self.n
        for i, mask in enumerate(self.up):
            for j in _bits(mask):
                down[j] |= 1 << i
        self.down = tuple(down)
        full = (1 << self.n) - 1
        bottoms = [i for i in range(self.n) if self.up[i] == full]
        tops = [i for i in range(self.n) if self.down[i] == full]
        if not bottoms or not tops:
            raise NoBounds(f"{name or 'lattice'}: no global bottom/top")
        self.bottom = bottoms[0]
        self.top = tops[0]
        by_down = {m: i for i, m in enumerate(self.down)}
        by_up = {m: i for i, m in enumerate(self.up)}
        meet = [[0] * self.n for _ in range(self.n)]
        join = [[0] * self.n for _ in range(self.n)]
        for i in range(self.n):
            for j in range(i, self.n):
                m = by_down.get(self.down[i] & self.down[j])
                s = by_up.get(self.up[i] & self.up[j])
                if m is None or s is None:
                    which = "meet" if m is None else "join"
                    raise NotALattice(
                        f"{self.labels[i]} and {self.labels[j]} have no unique {which}"
                    )
                meet[i][j] = meet[j][i] = m
                join[i][j] = join[j][i] = s
        self._meet = tuple(tuple(r) for r in meet)
        self._join = tuple(tuple(r) for r in join)
        # scratch space for derived tables (intervals, nuclei, ...)
        self._cache: dict = {}

    # -- construction -------------------------------------------------

    @classmethod
    def from_leq(cls, labels: Sequence[str], leq, name: str | None = None) -> FiniteLattice:
        """Build from a predicate ``leq(x, y)`` on labels.  Labels are re-sorted."""
        labs = sorted(labels)
        if len(set(labs)) != len(labs):
            raise ParseError("duplicate element ids")
        up = []
        for x in labs:
            mask = 0
            for j, y in enumerate(labs):
                if leq(x, y):
                    mask |= 1 << j
            up.append(mask)
        _check_partial_order(labs, up)
        return cls(labs, up, name)

    # -- basic accessors ----------------------------------------------

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, label: str) -> int:
        return self.index[label]

    def __repr__(self) -> str:
        return f"FiniteLattice({self.name or '?'}, n={self.n})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteLattice) and (
            self.labels == other.labels and self.up == other.up
        )

    def __hash__(self) -> int:
        return hash((self.labels, self.up))

    def label(self, i: int) -> str:
        return self.labels[i]

    @property
    def elements(self) -> range:
        return range(self.n)

    def leq(self, x: int, y: int) -> bool:
        return bool(self.up[x] >> y & 1)

    def lt(self, x: int, y: int) -> bool:
        return x != y and bool(self.up[x] >> y & 1)

    def meet(self, x: int, y: int) -> int:
        return self._meet[x][y]

    def join(self, x: int, y: int) -> int:
        return self._join[x][y]

    def join_all(self, xs: Iterable[int], start: int | None = None) -> int:
        acc = self.bottom if start is None else start
        for x in xs:
            acc = self._join[acc][x]
        return acc

    def meet_all(self, xs: Iterable[int], start: int | None = None) -> int:
        acc = self.top if start is None else start
        for x in xs:
            acc = self._meet[acc][x]
        return acc

    def between(self, lo: int, hi: int) -> list[int]:
        """Elements of [lo, hi] in index order."""
        return list(_bits(self.up[lo] & self.down[hi]))

    def between_mask(self, lo: int, hi: int) -> int:
        return self.up[lo] & self.down[hi]

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        out = []
        for x in range(self.n):
            above = self.up[x] & ~(1 << x)
            for y in _bits(above):
                # y covers x iff nothing strictly between
                if (above & self.down[y]) == 1 << y:
                    out.append((x, y))
        return tuple(sorted(out, key=lambda p: (self.labels[p[0]], self.labels[p[1]])))

    @cached_property
    def rank(self) -> tuple[int, ...]:
        """Length of the longest chain from the bottom to each element."""
        r = [0] * self.n
        for y in self.topological:
            for x, z in self.covers:
                if z == y:
                    r[y] = max(r[y], r[x] + 1)
        return tuple(r)

    @cached_property
    def topological(self) -> tuple[int, ...]:
        """Elements sorted so that x < y implies x comes first."""
        return tuple(sorted(range(self.n), key=lambda i: (bin(self.down[i]).count("1"), self.labels[i])))

    @cached_property
    def intervals(self) -> tuple[tuple[int, int], ...]:
        """All (lo, hi) with lo <= hi; position in this tuple is the interval id."""
        return tuple((a, b) for a in range(self.n) for b in _bits(self.up[a]))

    @cached_property
    def interval_id(self) -> dict[tuple[int, int], int]:
        return {p: k for k, p in enumerate(self.intervals)}

    def interval(self, lo, hi) -> Interval:
        if isinstance(lo, str):
            lo = self.index[lo]
        if isinstance(hi, str):
            hi = self.index[hi]
        return Interval(lo, hi, self)

    def check_size(self, max_size: int | None = None, force: bool = False) -> None:
        cap = DEFAULT_MAX_SIZE if max_size is None else max_size
        if self.n > cap and not force:
            raise SizeLimit(f"{self.name or 'lattice'} has {self.n} elements (cap {cap})")


@dataclass(frozen=True)
class Interval:
    """The interval [lo, hi] of an ambient lattice (indices, lo <= hi)."""

    lo: int
    hi: int
    lattice: FiniteLattice = field(compare=False, repr=False)

    def __post_init__(self):
        if not self.lattice.leq(self.lo, self.hi):
            raise OutOfInterval(
                f"[{self.lattice.label(self.lo)},{self.lattice.label(self.hi)}] is not an interval"
            )

    @property
    def trivial(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, x: int) -> bool:
        return self.lattice.leq(self.lo, x) and self.lattice.leq(x, self.hi)

    def __str__(self) -> str:
        return f"[{self.lattice.label(self.lo)},{self.lattice.label(self.hi)}]"

    def elements(self) -> list[int]:
        return self.lattice.between(self.lo, self.hi)


def _check_partial_order(labels, up) -> None:
    n = len(labels)
    for i in range(n):
        if not up[i] >> i & 1:
            raise ParseError(f"{labels[i]} is not reflexive")
        for j in _bits(up[i]):
            if j != i and up[j] >> i & 1:
                raise CycleDetected(f"{labels[i]} and {labels[j]} lie on a cycle")
            if up[j] & ~up[i]:
                raise ParseError("order relation is not transitive")


def build_lattice(elements: Iterable[str], covers: Iterable[tuple[str, str]], name: str | None = None) -> FiniteLattice:
    """Validate a Hasse diagram and return the lattice it generates.

    The order is the reflexive-transitive closure of ``covers``.  Raises
    `CycleDetected`, `NoBounds` or `NotALattice`.
    """
    elems = list(elements)
    if len(set(elems)) != len(elems):
        raise ParseError("duplicate element ids")
    for e in elems:
        if not isinstance(e, str):
            raise ParseError(f"element id {e!r} is not a string")
    labels = sorted(elems)
    index = {lab: i for i, lab in enumerate(labels)}
    succ: list[set[int]] = [set() for _ in labels]
    for lo, hi in covers:
        if lo not in index or hi not in index:
            raise ParseError(f"cover ({lo},{hi}) uses an undeclared element")
        if lo == hi:
            raise ParseError(f"self-cover on {lo}")
        succ[index[lo]].add(index[hi])
    up = []
    for i in range(len(labels)):
        seen = 1 << i
        stack = [i]
        while stack:
            x = stack.pop()
            for y in succ[x]:
                if y == i:
                    raise CycleDetected(f"cycle through {labels[i]}")
                if not seen >> y & 1:
                    seen |= 1 << y
                    stack.append(y)
        up.append(seen)
    return FiniteLattice(labels, up, name)


# -- standard constructions ---------------------------------------------


def chain(n: int, name: str | None = None) -> FiniteLattice:
    """The n-element chain with zero-padded labels, so index == height."""
    width = len(str(max(n - 1, 0)))
    labels = [str(i).zfill(width) for i in range(n)]
    return FiniteLattice.from_leq(labels, lambda x, y: int(x) <= int(y), name or f"C{n}")


def product(left: FiniteLattice, right: FiniteLattice, name: str | None = None) -> FiniteLattice:
    """Cartesian product with labels ``u.v``."""
    pairs = {f"{u}.{v}": (left[u], right[v]) for u, v in _cartesian(left.labels, right.labels)}
    return FiniteLattice.from_leq(
        list(pairs),
        lambda x, y: left.leq(pairs[x][0], pairs[y][0]) and right.leq(pairs[x][1], pairs[y][1]),
        name or f"{left.name}x{right.name}",
    )


# -- structural predicates ----------------------------------------------


def is_modular(L: FiniteLattice) -> bool:
    """(a v c) ^ b == a v (c ^ b) whenever a <= b."""
    for a in L.elements:
        for b in _bits(L.up[a]):
            for c in L.elements:
                if L.meet(L.join(a, c), b) != L.join(a, L.meet(c, b)):
                    return False
    return True


def is_frame(L: FiniteLattice) -> bool:
    """Full distributivity.  For finite L it reduces to the binary law."""
    for a in L.elements:
        for b in L.elements:
            ab = L.meet(a, b)
            for c in range(b + 1, L.n):
                if L.meet(a, L.join(b, c)) != L.join(ab, L.meet(a, c)):
                    return False
    return True


def implication_table(L: FiniteLattice) -> dict[tuple[int, int], int] | None:
    """Brute-force implication ``x <= (a > b)  iff  x ^ b <= a``.

    Returns the table keyed by (a, b), or None when some pair has no
    implication.
    """
    table = {}
    for a in L.elements:
        for b in L.elements:
            below = [x for x in L.elements if L.leq(L.meet(x, b), a)]
            cand = L.join_all(below)
            for x in L.elements:
                if L.leq(x, cand) != L.leq(L.meet(x, b), a):
                    return None
            table[a, b] = cand
    return table


def has_implication(L: FiniteLattice) -> bool:
    return implication_table(L) is not None


def is_directed(L: FiniteLattice, xs: Iterable[int]) -> bool:
    xs = list(xs)
    if not xs:
        return False
    members = set(xs)
    for x in xs:
        for y in xs:
            if not any(L.leq(x, z) and L.leq(y, z) for z in members):
                return False
    return True


def idl_holds(L: FiniteLattice, a: int, xs: Iterable[int]) -> bool:
    xs = list(xs)
    return L.meet(a, L.join_all(xs)) == L.join_all(L.meet(a, x) for x in xs)


def is_independent_over(a: int, xs: Iterable[int], L: FiniteLattice) -> bool:
    """x ^ (a v join(X - {x})) == a and x > a for every x in X.

    The empty family is independent.
    """
    xs = list(xs)
    for x in xs:
        if not L.leq(a, x):
            raise ElementBelowBase(f"{L.label(x)} is not above {L.label(a)}")
    if len(set(xs)) != len(xs):
        return False
    for k, x in enumerate(xs):
        if x == a:
            return False
        rest = L.join_all(xs[:k] + xs[k + 1:], start=a)
        if L.meet(x, rest) != a:
            return False
    return True


def is_large(x: int, interval: Interval) -> bool:
    """Every y in the interval with y ^ x == lo is lo itself."""
    L = interval.lattice
    if x not in interval:
        raise OutOfInterval(f"{L.label(x)} is not in {interval}")
    lo = interval.lo
    return all(y == lo for y in interval.elements() if L.meet(y, x) == lo)


def same_lattice(*intervals: Interval) -> FiniteLattice:
    L = intervals[0].lattice
    for iv in intervals[1:]:
        if iv.lattice is not L and iv.lattice != L:
            raise MixedLattices("intervals come from different lattices")
    return L
