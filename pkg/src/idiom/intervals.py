"""Interval sets and the closures and derivatives acting on them.

An `IntervalSet` is a bitmask over ``lattice.intervals``.  Levels, from
weakest to strongest: abstract (closed under similarity), basic (plus
subintervals), congruence (plus abutting), division (plus joins over a
fixed base).  Levels are recomputed from the members, never stored.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import MixedLattices, NotBasic
from .lattice import FiniteLattice, Interval, _bits
from .maps import LatticeMap

LEVELS = ("raw", "abstract", "basic", "congruence", "division")


class _Tables:
    """Per-lattice interval data: subinterval masks and similarity."""

    def __init__(self, L: FiniteLattice):
        ids = L.interval_id
        self.count = len(L.intervals)
        self.full = (1 << self.count) - 1
        self.trivial = 0
        for a in L.elements:
            self.trivial |= 1 << ids[a, a]
        self.sub = []
        for a, b in L.intervals:
            mask = 0
            for x in L.between(a, b):
                for y in _bits(L.up[x] & L.down[b]):
                    mask |= 1 << ids[x, y]
            self.sub.append(mask)
        sim = [1 << k for k in range(self.count)]
        for l in L.elements:
            for r in L.elements:
                p = ids[l, L.join(l, r)]
                q = ids[L.meet(l, r), r]
                sim[p] |= 1 << q
                sim[q] |= 1 << p
        self.sim = sim
        # classes of the equivalence generated by one-step similarity
        cls = [0] * self.count
        for k in range(self.count):
            if cls[k]:
                continue
            comp = 1 << k
            frontier = comp
            while frontier:
                nxt = 0
                for j in _bits(frontier):
                    nxt |= sim[j]
                frontier = nxt & ~comp
                comp |= nxt
            for j in _bits(comp):
                cls[j] = comp
        self.cls = cls


def tables(L: FiniteLattice) -> _Tables:
    t = L._cache.get("intervals")
    if t is None:
        t = L._cache["intervals"] = _Tables(L)
    return t


@dataclass(frozen=True)
class IntervalSet:
    lattice: FiniteLattice = field(compare=False, repr=False)
    bits: int

    # -- constructors ---------------------------------------------------

    @classmethod
    def empty(cls, L: FiniteLattice) -> IntervalSet:
        return cls(L, 0)

    @classmethod
    def trivial(cls, L: FiniteLattice) -> IntervalSet:
        """The set O of all trivial intervals."""
        return cls(L, tables(L).trivial)

    @classmethod
    def full(cls, L: FiniteLattice) -> IntervalSet:
        """The set I(A) of all intervals."""
        return cls(L, tables(L).full)

    @classmethod
    def from_pairs(cls, L: FiniteLattice, pairs: Iterable) -> IntervalSet:
        """Pairs may be (lo, hi) indices, (lo, hi) labels or `Interval` objects."""
        bits = 0
        for p in pairs:
            if isinstance(p, Interval):
                lo, hi = p.lo, p.hi
            else:
                lo, hi = p
                lo = L[lo] if isinstance(lo, str) else lo
                hi = L[hi] if isinstance(hi, str) else hi
            L.interval(lo, hi)
            bits |= 1 << L.interval_id[lo, hi]
        return cls(L, bits)

    @classmethod
    def where(cls, L: FiniteLattice, pred) -> IntervalSet:
        bits = 0
        for k, (a, b) in enumerate(L.intervals):
            if pred(a, b):
                bits |= 1 << k
        return cls(L, bits)

    # -- set protocol ---------------------------------------------------

    def contains(self, lo: int, hi: int) -> bool:
        return bool(self.bits >> self.lattice.interval_id[lo, hi] & 1)

    def __contains__(self, item) -> bool:
        if isinstance(item, Interval):
            item = (item.lo, item.hi)
        k = self.lattice.interval_id.get(tuple(item))
        return k is not None and bool(self.bits >> k & 1)

    def pairs(self) -> list[tuple[int, int]]:
        ivs = self.lattice.intervals
        return [ivs[k] for k in _bits(self.bits)]

    def __iter__(self) -> Iterator[Interval]:
        L = self.lattice
        return (Interval(a, b, L) for a, b in self.pairs())

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def _same(self, other: IntervalSet) -> None:
        if other.lattice is not self.lattice and other.lattice != self.lattice:
            raise MixedLattices("interval sets over different lattices")

    def __or__(self, other: IntervalSet) -> IntervalSet:
        self._same(other)
        return IntervalSet(self.lattice, self.bits | other.bits)

    def __and__(self, other: IntervalSet) -> IntervalSet:
        self._same(other)
        return IntervalSet(self.lattice, self.bits & other.bits)

    def __le__(self, other: IntervalSet) -> bool:
        self._same(other)
        return self.bits & ~other.bits == 0

    def __ge__(self, other: IntervalSet) -> bool:
        return other <= self

    def __lt__(self, other: IntervalSet) -> bool:
        return self <= other and self.bits != other.bits

    def __hash__(self) -> int:
        return hash(self.bits)

    def __str__(self) -> str:
        L = self.lattice
        inner = ", ".join(f"[{L.label(a)},{L.label(b)}]" for a, b in self.sorted_pairs())
        return "{" + inner + "}"

    def sorted_pairs(self) -> list[tuple[int, int]]:
        L = self.lattice
        return sorted(self.pairs(), key=lambda p: (L.label(p[0]), L.label(p[1])))

    def labels(self) -> list[list[str]]:
        L = self.lattice
        return [[L.label(a), L.label(b)] for a, b in self.sorted_pairs()]

    def nontrivial(self) -> IntervalSet:
        return IntervalSet(self.lattice, self.bits & ~tables(self.lattice).trivial)

    # -- levels -----------------------------------------------------------

    def is_abstract(self) -> bool:
        if not self.bits:
            return False
        sim = tables(self.lattice).sim
        return all(sim[k] & ~self.bits == 0 for k in _bits(self.bits))

    def is_basic(self) -> bool:
        if not self.is_abstract():
            return False
        sub = tables(self.lattice).sub
        return all(sub[k] & ~self.bits == 0 for k in _bits(self.bits))

    def is_congruence(self) -> bool:
        return self.is_basic() and cng_closure(self).bits == self.bits

    def is_pre_division(self) -> bool:
        if not self.is_basic():
            return False
        L = self.lattice
        top = _upper_ends(self)
        return all(self.contains(a, L.join_all(_bits(top[a]), start=a)) for a in L.elements)

    def is_division(self) -> bool:
        return self.is_congruence() and self.is_pre_division()

    @property
    def level(self) -> str:
        if not self.is_abstract():
            return "raw"
        if not self.is_basic():
            return "abstract"
        if not self.is_congruence():
            return "basic"
        if not self.is_pre_division():
            return "congruence"
        return "division"


def _upper_ends(S: IntervalSet) -> list[int]:
    """For each a, the mask of x with [a, x] in S."""
    L = S.lattice
    out = [0] * L.n
    for a, b in S.pairs():
        out[a] |= 1 << b
    return out


def _membership(S: IntervalSet) -> list[list[bool]]:
    L = S.lattice
    mem = [[False] * L.n for _ in range(L.n)]
    for a, b in S.pairs():
        mem[a][b] = True
    return mem


def _require_basic(B: IntervalSet) -> None:
    if not B.is_basic():
        raise NotBasic(f"{B} is not a basic set")


# -- similarity -------------------------------------------------------------


def similar(I: Interval, J: Interval) -> bool:
    """One-step similarity: {I, J} = {[l, l v r], [l ^ r, r]} for some l, r."""
    if I.lattice is not J.lattice and I.lattice != J.lattice:
        raise MixedLattices("intervals come from different lattices")
    L = I.lattice
    t = tables(L)
    return bool(t.sim[L.interval_id[I.lo, I.hi]] >> L.interval_id[J.lo, J.hi] & 1)


# -- closures -----------------------------------------------------------------


def basic_closure(S: IntervalSet) -> IntervalSet:
    """Least basic set containing S and all trivial intervals."""
    t = tables(S.lattice)
    bits = S.bits | t.trivial
    while True:
        grown = bits
        for k in _bits(bits):
            grown |= t.sub[k] | t.cls[k]
        if grown == bits:
            return IntervalSet(S.lattice, bits)
        bits = grown


def cng_closure(B: IntervalSet) -> IntervalSet:
    """Intervals that a finite chain partitions into steps from B."""
    if not B.is_basic():
        B = basic_closure(B)
    L = B.lattice
    steps = _upper_ends(B)
    reach = [0] * L.n
    for a in reversed(L.topological):
        r = 1 << a
        for y in _bits(steps[a] & ~(1 << a)):
            r |= reach[y]
        reach[a] = r
    ids = L.interval_id
    bits = 0
    for a in L.elements:
        for b in _bits(reach[a]):
            bits |= 1 << ids[a, b]
    return IntervalSet(L, bits)


def _dvs_predicate(B: IntervalSet) -> IntervalSet:
    """[a,b] such that every a <= x < b has some x < y <= b with [x,y] in B."""
    L = B.lattice
    steps = _upper_ends(B)
    # reachable_tops[x]: every b lying above some nontrivial B-step out of x
    reachable_tops = [0] * L.n
    for x in L.elements:
        m = 0
        for y in _bits(steps[x] & ~(1 << x)):
            m |= L.up[y]
        reachable_tops[x] = m
    ids = L.interval_id
    bits = 0
    for b in L.elements:
        bad = 0
        for x in _bits(L.down[b] & ~(1 << b)):
            if not reachable_tops[x] >> b & 1:
                bad |= 1 << x
        for a in _bits(L.down[b]):
            if L.up[a] & bad == 0:
                bits |= 1 << ids[a, b]
    return IntervalSet(L, bits)


def dvs_closure(B: IntervalSet) -> IntervalSet:
    """Least division set containing B, by the one-pass characterisation."""
    return _dvs_predicate(basic_closure(B))


def join_completion(S: IntervalSet) -> IntervalSet:
    """Add [a, join{x : [a,x] in S}] for every a."""
    L = S.lattice
    ends = _upper_ends(S)
    bits = S.bits
    for a in L.elements:
        bits |= 1 << L.interval_id[a, L.join_all(_bits(ends[a]), start=a)]
    return IntervalSet(L, bits)


def dvs_fixpoint(B: IntervalSet) -> IntervalSet:
    """Least division set containing B, by iterating closures to a fixpoint.

    Independent of `dvs_closure`; kept as its oracle.
    """
    S = basic_closure(B)
    while True:
        nxt = basic_closure(join_completion(cng_closure(S)))
        if nxt.bits == S.bits:
            return S
        S = nxt


# -- derivatives on basic sets ---------------------------------------------


def _derive(B: IntervalSet, keep) -> IntervalSet:
    _require_basic(B)
    L = B.lattice
    mem = _membership(B)
    return IntervalSet.where(L, lambda a, b: keep(L, mem, a, b))


def _smp(L, mem, a, b):
    return all(mem[a][x] or mem[x][b] for x in L.between(a, b))


def _cmp(L, mem, a, b):
    span = L.between(a, b)
    return all(
        any(mem[a][L.meet(x, y)] and mem[L.join(x, y)][b] for y in span) for x in span
    )


def _crt(L, mem, a, b):
    return all(x == a or mem[x][b] for x in L.between(a, b))


def _fll(L, mem, a, b):
    span = L.between(a, b)
    return all(
        any(L.meet(x, y) == a and mem[L.join(x, y)][b] for y in span) for x in span
    )


def smp(B: IntervalSet) -> IntervalSet:
    """B-simple intervals: each x has [a,x] or [x,b] in B."""
    return _derive(B, _smp)


def cmp(B: IntervalSet) -> IntervalSet:
    """B-complemented intervals."""
    return _derive(B, _cmp)


def crt(B: IntervalSet) -> IntervalSet:
    """B-critical intervals: each x > a has [x,b] in B."""
    return _derive(B, _crt)


def fll(B: IntervalSet) -> IntervalSet:
    """B-full intervals."""
    return _derive(B, _fll)


OPERATORS = {"smp": smp, "cmp": cmp, "crt": crt, "fll": fll}


def associated_inflator(B: IntervalSet) -> LatticeMap:
    """a -> join{x : [a,x] in B}."""
    _require_basic(B)
    L = B.lattice
    ends = _upper_ends(B)
    return LatticeMap(L, tuple(L.join_all(_bits(ends[a]), start=a) for a in L.elements))
