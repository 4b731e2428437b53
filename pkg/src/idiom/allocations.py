"""Allocations and aspects: interval-valued maps and the constructions between them.

Value lattices are `FiniteLattice` instances (values are element
indices) or `PowersetOp`.  The join-continuity axioms are checked over
every subset X of [a, 1] with at most `SUBSET_LIMIT` elements plus X =
[a, 1] itself; in a finite lattice any directed X contains its own join,
so this strictly covers the directed case.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import InvalidAllocation, InvalidAspect, NotMorphism
from .intervals import IntervalSet, basic_closure, dvs_closure, tables
from .lattice import FiniteLattice, Interval, _bits
from .maps import IntervalValuedMap, LatticeMap
from .nuclei import enumerate_nuclei

SUBSET_LIMIT = 4


@dataclass(frozen=True)
class Verdict:
    """Outcome of an axiom check; falsy on failure, with the first witness."""

    ok: bool
    axiom: int | None = None
    witness: str | None = None

    def __bool__(self) -> bool:
        return self.ok


PASS = Verdict(True)


def _fmt(L: FiniteLattice, *pts: int) -> str:
    return ",".join(L.label(p) for p in pts)


def _transpose_failure(f: IntervalValuedMap):
    L = f.lattice
    for l in L.elements:
        for r in L.elements:
            if f(L.meet(l, r), r) != f(l, L.join(l, r)):
                return f"l={L.label(l)} r={L.label(r)}"
    return None


def _subsets(L: FiniteLattice, a: int):
    above = list(_bits(L.up[a]))
    for k in range(1, min(SUBSET_LIMIT, len(above)) + 1):
        yield from combinations(above, k)
    if len(above) > SUBSET_LIMIT:
        yield tuple(above)


def is_allocation(f: IntervalValuedMap) -> Verdict:
    """Check the four allocation axioms; report the first that fails."""
    L, V = f.lattice, f.values
    w = _transpose_failure(f)
    if w:
        return Verdict(False, 1, w)
    for a, b in L.intervals:
        for c in L.between(a, b):
            if not V.leq(f(a, b), f(a, c)):
                return Verdict(False, 2, f"a,c,b={_fmt(L, a, c, b)}")
            if not V.leq(V.meet(f(a, c), f(c, b)), f(a, b)):
                return Verdict(False, 3, f"a,c,b={_fmt(L, a, c, b)}")
    for a in L.elements:
        for xs in _subsets(L, a):
            top = L.join_all(xs, start=a)
            if f(a, top) != V.meet_all(f(a, x) for x in xs):
                return Verdict(False, 4, f"a={L.label(a)} X={{{_fmt(L, *xs)}}}")
    return PASS


def is_aspect(f: IntervalValuedMap) -> Verdict:
    """Check the three aspect axioms; report the first that fails."""
    L, V = f.lattice, f.values
    w = _transpose_failure(f)
    if w:
        return Verdict(False, 1, w)
    for a, b in L.intervals:
        for c in L.between(a, b):
            if V.join(f(a, c), f(c, b)) != f(a, b):
                return Verdict(False, 2, f"a,c,b={_fmt(L, a, c, b)}")
    for a in L.elements:
        for xs in _subsets(L, a):
            top = L.join_all(xs, start=a)
            if f(a, top) != V.join_all(f(a, x) for x in xs):
                return Verdict(False, 3, f"a={L.label(a)} X={{{_fmt(L, *xs)}}}")
    return PASS


# -- canonical examples ----------------------------------------------------


def chi_allocation(L: FiniteLattice) -> IntervalValuedMap:
    """chi as an N(A)-allocation; values are indices into N(A)."""
    N = enumerate_nuclei(L, force=True)
    tab = []
    for a, b in L.intervals:
        ok = [k for k, j in enumerate(N.nuclei) if L.meet(j(a), b) == a]
        tab.append(N.join(ok))
    return IntervalValuedMap(L, N.lattice, tuple(tab), "allocation")


def xi(I: Interval) -> IntervalSet:
    """Least division set containing the interval."""
    return dvs_closure(basic_closure(IntervalSet.from_pairs(I.lattice, [I])))


def xi_aspect(L: FiniteLattice) -> IntervalValuedMap:
    """xi as a D(A)-aspect; values are indices into D(A)."""
    N = enumerate_nuclei(L, force=True)
    return IntervalValuedMap.tabulate(
        L, N.division_lattice, lambda a, b: N.division_index(xi(Interval(a, b, L))), "aspect"
    )


def S(L: FiniteLattice, values, alpha) -> IntervalValuedMap:
    """Constant allocation."""
    return IntervalValuedMap.constant(L, values, alpha, "allocation")


def R(L: FiniteLattice, values, alpha) -> IntervalValuedMap:
    """Constant aspect."""
    return IntervalValuedMap.constant(L, values, alpha, "aspect")


# -- Q, M, H ------------------------------------------------------------------
#
# Both Q and M always contain the trivial intervals.  For maps that are
# bottom (aspects) or top (allocations) on trivial intervals this changes
# nothing; for constants like R(b) with b not below alpha the bare set
# builder would be empty, which is not a congruence set.


def Q(phi: IntervalValuedMap, alpha, check: bool = True) -> IntervalSet:
    """[a,b] with alpha <= phi(x, b) for every x in [a,b]."""
    if check and not is_allocation(phi):
        raise InvalidAllocation("Q needs an allocation")
    L, V = phi.lattice, phi.values
    return IntervalSet.where(
        L, lambda a, b: a == b or all(V.leq(alpha, phi(x, b)) for x in L.between(a, b))
    )


def M(psi: IntervalValuedMap, alpha, check: bool = True) -> IntervalSet:
    """[a,b] with psi(a,b) <= alpha."""
    if check and not is_aspect(psi):
        raise InvalidAspect("M needs an aspect")
    V = psi.values
    return IntervalSet.where(psi.lattice, lambda a, b: a == b or V.leq(psi(a, b), alpha))


def H(psi: IntervalValuedMap, check: bool = True) -> IntervalValuedMap:
    """H(psi)(a,b) = join of every alpha with [a,b] in Dvs(M(psi, alpha))."""
    if check and not is_aspect(psi):
        raise InvalidAspect("H needs an aspect")
    L, V = psi.lattice, psi.values
    hits = [[] for _ in L.intervals]
    for alpha in V.elements:
        D = dvs_closure(M(psi, alpha, check=False))
        for k in _bits(D.bits):
            hits[k].append(alpha)
    return IntervalValuedMap(L, V, tuple(V.join_all(h) for h in hits), "allocation")


# -- functoriality ---------------------------------------------------------


def morphism_failure(f: LatticeMap) -> str | None:
    """Why f is not a bound-, meet- and join-preserving map, or None."""
    A, B = f.source, f.codomain
    if f(A.bottom) != B.bottom or f(A.top) != B.top:
        return "bounds not preserved"
    for x in A.elements:
        for y in A.elements:
            if f(A.meet(x, y)) != B.meet(f(x), f(y)):
                return f"meet of {A.label(x)},{A.label(y)}"
            if f(A.join(x, y)) != B.join(f(x), f(y)):
                return f"join of {A.label(x)},{A.label(y)}"
    return None


def pullback(f: LatticeMap, g: IntervalValuedMap) -> IntervalValuedMap:
    """g after I(f): an interval [a,b] of the source goes to g(f(a), f(b))."""
    why = morphism_failure(f)
    if why:
        raise NotMorphism(why)
    if g.lattice != f.codomain:
        raise NotMorphism("g lives on a different lattice than the codomain of f")
    return IntervalValuedMap.tabulate(f.source, g.values, lambda a, b: g(f(a), f(b)), g.kind)


def canonical_map(L: FiniteLattice, j: LatticeMap, Q_: FiniteLattice) -> LatticeMap:
    """a -> j(a), from L onto its quotient (which keeps L's ids)."""
    return LatticeMap(L, tuple(Q_[L.label(j(a))] for a in L.elements), Q_)


def nontrivial_count(L: FiniteLattice) -> int:
    return len(L.intervals) - bin(tables(L).trivial).count("1")


# -- random valid maps -----------------------------------------------------
#
# A division set D and a value v give the allocation "top on D, v off D"
# and the aspect "bottom on D, v off D".  Meets of the former and joins of
# the latter stay valid, so both generators only combine such pieces.


def _pieces(L: FiniteLattice, V: FiniteLattice, rng, k: int):
    divisions = enumerate_nuclei(L, force=True).divisions
    return [(rng.choice(divisions), rng.randrange(V.n)) for _ in range(k)]


def random_allocation(L: FiniteLattice, V: FiniteLattice, rng, k: int = 3) -> IntervalValuedMap:
    pieces = _pieces(L, V, rng, k)
    return IntervalValuedMap.tabulate(
        L, V, lambda a, b: V.meet_all(v for D, v in pieces if not D.contains(a, b)), "allocation"
    )


def random_aspect(L: FiniteLattice, V: FiniteLattice, rng, k: int = 3) -> IntervalValuedMap:
    pieces = _pieces(L, V, rng, k)
    return IntervalValuedMap.tabulate(
        L, V, lambda a, b: V.join_all(v for D, v in pieces if not D.contains(a, b)), "aspect"
    )
