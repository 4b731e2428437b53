"""Corpus of small modular lattices.

Named lattices, subgroup lattices of finite abelian p-groups, and seeded
random modular lattices (bounded sublattices of modular base lattices).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product as _cartesian

from .errors import GenerationFailed, NotPrime, SizeLimit
from .lattice import FiniteLattice, _bits, build_lattice, chain, is_modular, product

MAX_GROUP_ORDER = 256
MAX_SUBGROUPS = 64


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    lattice: FiniteLattice
    provenance: dict


def _named(name: str, elements, covers) -> FiniteLattice:
    return build_lattice(elements, covers, name)


def c1() -> FiniteLattice:
    return _named("C1", ["0"], [])


def c2() -> FiniteLattice:
    return _named("C2", ["0", "1"], [("0", "1")])


def c3() -> FiniteLattice:
    return _named("C3", ["0", "m", "1"], [("0", "m"), ("m", "1")])


def c4() -> FiniteLattice:
    return _named("C4", ["0", "p", "q", "1"], [("0", "p"), ("p", "q"), ("q", "1")])


def b2() -> FiniteLattice:
    return _named("B2", ["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])


def diamond(k: int = 3) -> FiniteLattice:
    """M_k: bottom, k pairwise incomparable atoms, top."""
    atoms = [chr(ord("a") + i) for i in range(k)]
    covers = [("0", x) for x in atoms] + [(x, "1") for x in atoms]
    return _named(f"M{k}", ["0", *atoms, "1"], covers)


def m3() -> FiniteLattice:
    return diamond(3)


def n5() -> FiniteLattice:
    """The pentagon: 0 < a < b < 1 and 0 < c < 1.  Not modular."""
    return _named("N5", ["0", "a", "b", "c", "1"], [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")])


# -- subgroup lattices ----------------------------------------------------


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def subgroup_lattice(p: int, partition, max_order: int = MAX_GROUP_ORDER, max_subgroups: int = MAX_SUBGROUPS) -> FiniteLattice:
    """Subgroups of Z/p^a1 + ... + Z/p^ak ordered by inclusion.

    Element ids name a generating set, e.g. ``<1.0|0.1>``; the trivial
    subgroup is ``0``.
    """
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    parts = list(partition)
    if not parts or any(a < 1 for a in parts):
        raise ValueError("partition must be a nonempty list of positive exponents")
    mods = [p**a for a in parts]
    order = 1
    for m in mods:
        order *= m
    if order > max_order:
        raise SizeLimit(f"group order {order} exceeds {max_order}")
    elements = list(_cartesian(*[range(m) for m in mods]))
    pos = {g: i for i, g in enumerate(elements)}

    def add(g, h):
        return tuple((x + y) % m for x, y, m in zip(g, h, mods))

    def span(gens) -> int:
        mask = 1 << pos[elements[0]]
        frontier = [elements[0]]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = add(x, g)
                    if not mask >> pos[y] & 1:
                        mask |= 1 << pos[y]
                        nxt.append(y)
            frontier = nxt
        return mask

    subgroups = {span([])}
    subgroups.update(span([g]) for g in elements)
    # close under pairwise sums (joins); meets of subgroups are intersections
    frontier = set(subgroups)
    while frontier:
        new = set()
        for h in frontier:
            for k in list(subgroups):
                s = _sum(h, k, elements, pos, add)
                if s not in subgroups and s not in new:
                    new.add(s)
        subgroups |= new
        if len(subgroups) > max_subgroups:
            raise SizeLimit(f"more than {max_subgroups} subgroups")
        frontier = new

    def name(mask: int) -> str:
        gens = []
        cur = span([])
        for i in _bits(mask):
            if not cur >> i & 1:
                gens.append(elements[i])
                cur = span(gens)
        if not gens:
            return "0"
        return "<" + "|".join(".".join(map(str, g)) for g in gens) + ">"

    names = {mask: name(mask) for mask in subgroups}
    by_name = {v: k for k, v in names.items()}
    label = "Sub(" + "+".join(f"Z{m}" for m in mods) + ")"
    return FiniteLattice.from_leq(list(by_name), lambda u, v: by_name[u] & ~by_name[v] == 0, label)


def _sum(h: int, k: int, elements, pos, add) -> int:
    out = 0
    hs = [elements[i] for i in _bits(h)]
    for j in _bits(k):
        g = elements[j]
        for x in hs:
            out |= 1 << pos[add(x, g)]
    return out


# -- random modular lattices --------------------------------------------


def _base_pool() -> list[FiniteLattice]:
    C = chain
    return [
        product(C(2), C(2), "B2"),
        product(C(3), C(3)),
        product(C(2), C(5)),
        product(C(3), C(4)),
        product(product(C(2), C(2)), C(3)),
        product(diamond(3), C(2)),
        product(diamond(3), C(3)),
        product(diamond(4), C(2)),
        diamond(5),
        subgroup_lattice(2, [2, 1]),
        subgroup_lattice(3, [2, 1]),
        subgroup_lattice(2, [1, 1, 1]),
        subgroup_lattice(2, [2, 2]),
    ]


def _sublattice(L: FiniteLattice, seeds: int) -> int:
    mask = seeds | 1 << L.bottom | 1 << L.top
    while True:
        grown = mask
        for x in _bits(mask):
            for y in _bits(mask):
                grown |= 1 << L.meet(x, y) | 1 << L.join(x, y)
        if grown == mask:
            return mask
        mask = grown


def random_modular(seed: int, size: int, max_size: int = 16, retries: int = 200) -> FiniteLattice:
    """A modular lattice with ``size`` elements, deterministic in ``seed``.

    Draws bounded sublattices of modular base lattices; sublattices of
    modular lattices are modular, and the result is re-checked anyway.
    """
    if size < 1 or size > max_size:
        raise SizeLimit(f"size {size} outside 1..{max_size}")
    name = f"R{seed}n{size}"
    if size == 1:
        return build_lattice(["x0"], [], name)
    rng = random.Random(seed)
    pool = [B for B in _base_pool() if B.n >= size]
    for _ in range(retries):
        base = rng.choice(pool)
        mask = _sublattice(base, 0)
        order = list(range(base.n))
        rng.shuffle(order)
        for x in order:
            if bin(mask).count("1") >= size:
                break
            trial = _sublattice(base, mask | 1 << x)
            if bin(trial).count("1") <= size:
                mask = trial
        if bin(mask).count("1") != size:
            continue
        picked = sorted(_bits(mask), key=lambda i: (base.rank[i], base.label(i)))
        width = len(str(size - 1))
        names = {i: f"x{str(k).zfill(width)}" for k, i in enumerate(picked)}
        inv = {v: k for k, v in names.items()}
        L = FiniteLattice.from_leq(list(inv), lambda u, v: base.leq(inv[u], inv[v]), name)
        if is_modular(L):
            return L
    raise GenerationFailed(f"no modular lattice of size {size} from seed {seed}")


# -- corpus -----------------------------------------------------------------


def default_corpus(randoms: int = 3, seed: int = 0) -> list[CorpusEntry]:
    """The named set plus a few seeded random lattices."""
    named = [c1(), c2(), c3(), c4(), b2(), m3()]
    named.append(product(b2(), c2(), "B2xC2"))
    named.append(product(m3(), c2(), "M3xC2"))
    entries = [CorpusEntry(L.name, L, {"kind": "named"}) for L in named]
    for p in (2, 3):
        L = subgroup_lattice(p, [2, 1])
        entries.append(CorpusEntry(L.name, L, {"kind": "subgroup-lattice", "p": p, "partition": [2, 1]}))
    rng = random.Random(seed)
    for k in range(randoms):
        s = rng.randrange(10**6)
        n = rng.randint(5, 10)
        L = random_modular(s, n)
        entries.append(CorpusEntry(L.name, L, {"kind": "random", "seed": s, "size": n}))
    return entries


def negative_fixtures() -> list[CorpusEntry]:
    return [CorpusEntry("N5", n5(), {"kind": "named", "note": "not modular"})]


def get_named(name: str) -> FiniteLattice:
    table = {
        "C1": c1, "C2": c2, "C3": c3, "C4": c4, "B2": b2, "M3": m3, "N5": n5,
        "B2xC2": lambda: product(b2(), c2(), "B2xC2"),
        "M3xC2": lambda: product(m3(), c2(), "M3xC2"),
    }
    return table[name]()
