"""JSON and DOT formats for lattices, interval sets, maps and decompositions."""

from __future__ import annotations

import json
from pathlib import Path

from .errors import ParseError
from .intervals import IntervalSet
from .lattice import FiniteLattice, build_lattice
from .maps import IntervalValuedMap, LatticeMap


def lattice_to_json(L: FiniteLattice) -> dict:
    return {
        "name": L.name,
        "elements": list(L.labels),
        "covers": [[L.label(a), L.label(b)] for a, b in L.covers],
    }


def lattice_from_json(data, name: str | None = None) -> FiniteLattice:
    """Parse {"elements": [...], "covers": [[lo, hi], ...]}."""
    if not isinstance(data, dict) or "elements" not in data or "covers" not in data:
        raise ParseError('expected an object with "elements" and "covers"')
    elements, covers = data["elements"], data["covers"]
    if not isinstance(elements, list) or not isinstance(covers, list):
        raise ParseError('"elements" and "covers" must be lists')
    pairs = []
    for c in covers:
        if not (isinstance(c, list) and len(c) == 2):
            raise ParseError(f"bad cover {c!r}; expected [lo, hi]")
        pairs.append((c[0], c[1]))
    return build_lattice(elements, pairs, data.get("name") or name)


def load_lattice(path: str | Path) -> FiniteLattice:
    p = Path(path)
    try:
        data = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{p}: {exc}") from None
    return lattice_from_json(data, p.stem)


def to_dot(L: FiniteLattice) -> str:
    """Hasse diagram, bottom at rank 0, covers as edges."""
    lines = [f'digraph "{L.name}" {{', "  rankdir=BT;", "  node [shape=circle];"]
    by_rank: dict[int, list[int]] = {}
    for x in L.elements:
        by_rank.setdefault(L.rank[x], []).append(x)
    for r in sorted(by_rank):
        names = " ".join(f'"{L.label(x)}";' for x in by_rank[r])
        lines.append(f"  {{ rank=same; {names} }}")
    for a, b in L.covers:
        lines.append(f'  "{L.label(a)}" -> "{L.label(b)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def interval_set_to_json(S: IntervalSet) -> dict:
    return {"lattice": lattice_to_json(S.lattice), "intervals": S.labels()}


def interval_set_from_json(data, L: FiniteLattice | None = None) -> IntervalSet:
    """Read an interval set; the level is recomputed by the caller, never read."""
    if L is None:
        L = lattice_from_json(data["lattice"])
    try:
        return IntervalSet.from_pairs(L, [tuple(p) for p in data["intervals"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad interval set: {exc}") from None


def nucleus_to_json(j: LatticeMap) -> dict:
    return {"map": j.to_dict()}


def nucleus_from_json(data, L: FiniteLattice) -> LatticeMap:
    if not isinstance(data, dict) or "map" not in data:
        raise ParseError('expected {"map": {...}}')
    return LatticeMap.from_dict(L, data["map"])


def ivm_to_json(f: IntervalValuedMap) -> dict:
    L, V = f.lattice, f.values
    return {
        "lattice": L.name,
        "valueLattice": getattr(V, "name", "P(Omega)^op"),
        "kind": f.kind,
        "table": {f"{L.label(a)},{L.label(b)}": V.label(v) for (a, b), v in zip(L.intervals, f.table)},
    }


def ivm_from_json(data, L: FiniteLattice, V: FiniteLattice) -> IntervalValuedMap:
    table = data.get("table")
    if not isinstance(table, dict):
        raise ParseError('expected a "table" object')
    vals = []
    for a, b in L.intervals:
        key = f"{L.label(a)},{L.label(b)}"
        if key not in table:
            raise ParseError(f"no value for [{key}]")
        try:
            vals.append(V[table[key]])
        except KeyError:
            raise ParseError(f"unknown value {table[key]!r}") from None
    return IntervalValuedMap(L, V, tuple(vals), data.get("kind", "raw"))


def decomposition_to_json(dec, values) -> dict:
    L, I = dec.interval.lattice, dec.interval
    return {
        "interval": [L.label(I.lo), L.label(I.hi)],
        "parts": {values.label(p): L.label(x) for p, x in dec.parts.items()},
        "transcript": list(dec.transcript),
    }
