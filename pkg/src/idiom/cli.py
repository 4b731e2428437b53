"""Command-line entry point: ``idiom <command> [options]``.

Exit status is 0 when every verdict passes, 1 on a failed verdict or a
computation error (reported by error class name), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

from . import allocations as al
from . import decomposition as dc
from . import dimension as dm
from . import serialize as ser
from .errors import IdiomError, ParseError
from .fixtures import CorpusEntry, default_corpus, get_named
from .intervals import OPERATORS, IntervalSet, basic_closure, cng_closure, dvs_closure
from .lattice import FiniteLattice, implication_table, is_frame, is_modular
from .nuclei import enumerate_nuclei, quotient
from .verify import SUITES, run_suite

SCHEMA = 1
CLOSURES = {"basic": basic_closure, "cng": cng_closure, "dvs": dvs_closure}


class Report:
    """Collects verdicts and a result payload for one command."""

    def __init__(self, command: str, inputs: dict):
        self.command = command
        self.inputs = inputs
        self.verdicts: list[dict] = []
        self.result: dict = {}
        self.lines: list[str] = []
        self._t = time.perf_counter()

    def check(self, name: str, ok: bool, witness: str | None = None, seconds: float | None = None) -> None:
        if seconds is None:
            seconds = time.perf_counter() - self._t
            self._t = time.perf_counter()
        self.verdicts.append({"check": name, "pass": bool(ok), "witness": None if ok else witness, "seconds": seconds})

    def say(self, line: str = "") -> None:
        self.lines.append(line)

    @property
    def ok(self) -> bool:
        return all(v["pass"] for v in self.verdicts)

    def to_json(self, deterministic: bool) -> dict:
        verdicts = [
            {**v, "seconds": 0.0 if deterministic else round(v["seconds"], 4)} for v in self.verdicts
        ]
        out = {"schema": SCHEMA, "command": self.command, "inputs": self.inputs, "verdicts": verdicts, "result": self.result}
        if not deterministic:
            out["timestamp"] = datetime.now(timezone.utc).isoformat()
        return out

    def text(self) -> str:
        lines = list(self.lines)
        for v in self.verdicts:
            mark = "PASS" if v["pass"] else "FAIL"
            tail = f"  ({v['witness']})" if v["witness"] else ""
            lines.append(f"{mark} {v['check']}{tail}")
        return "\n".join(lines) + "\n"


# -- input helpers -----------------------------------------------------------


def _read_json(path) -> object:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from None


def _load_lattice(args) -> FiniteLattice:
    if not args.lattice:
        raise ParseError("--lattice is required")
    path = Path(args.lattice)
    if path.exists():
        return ser.load_lattice(path)
    try:
        return get_named(args.lattice)
    except KeyError:
        raise ParseError(f"{args.lattice}: no such file or named lattice") from None


def _load_corpus(args) -> list[CorpusEntry]:
    name = args.corpus or "default"
    if name == "default":
        return default_corpus(seed=args.seed)
    path = Path(name)
    if not path.exists():
        raise ParseError(f"{name}: unknown corpus")
    data = _read_json(path)
    entries = []
    for item in data.get("entries", []):
        L = ser.load_lattice(path.parent / item["file"]) if "file" in item else ser.lattice_from_json(item["lattice"])
        entries.append(CorpusEntry(item.get("name", L.name), L, item.get("provenance", {})))
    return entries


def _parse_intervals(L: FiniteLattice, text: str) -> IntervalSet:
    """``lo,hi;lo,hi`` with element ids."""
    pairs = []
    for chunk in filter(None, (c.strip() for c in text.split(";"))):
        parts = chunk.split(",")
        if len(parts) != 2:
            raise ParseError(f"bad interval {chunk!r}; expected lo,hi")
        lo, hi = (p.strip() for p in parts)
        if lo not in L.index or hi not in L.index:
            raise ParseError(f"unknown element in {chunk!r}")
        pairs.append((lo, hi))
    return IntervalSet.from_pairs(L, pairs)


def _interval_set(args, L: FiniteLattice, default: IntervalSet | None = None) -> IntervalSet:
    if args.set:
        return ser.interval_set_from_json(_read_json(args.set), L)
    if args.intervals is not None:
        return _parse_intervals(L, args.intervals)
    if default is not None:
        return default
    raise ParseError("give --intervals or --set")


def _one_interval(args, L: FiniteLattice):
    found = list(_parse_intervals(L, args.interval))
    if len(found) != 1:
        raise ParseError("--interval takes exactly one lo,hi pair")
    return found[0]


def _set_lines(S: IntervalSet) -> list[str]:
    return [f"[{lo},{hi}]" for lo, hi in S.labels()]


# -- commands ------------------------------------------------------------


def cmd_validate(args, rep: Report) -> None:
    L = _load_lattice(args)
    rep.result = ser.lattice_to_json(L)
    rep.say(f"{L.name}: {L.n} elements, {len(L.covers)} covers")
    rep.check("is a lattice", True)
    if args.dot:
        Path(args.dot).write_text(ser.to_dot(L))


def cmd_modular(args, rep: Report) -> None:
    L = _load_lattice(args)
    rep.check("modular", is_modular(L), L.name)


def cmd_frame(args, rep: Report) -> None:
    L = _load_lattice(args)
    frame, imp = is_frame(L), implication_table(L) is not None
    rep.result = {"frame": frame, "implication": imp}
    rep.say(f"distributive: {frame}; implication exists: {imp}")
    rep.check("frame", frame, L.name)


def cmd_intervals(args, rep: Report) -> None:
    L = _load_lattice(args)
    S = _interval_set(args, L, IntervalSet.full(L))
    rep.result = {"intervals": S.labels(), "level": S.level}
    rep.say(f"{len(S)} intervals, level {S.level}")
    for line in _set_lines(S):
        rep.say(line)


def cmd_closures(args, rep: Report) -> None:
    L = _load_lattice(args)
    S = CLOSURES[args.kind](_interval_set(args, L))
    rep.result = {"closure": args.kind, "intervals": S.labels(), "level": S.level}
    rep.say(f"{args.kind} closure: {len(S)} intervals, level {S.level}")
    for line in _set_lines(S):
        rep.say(line)


def cmd_operators(args, rep: Report) -> None:
    L = _load_lattice(args)
    S = OPERATORS[args.op](_interval_set(args, L))
    rep.result = {"operator": args.op, "intervals": S.labels(), "level": S.level}
    rep.say(f"{args.op}: {len(S)} intervals")
    for line in _set_lines(S):
        rep.say(line)


def cmd_nuclei(args, rep: Report) -> None:
    L = _load_lattice(args)
    N = enumerate_nuclei(L, max_size=args.max_size)
    rep.result = {"count": len(N), "nuclei": {N.lattice.label(k): ser.nucleus_to_json(j) for k, j in enumerate(N.nuclei)}}
    rep.say(f"{len(N)} nuclei")
    for k, j in enumerate(N.nuclei):
        rep.say(f"{N.lattice.label(k)} {j}")
    rep.check("N(A) satisfies the frame law", N.is_frame(), f"N({L.name})")
    if args.dot:
        Path(args.dot).write_text(ser.to_dot(N.lattice))


def _pick_nucleus(args, L: FiniteLattice):
    N = enumerate_nuclei(L, max_size=args.max_size)
    if args.nucleus in N.lattice.index:
        return N.nuclei[N.lattice[args.nucleus]]
    path = Path(args.nucleus)
    if path.exists():
        return ser.nucleus_from_json(_read_json(path), L)
    raise ParseError(f"{args.nucleus}: not a nucleus id or file")


def cmd_quotient(args, rep: Report) -> None:
    L = _load_lattice(args)
    Q = quotient(L, _pick_nucleus(args, L))
    rep.result = ser.lattice_to_json(Q)
    rep.say(f"fixed set: {', '.join(Q.labels)}")
    rep.check("quotient is modular", is_modular(Q), Q.name)
    if args.dot:
        Path(args.dot).write_text(ser.to_dot(Q))


def cmd_chi(args, rep: Report) -> None:
    from .nuclei import chi

    L = _load_lattice(args)
    L.check_size(args.max_size)
    I = _one_interval(args, L)
    j = chi(I)
    rep.result = {"interval": [L.label(I.lo), L.label(I.hi)], **ser.nucleus_to_json(j)}
    rep.say(f"chi{I} = {j}")


def cmd_xi(args, rep: Report) -> None:
    L = _load_lattice(args)
    I = _one_interval(args, L)
    S = al.xi(I)
    rep.result = {"interval": [L.label(I.lo), L.label(I.hi)], "intervals": S.labels()}
    rep.say(f"xi{I}: {len(S)} intervals")
    for line in _set_lines(S):
        rep.say(line)


def _builtin_map(args, L: FiniteLattice):
    L.check_size(args.max_size)
    if args.map == "chi":
        return al.chi_allocation(L)
    if args.map == "xi":
        return al.xi_aspect(L)
    if not args.values:
        raise ParseError("a map file needs --values (a lattice file or name)")
    V = _load_lattice(argparse.Namespace(lattice=args.values))
    return ser.ivm_from_json(_read_json(args.map), L, V)


def cmd_allocation_check(args, rep: Report) -> None:
    L = _load_lattice(args)
    v = al.is_allocation(_builtin_map(args, L))
    rep.result = {"axiom": v.axiom, "witness": v.witness}
    rep.check("allocation axioms", v.ok, f"{L.name}: axiom {v.axiom} at {v.witness}")


def cmd_aspect_check(args, rep: Report) -> None:
    L = _load_lattice(args)
    v = al.is_aspect(_builtin_map(args, L))
    rep.result = {"axiom": v.axiom, "witness": v.witness}
    rep.check("aspect axioms", v.ok, f"{L.name}: axiom {v.axiom} at {v.witness}")


def cmd_decompose(args, rep: Report) -> None:
    L = _load_lattice(args)
    L.check_size(args.max_size)
    I = _one_interval(args, L)
    phi = al.chi_allocation(L)
    dec = dc.find_decomposition(phi, I)
    rep.result = ser.decomposition_to_json(dec, phi.values)
    for line in dec.transcript:
        rep.say(line)
    problems = dc.check_decomposition(phi, I, dec.parts)
    rep.check("decomposition re-verified", not problems, f"{L.name} {I}: {'; '.join(problems)}")


def cmd_support(args, rep: Report) -> None:
    L = _load_lattice(args)
    L.check_size(args.max_size)
    I = _one_interval(args, L)
    phi = al.chi_allocation(L)
    sup = sorted(phi.values.label(p) for p in dc.support(phi, I))
    rep.result = {"interval": [L.label(I.lo), L.label(I.hi)], "support": sup}
    rep.say(f"support{I} = {{{', '.join(sup)}}}")


def _dimension(args, rep: Report, op: str, label: str) -> None:
    L = _load_lattice(args)
    D = _interval_set(args, L, IntervalSet.trivial(L))
    dim, terms = dm.kpr_dimension(D, op)
    for T in terms:
        rep.say(" ".join(_set_lines(T)))
    rep.say(f"{label} dimension: {dim}")
    rep.result = {"dimension": dim, "trace": [T.labels() for T in terms]}


def cmd_gabriel_dim(args, rep: Report) -> None:
    _dimension(args, rep, "crt", "Gabriel")


def cmd_boyle_dim(args, rep: Report) -> None:
    _dimension(args, rep, "fll", "Boyle")


def cmd_filtration(args, rep: Report) -> None:
    L = _load_lattice(args)
    N = enumerate_nuclei(L, max_size=args.max_size)
    D = _interval_set(args, L, IntervalSet.trivial(L))
    if not D.is_division():
        raise dm.NotDivision("the starting set must be a division set")
    xi = al.xi_aspect(L)
    f = dm.opr_filtration(xi, N.division_index(D), args.op, check=False)
    terms = dm.kpr_filtration(D, args.op, length=f.raw.cap)
    rep.result = {"raw": f.raw.labels(), "bnd": f.raw.bnd}
    for i, v in enumerate(f.raw.values):
        rep.say(f"h({i}) = {N.division_lattice.label(v)}: {len(N.divisions[v])} intervals")
    rep.say(f"stable from index {f.raw.bnd}")
    same = [N.divisions[v] for v in f.raw.values] == terms
    rep.check("Opr and Kpr filtrations agree", same, f"{L.name} {args.op}")


def cmd_verify(args, rep: Report) -> None:
    corpus = _load_corpus(args)
    for c in run_suite(args.suite, corpus, args.seed):
        rep.check(f"{c.suite} {c.lattice}: {c.name}", c.ok, c.witness, c.seconds)


def cmd_corpus(args, rep: Report) -> None:
    corpus = _load_corpus(args)
    out = Path(args.out) if args.out else None
    manifest = []
    for e in corpus:
        item = {"name": e.name, "provenance": e.provenance, "size": e.lattice.n}
        if out:
            fname = "".join(ch if ch.isalnum() else "_" for ch in e.name) + ".json"
            item["file"] = fname
        manifest.append(item)
        rep.say(f"{e.name}: {e.lattice.n} elements {json.dumps(e.provenance, sort_keys=True)}")
        rep.check(f"{e.name} is modular", is_modular(e.lattice), e.name)
    if out:
        out.mkdir(parents=True, exist_ok=True)
        for e, item in zip(corpus, manifest):
            (out / item["file"]).write_text(json.dumps(ser.lattice_to_json(e.lattice), indent=2) + "\n")
        (out / "manifest.json").write_text(json.dumps({"entries": manifest}, indent=2) + "\n")
    rep.result = {"entries": manifest}


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lattice", help="lattice JSON file or a named lattice (C3, B2, M3, ...)")
    common.add_argument("--corpus", help="'default' or a manifest JSON file")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-size", type=int, default=None, help="element cap for exhaustive searches")
    common.add_argument("--deterministic", action="store_true", help="omit timestamps and timings")
    common.add_argument("--dot", metavar="OUT", help="write a DOT Hasse diagram here")
    common.add_argument("--json", action="store_true", help="print the JSON report")
    sets = argparse.ArgumentParser(add_help=False)
    sets.add_argument("--intervals", help="interval list 'lo,hi;lo,hi'")
    sets.add_argument("--set", help="interval-set JSON file")
    one = argparse.ArgumentParser(add_help=False)
    one.add_argument("--interval", required=True, help="'lo,hi'")

    p = argparse.ArgumentParser(prog="idiom", description="Finite modular lattice toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, *parents, help=None):
        sp = sub.add_parser(name, parents=[common, *parents], help=help)
        sp.set_defaults(fn=fn)
        return sp

    add("validate", cmd_validate, help="parse and check a lattice")
    add("modular", cmd_modular, help="check the modular law")
    add("frame", cmd_frame, help="check distributivity and implication")
    add("intervals", cmd_intervals, sets, help="list intervals or classify a set")
    add("closures", cmd_closures, sets, help="basic, congruence or division closure").add_argument(
        "kind", choices=sorted(CLOSURES)
    )
    add("operators", cmd_operators, sets, help="apply smp, cmp, crt or fll").add_argument(
        "op", choices=sorted(OPERATORS)
    )
    add("nuclei", cmd_nuclei, help="enumerate nuclei")
    add("quotient", cmd_quotient, help="fixed set of a nucleus").add_argument(
        "--nucleus", required=True, help="nucleus id (j0, j1, ...) or {'map': ...} file"
    )
    add("chi", cmd_chi, one, help="largest nucleus missing an interval")
    add("xi", cmd_xi, one, help="least division set containing an interval")
    for name, fn in (("allocation-check", cmd_allocation_check), ("aspect-check", cmd_aspect_check)):
        sp = add(name, fn, help="check the axioms of an interval-valued map")
        sp.add_argument("--map", required=True, help="'chi', 'xi' or a map JSON file")
        sp.add_argument("--values", help="value lattice file or name for a map file")
    add("decompose", cmd_decompose, one, help="decomposition of an interval under chi")
    add("support", cmd_support, one, help="support of an interval under chi")
    add("gabriel-dim", cmd_gabriel_dim, sets, help="Gabriel dimension of a division set")
    add("boyle-dim", cmd_boyle_dim, sets, help="Boyle dimension of a division set")
    add("filtration", cmd_filtration, sets, help="Opr-filtration of xi from a division set").add_argument(
        "--op", default="crt", choices=sorted(dm.FILTRATION_OPERATORS)
    )
    add("verify", cmd_verify, help="run law-checking suites").add_argument(
        "--suite", required=True, choices=[*SUITES, "all"]
    )
    add("corpus", cmd_corpus, help="list the corpus and optionally write it out").add_argument(
        "--out", help="directory for the manifest and lattice files"
    )
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    inputs = {k: v for k, v in sorted(vars(args).items()) if k not in ("fn", "command", "json") and v is not None}
    rep = Report(args.command, inputs)
    try:
        args.fn(args, rep)
    except IdiomError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        sys.stdout.write(json.dumps(rep.to_json(args.deterministic), indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(rep.text())
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
