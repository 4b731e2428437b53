"""Law-checking suites run over a corpus of lattices.

Each suite takes a `CorpusEntry` and a seed and returns a list of
`Check` verdicts; a failing check carries the lattice name and the
elements or intervals involved.  Sampling is seeded per (suite, lattice)
so reruns are identical.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from . import allocations as al
from . import decomposition as dc
from . import dimension as dm
from .fixtures import CorpusEntry
from .intervals import IntervalSet, basic_closure, dvs_closure, dvs_fixpoint
from .lattice import FiniteLattice, Interval, chain, implication_table, is_frame, is_large, product
from .nuclei import associated_inflator, division_to_nucleus, enumerate_nuclei, is_nucleus, nucleus_to_division

MAX_N_SIZE = 64


@dataclass
class Check:
    suite: str
    lattice: str
    name: str
    ok: bool
    witness: str | None = None
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "lattice": self.lattice,
            "check": self.name,
            "pass": self.ok,
            "witness": self.witness,
            "seconds": round(self.seconds, 4),
        }


def _rng(seed: int, suite: str, L: FiniteLattice) -> random.Random:
    return random.Random(f"{seed}:{suite}:{L.name}")


def _iv(L: FiniteLattice, a: int, b: int) -> str:
    return f"[{L.label(a)},{L.label(b)}]"


def _first(pairs):
    """First witness from an iterable of (bad, witness) pairs, or None."""
    for bad, w in pairs:
        if bad:
            return w
    return None


def _random_basic(L: FiniteLattice, rng: random.Random, k: int | None = None) -> IntervalSet:
    ivs = [iv for iv in L.intervals if iv[0] != iv[1]]
    k = rng.randint(0, min(3, len(ivs))) if k is None else k
    return basic_closure(IntervalSet.from_pairs(L, rng.sample(ivs, min(k, len(ivs)))))


def _random_subset(L: FiniteLattice, rng: random.Random) -> IntervalSet:
    bits = 0
    for k in range(len(L.intervals)):
        if rng.random() < 0.3:
            bits |= 1 << k
    return IntervalSet(L, bits)


VALUE_LATTICES = (chain(2), chain(3), product(chain(2), chain(2), "B2"))


# -- lattice-level suites --------------------------------------------------


def suite_prop_03(L, seed):
    has = implication_table(L) is not None
    ok = is_frame(L) == has
    return [("frame iff implication", ok, None if ok else f"{L.name}: frame={is_frame(L)} implication={has}")]


def suite_thm_0(L, seed):
    N = enumerate_nuclei(L, force=True)
    out = [("every enumerated map is a nucleus", all(is_nucleus(j) for j in N.nuclei), L.name)]
    out.append(("N(A) is distributive", N.is_frame(), f"N({L.name})"))
    return out


def suite_thm_00(L, seed):
    N = enumerate_nuclei(L, force=True)
    rng = _rng(seed, "thm-00", L)
    trip = _first(
        (division_to_nucleus(nucleus_to_division(j)) != j, str(j)) for j in N.nuclei
    )
    back = _first(
        (nucleus_to_division(associated_inflator(D)) != D, str(D)) for D in N.divisions
    )
    order = _first(
        (N.nuclei[x].leq(N.nuclei[y]) != (N.divisions[x] <= N.divisions[y]), f"{N.lattice.label(x)},{N.lattice.label(y)}")
        for x in range(len(N))
        for y in range(len(N))
    )
    known = set(N.divisions)
    onto = _first((dvs_closure(B) not in known, str(B)) for B in (_random_basic(L, rng) for _ in range(20)))
    return [
        ("division of nucleus round-trips", trip is None, trip),
        ("nucleus of division round-trips", back is None, back),
        ("order isomorphism", order is None, order),
        ("every sampled division set is hit", onto is None, onto),
    ]


def suite_thm_000(L, seed, samples=20):
    rng = _rng(seed, "thm-000", L)
    bad = _first(
        (dvs_closure(B) != dvs_fixpoint(B), str(B))
        for B in (_random_subset(L, rng) for _ in range(samples))
    )
    return [(f"closure formula equals fixpoint on {samples} samples", bad is None, bad)]


# -- allocations and aspects -------------------------------------------------


def _embedding_failure(L, V, build, leq_map):
    for a in V.elements:
        for b in V.elements:
            if V.leq(a, b) != leq_map(build(L, V, a), build(L, V, b)):
                return f"{V.name}: {V.label(a)},{V.label(b)}"
    return None


def suite_def_d1(L, seed):
    chi = al.chi_allocation(L)
    v = al.is_allocation(chi)
    out = [("chi is an allocation", v.ok, v.witness)]
    for V in VALUE_LATTICES:
        bad = _first((not al.is_allocation(al.S(L, V, a)), V.label(a)) for a in V.elements)
        out.append((f"constants into {V.name} are allocations", bad is None, bad))
        emb = _embedding_failure(L, V, al.S, lambda f, g: f.leq(g))
        out.append((f"S is an order embedding of {V.name}", emb is None, emb))
    return out


def suite_def_d7(L, seed):
    xi = al.xi_aspect(L)
    v = al.is_aspect(xi)
    out = [("xi is an aspect", v.ok, v.witness)]
    for V in VALUE_LATTICES:
        bad = _first((not al.is_aspect(al.R(L, V, a)), V.label(a)) for a in V.elements)
        out.append((f"constants into {V.name} are aspects", bad is None, bad))
        emb = _embedding_failure(L, V, al.R, lambda f, g: f.leq(g))
        out.append((f"R is an order embedding of {V.name}", emb is None, emb))
    return out


def _allocation_samples(L, rng, count):
    N = enumerate_nuclei(L, force=True)
    fams = [(al.chi_allocation(L), N.lattice)]
    while len(fams) < count:
        V = rng.choice(VALUE_LATTICES)
        fams.append((al.random_allocation(L, V, rng), V))
    return fams


def suite_prop_d4(L, seed, samples=50):
    rng = _rng(seed, "prop-d4", L)
    not_cng = law1 = law2 = cor = None
    for _ in range(samples):
        V = rng.choice(VALUE_LATTICES)
        phi, phi2 = al.random_allocation(L, V, rng), al.random_allocation(L, V, rng)
        a, b = rng.randrange(V.n), rng.randrange(V.n)
        Qa, Qb = al.Q(phi, a, check=False), al.Q(phi, b, check=False)
        if not_cng is None and not (Qa.is_congruence() and Qb.is_congruence()):
            not_cng = f"{V.name} alpha={V.label(a)}"
        if law1 is None and al.Q(phi, V.join(a, b), check=False) != Qa & Qb:
            law1 = f"{V.name} alpha={V.label(a)} beta={V.label(b)}"
        if law2 is None and al.Q(phi.meet(phi2), a, check=False) != Qa & al.Q(phi2, a, check=False):
            law2 = f"{V.name} alpha={V.label(a)}"
        if cor is None and dvs_closure(al.Q(phi, V.join(a, b), check=False)) != dvs_closure(Qa) & dvs_closure(Qb):
            cor = f"{V.name} alpha={V.label(a)} beta={V.label(b)}"
    chi = al.chi_allocation(L)
    NV = chi.values
    bad = _first((not al.Q(chi, a, check=False).is_congruence(), NV.label(a)) for a in NV.elements)
    return [
        ("Q values are congruence sets", not_cng is None and bad is None, not_cng or bad),
        ("Q turns joins of values into intersections", law1 is None, law1),
        ("Q turns meets of allocations into intersections", law2 is None, law2),
        ("Dvs after Q preserves binary meets", cor is None, cor),
    ]


def suite_prop_d10(L, seed, samples=50):
    rng = _rng(seed, "prop-d10", L)
    not_cng = law1 = law2 = None
    for _ in range(samples):
        V = rng.choice(VALUE_LATTICES)
        psi, psi2 = al.random_aspect(L, V, rng), al.random_aspect(L, V, rng)
        a, b = rng.randrange(V.n), rng.randrange(V.n)
        Ma, Mb = al.M(psi, a, check=False), al.M(psi, b, check=False)
        if not_cng is None and not (Ma.is_congruence() and Mb.is_congruence()):
            not_cng = f"{V.name} alpha={V.label(a)}"
        if law1 is None and al.M(psi, V.meet(a, b), check=False) != Ma & Mb:
            law1 = f"{V.name} alpha={V.label(a)} beta={V.label(b)}"
        if law2 is None and al.M(psi.join(psi2), a, check=False) != Ma & al.M(psi2, a, check=False):
            law2 = f"{V.name} alpha={V.label(a)}"
    xi = al.xi_aspect(L)
    DV = xi.values
    bad = _first((not al.M(xi, a, check=False).is_congruence(), DV.label(a)) for a in DV.elements)
    return [
        ("M values are congruence sets", not_cng is None and bad is None, not_cng or bad),
        ("M turns meets of values into intersections", law1 is None, law1),
        ("M turns joins of aspects into intersections", law2 is None, law2),
    ]


def suite_thm_d12(L, seed, samples=20):
    rng = _rng(seed, "thm-d12", L)
    out = []
    xi = al.xi_aspect(L)
    v = al.is_allocation(al.H(xi, check=False))
    out.append(("H(xi) is an allocation", v.ok, v.witness))
    for V in VALUE_LATTICES:
        bad = _first((not al.is_allocation(al.H(al.R(L, V, a), check=False)), V.label(a)) for a in V.elements)
        out.append((f"H(R(a)) into {V.name} is an allocation", bad is None, bad))
    bad = anti = None
    for k in range(samples):
        V = rng.choice(VALUE_LATTICES)
        psi = al.random_aspect(L, V, rng)
        H1 = al.H(psi, check=False)
        if bad is None and not al.is_allocation(H1):
            bad = f"sample {k} into {V.name}"
        bigger = psi.join(al.random_aspect(L, V, rng))
        if anti is None and not al.H(bigger, check=False).leq(H1):
            anti = f"sample {k} into {V.name}"
    out.append((f"H of {samples} random aspects are allocations", bad is None, bad))
    out.append(("H is antitone", anti is None, anti))
    return out


# -- decompositions ----------------------------------------------------------


def _all_support_values(phi):
    L = phi.lattice
    vals = set()
    for a, b in L.intervals:
        vals |= dc.support(phi, Interval(a, b, L))
    return sorted(vals)


def suite_prop_dct3(L, seed, samples=5):
    rng = _rng(seed, "prop-dct3", L)
    out = []
    for k, (phi, V) in enumerate(_allocation_samples(L, rng, samples + 1)):
        v = al.is_allocation(dc.support_map(phi))
        tag = "chi" if k == 0 else f"sample {k} into {V.name}"
        out.append((f"support of {tag} is a P(Omega)^op-allocation", v.ok, v.witness and f"{tag}: axiom {v.axiom} at {v.witness}"))
    return out


def suite_prop_dtc5(L, seed):
    chi = al.chi_allocation(L)
    bad = None
    for p in _all_support_values(chi):
        v = al.is_allocation(dc.p_indicator(chi, p))
        if not v:
            bad = f"p={chi.values.label(p)}: axiom {v.axiom} at {v.witness}"
            break
    return [("p-inert indicator is a 2-allocation", bad is None, bad)]


def suite_cor_dtc5(L, seed):
    chi = al.chi_allocation(L)
    bad = None
    for p in _all_support_values(chi):
        D = dc.D_p(chi, p)
        if not D.is_division():
            bad = f"p={chi.values.label(p)}: set is only {D.level}: {D}"
            break
    return [("p-inert intervals form a division set", bad is None, bad)]


def suite_lemma_dtc8(L, seed):
    chi = al.chi_allocation(L)
    V = chi.values
    bad = None
    if dc.is_adequate(chi):
        for a, b in L.intervals:
            stable = [chi(a, x) for x in L.between(a, b) if x != a and dc.is_stable(chi, Interval(a, x, L))]
            if chi(a, b) != V.meet_all(stable):
                bad = _iv(L, a, b)
                break
    return [("chi is the meet of its stable values", bad is None, bad)]


def suite_lemma_dtc9(L, seed):
    chi = al.chi_allocation(L)
    bad = None
    for a, b in L.intervals:
        I = Interval(a, b, L)
        if a == b or not dc.is_atomic(chi, I):
            continue
        (p,) = dc.support(chi, I)
        for x in L.between(a, b):
            if dc.is_inertial_point(chi, p, I, x) and not is_large(x, I):
                bad = f"{I} point {L.label(x)}"
    return [("inertial points of atomic intervals are large", bad is None, bad)]


def _decomposition_failure(phi):
    L = phi.lattice
    for a, b in L.intervals:
        if a == b:
            continue
        I = Interval(a, b, L)
        try:
            dec = dc.find_decomposition(phi, I)
        except (dc.Absent, dc.Unknown) as exc:
            return f"{I}: {type(exc).__name__}"
        problems = dc.check_decomposition(phi, I, dec.parts)
        if problems:
            return f"{I}: {problems[0]}"
    return None


def suite_thm_dtc11(L, seed, samples=5):
    rng = _rng(seed, "thm-dtc11", L)
    out = []
    for k, (phi, V) in enumerate(_allocation_samples(L, rng, samples + 1)):
        tag = "chi" if k == 0 else f"sample {k} into {V.name}"
        adequate = bool(dc.is_adequate(phi))
        fail = _decomposition_failure(phi)
        ok = adequate == (fail is None)
        out.append((f"{tag}: adequate iff every interval decomposes", ok, None if ok else f"{tag} adequate={adequate} {fail}"))
    return out


# -- dimension ---------------------------------------------------------------


def _random_seq(V, rng):
    vs, cur = [V.bottom], V.bottom
    for _ in range(dm.cap(V) - 1):
        cur = V.join(cur, rng.randrange(V.n)) if rng.random() < 0.4 else cur
        vs.append(cur)
    vs.append(V.top)
    return dm.Seq(V, tuple(vs))


def suite_prop_d13(L, seed, samples=10):
    rng = _rng(seed, "prop-d13", L)
    bad_aspect = law1 = law2 = None
    xi = al.xi_aspect(L)
    N = enumerate_nuclei(L, force=True)
    cases = [(xi, dm.opr_filtration(xi, N.identity, "crt", check=False).completed)]
    for _ in range(samples):
        V = rng.choice(VALUE_LATTICES)
        cases.append((al.random_aspect(L, V, rng), _random_seq(V, rng)))
    for k, (psi, h) in enumerate(cases):
        V = psi.values
        d = dm.dim_aspect(psi, h, check=False)
        v = al.is_aspect(d)
        if bad_aspect is None and not v:
            bad_aspect = f"case {k}: axiom {v.axiom} at {v.witness}"
        h2 = _random_seq(V, rng) if V is not xi.values else h
        joined = d.join(dm.dim_aspect(psi, h2, check=False))
        if law1 is None and dm.dim_aspect(psi, h.meet(h2), check=False).table != joined.table:
            law1 = f"case {k}"
        psi2 = al.random_aspect(L, V, rng) if V is not xi.values else psi
        joined = d.join(dm.dim_aspect(psi2, h, check=False))
        if law2 is None and dm.dim_aspect(psi.join(psi2), h, check=False).table != joined.table:
            law2 = f"case {k}"
    return [
        ("dimension is an aspect into the ordinal chain", bad_aspect is None, bad_aspect),
        ("meet of sequences goes to join of dimensions", law1 is None, law1),
        ("join of aspects goes to join of dimensions", law2 is None, law2),
    ]


def suite_cor_d14(L, seed):
    xi = al.xi_aspect(L)
    aspects = [("xi", xi)] + [
        (f"R({V.label(b)}) into {V.name}", al.R(L, V, b)) for V in VALUE_LATTICES for b in V.elements
    ]
    bad = None
    for tag, psi in aspects:
        V = psi.values
        for a in V.elements:
            d = dm.dim_aspect(psi, dm.Seq.constant(V, a), check=False)
            if al.M(d, d.values.bottom, check=False) != al.M(psi, a, check=False):
                bad = f"{tag} alpha={V.label(a)}"
                break
        if bad:
            break
    return [("M(dim, 0) equals M(psi, alpha)", bad is None, bad)]


def suite_prop_d15(L, seed, operators=("crt", "fll", "smp", "cmp")):
    N = enumerate_nuclei(L, force=True)
    if len(N) > MAX_N_SIZE:
        return []
    xi = al.xi_aspect(L)
    bad = None
    for op in operators:
        for k, D in enumerate(N.divisions):
            h = dm.opr_filtration(xi, k, op, check=False).raw.values
            terms = dm.kpr_filtration(D, op, length=len(h) - 1)
            if [N.divisions[v] for v in h] != terms:
                bad = f"{op} from {N.division_lattice.label(k)}"
                break
        if bad:
            break
    return [("Opr and Kpr filtrations agree term by term", bad is None, bad)]


def suite_cor_d16(L, seed):
    out = suite_prop_d15(L, seed, operators=("crt", "fll"))
    out = [(f"{name} (Gabriel and Boyle)", ok, w) for name, ok, w in out]
    want = 0 if L.n == 1 else 1
    g, b = dm.gabriel_dimension(L), dm.boyle_dimension(L)
    out.append(("Gabriel dimension of the trivial set", g == want, None if g == want else f"got {g}"))
    out.append(("Boyle dimension of the trivial set", b == want, None if b == want else f"got {b}"))
    return out


SUITES = {
    "prop-03": suite_prop_03,
    "thm-0": suite_thm_0,
    "thm-00": suite_thm_00,
    "thm-000": suite_thm_000,
    "def-d1": suite_def_d1,
    "def-d7": suite_def_d7,
    "prop-d4": suite_prop_d4,
    "prop-d10": suite_prop_d10,
    "thm-d12": suite_thm_d12,
    "prop-dct3": suite_prop_dct3,
    "prop-dtc5": suite_prop_dtc5,
    "cor-dtc5": suite_cor_dtc5,
    "lemma-dtc8": suite_lemma_dtc8,
    "lemma-dtc9": suite_lemma_dtc9,
    "thm-dtc11": suite_thm_dtc11,
    "prop-d13": suite_prop_d13,
    "cor-d14": suite_cor_d14,
    "prop-d15": suite_prop_d15,
    "cor-d16": suite_cor_d16,
}


def run_suite(name: str, corpus: list[CorpusEntry], seed: int = 0) -> list[Check]:
    names = list(SUITES) if name == "all" else [name]
    checks = []
    for suite in names:
        fn = SUITES[suite]
        for entry in corpus:
            t0 = time.perf_counter()
            rows = fn(entry.lattice, seed)
            dt = (time.perf_counter() - t0) / max(len(rows), 1)
            for check, ok, witness in rows:
                checks.append(Check(suite, entry.name, check, bool(ok), None if ok else f"{entry.name}: {witness}", dt))
    return checks
