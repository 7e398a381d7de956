"""Acceptance criteria, shared by the test suite and the ``selftest`` command.

Each criterion returns a :class:`CriterionResult`; the oracles used here are
written independently of the engine code paths they check.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate, combinations, combinations_with_replacement

from . import _linalg as la
from .checks import invariant_suite
from .cohomology import compactly_supported_cohomology, euler_consistency_check, rep
from .isocrystal import acceptable_set_gln, is_basic
from .rootdata import build_root_datum
from .shtuka import build_datum
from .steinberg import ConstituentVector, constituents_i, ext1, resolution_euler_check, subsets
from .weyl import enumerate_weyl_group, kostant_representatives

SUITE = (
    ("drinfeld_1", {"preset": "drinfeld:1"}),
    ("drinfeld_2", {"preset": "drinfeld:2"}),
    ("drinfeld_3", {"preset": "drinfeld:3"}),
    ("drinfeld_4", {"preset": "drinfeld:4"}),
    ("gln_basic_3_slope_0", {"preset": "gln_basic:3:1,0,-1:0"}),
    ("gln_basic_4_slope_1_2", {"preset": "gln_basic:4:1,1,0,0:1/2"}),
    ("gln_basic_6_slope_1_3", {"preset": "gln_basic:6:1,1,0,0,0,0:1/3"}),
    ("gln_basic_2_slope_1_2", {"preset": "gln_basic:2:1,0:1/2"}),
    ("quadric_7", {"preset": "quadric:7"}),
    ("quadric_9", {"preset": "quadric:9"}),
    ("unitary_gl4_explicit", {
        "group": "GL4", "galois": "(a1 a3)", "gl_mode": "dual",
        "mu": [1, 0, 0, -1], "nu": [0, 0, 0, 0],
        "j": {"delta": [["1/2", "-1/2", "1/2", "-1/2"], [0, 1, -1, 0]], "labels": ["b1", "b2"]},
    }),
    ("product_gl2_b2", {"preset": "split:GL2xB2:1,-1,1,0"}),
)


@dataclass(frozen=True)
class CriterionResult:
    id: int
    name: str
    passed: bool
    detail: str
    seconds: float
    limit: float | None = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        limit = f" (limit {self.limit:g} s)" if self.limit else ""
        return f"[{status}] criterion {self.id}: {self.name}: {self.detail} [{self.seconds:.2f} s{limit}]"


def _timed(cid: int, name: str, limit: float | None, fn) -> CriterionResult:
    start = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - start
    if limit is not None and elapsed > limit:
        ok, detail = False, f"{detail}; exceeded time limit"
    return CriterionResult(cid, name, ok, detail, elapsed, limit)


# 1. Drinfeld ----------------------------------------------------------------

def drinfeld_expected(d: int) -> list[tuple[int, frozenset, int, int]]:
    """Degree d + i carries Sp_{d-i} = v_{a1..ai}, Galois rank 1 and twist -i."""
    return [(d + i, frozenset(range(i)), 1, -i) for i in range(d + 1)]


def criterion_1() -> CriterionResult:
    def run():
        bad = []
        for d in range(1, 6):
            datum = build_datum(f"drinfeld:{d}")
            hc = compactly_supported_cohomology(datum)
            got = [(s.degree, s.rep, s.galois.rank, s.galois.twist) for s in hc]
            want = [(deg, rep("v", I, datum.delta), r, t) for deg, I, r, t in drinfeld_expected(d)]
            if got != want:
                bad.append(d)
        return not bad, "d = 1..5 match" if not bad else f"mismatch for d in {bad}"
    return _timed(1, "Drinfeld reproduction", 5.0, run)


# 2. Kostant representatives ------------------------------------------------

KOSTANT_TYPES = ("A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D3", "D4", "F4", "G2")


def random_dominant(datum, rng: random.Random) -> tuple:
    v = tuple(rng.randint(-2, 2) for _ in range(datum.ambient_rank))
    return datum.make_dominant(v)


def kostant_oracle(datum, elements, mu) -> set[tuple[tuple, int]]:
    """Filter the whole group for elements sending every simple coroot fixing mu to a positive coroot."""
    pos = set(map(la.normalize, datum.positive_coroots))
    fixed = [i for i, a in enumerate(datum.simple_roots) if la.dot(a, mu) == 0]
    out = set()
    for w in elements:
        if all(la.normalize(la.mat_vec(w.matrix, datum.simple_coroots[i])) in pos for i in fixed):
            out.add((la.normalize(la.mat_vec(w.matrix, mu)), w.length))
    return out


def criterion_2(samples: int = 20, seed: int = 2) -> CriterionResult:
    def run():
        rng = random.Random(seed)
        bad = []
        for t in KOSTANT_TYPES:
            datum = build_root_datum(t)
            elements = enumerate_weyl_group(datum)
            for _ in range(samples):
                mu = random_dominant(datum, rng)
                ks = kostant_representatives(datum, mu)
                got = {(e.image, e.length) for e in ks.entries}
                if got != kostant_oracle(datum, elements, mu) or len(got) != len(ks):
                    bad.append((t, mu))
        detail = f"{len(KOSTANT_TYPES)} types x {samples} weights agree" if not bad else f"mismatches: {bad[:3]}"
        return not bad, detail
    return _timed(2, "Kostant oracle", 60.0, run)


# 3. Euler characteristic ----------------------------------------------------

def criterion_3() -> CriterionResult:
    def run():
        bad, undetected = [], []
        for name, desc in SUITE:
            datum = build_datum(desc)
            for p in (3, 5):
                for n in (1, 2):
                    if not euler_consistency_check(datum, p, n).passed:
                        bad.append((name, p, n))
            hc = compactly_supported_cohomology(datum)
            for k in range(len(hc)):
                if euler_consistency_check(datum, 3, 1, hc=hc.without(k)).passed:
                    undetected.append((name, k))
        ok = not bad and not undetected
        detail = (f"{len(SUITE)} data, residual zero; every dropped summand detected" if ok
                  else f"nonzero residual {bad[:3]}; undetected corruption {undetected[:3]}")
        return ok, detail
    return _timed(3, "Euler consistency", 30.0, run)


# 4. Kottwitz sets -----------------------------------------------------------

def _rationals(lo: int, hi: int, max_den: int) -> list[Fraction]:
    vals = {Fraction(a, b) for b in range(1, max_den + 1) for a in range(lo * b, hi * b + 1)}
    return sorted(vals, reverse=True)


def brute_force_acceptable(n: int, mu) -> set[tuple]:
    """Nonincreasing rational vectors in [min mu, max mu] with denominators <= n,
    integral, of total sum(mu) and partial sums bounded by those of mu.

    Coordinates are chosen one at a time; a run of equal slopes is rejected as
    soon as it closes with a non-integral sum.
    """
    hodge = list(accumulate(mu))
    total = hodge[-1]
    values = _rationals(min(mu), max(mu), n)
    out = set()

    def run_ok(prefix):
        x, m = prefix[-1], 0
        while m < len(prefix) and prefix[-1 - m] == x:
            m += 1
        return (x * m).denominator == 1

    def rec(prefix, s, start):
        k = len(prefix)
        if k == n:
            if s == total and run_ok(prefix):
                out.add(la.normalize(prefix))
            return
        for idx in range(start, len(values)):
            x = values[idx]
            if s + x > hodge[k]:
                continue
            if s + x * (n - k) < total:
                break
            if prefix and x != prefix[-1] and not run_ok(prefix):
                continue
            rec(prefix + [x], s + x, idx)

    rec([], Fraction(0), 0)
    return out


def criterion_4() -> CriterionResult:
    def run():
        bad, count = [], 0
        for n in range(1, 6):
            for mu in combinations_with_replacement(range(2, -3, -1), n):
                count += 1
                pts = acceptable_set_gln(n, mu)
                got = {p.newton.slopes for p in pts}
                basics = [p for p in pts if is_basic(p.newton)]
                if got != brute_force_acceptable(n, mu) or len(got) != len(pts) or len(basics) != 1:
                    bad.append((n, mu))
        return not bad, f"{count} weights agree, one basic point each" if not bad else f"mismatches {bad[:3]}"
    return _timed(4, "Kottwitz oracle", 60.0, run)


# 5. Ext table ---------------------------------------------------------------
# Hand transcription of the vanishing / rank statements, one row per case:
# (preset, primes, relation, size-gap condition, value, torsion bound).
# relation: "up" = J is I plus one root, "down" = I is J plus one root,
# "far" = symmetric difference of size >= 2.

EXT_TABLE = (
    ("GeneralQuasiSplit", {5}, "up", None, "FreeRankOne", None),
    ("GeneralQuasiSplit", {2, 3}, "up", None, "OutsideTheorem", None),
    ("GeneralQuasiSplit", {3, 5}, "down", None, "HomUnitsOfF", None),
    ("GeneralQuasiSplit", {2}, "down", None, "OutsideTheorem", None),
    ("GeneralQuasiSplit", {5}, "far", None, "Zero", None),
    ("GeneralQuasiSplit", {3}, "far", "ge2", "Zero", None),
    ("GeneralQuasiSplit", {3}, "far", "lt2", "OutsideTheorem", 3),
    ("GeneralQuasiSplit", {2}, "far", None, "OutsideTheorem", 8),
    ("GLnD", {2, 3, 5}, "up", None, "FreeRankOne", None),
    ("GLnD", {2, 3, 5}, "down", None, "HomUnitsOfF", None),
    ("GLnD", {2, 3, 5}, "far", None, "Zero", None),
    ("GLnD@Q2", {2}, "up", None, "OutsideTheorem", None),
    ("GLnD@Q2", {2}, "down", None, "OutsideTheorem", None),
    ("GLnD@Q2", {2}, "far", "ge2", "Zero", None),
    ("GLnD@Q2", {2}, "far", "lt2", "OutsideTheorem", 8),
)


def expected_ext(I: frozenset, J: frozenset, p: int, preset: str) -> tuple[str, int | None]:
    if I == J:
        return "SelfCase", None
    if J > I and len(J - I) == 1:
        relation = "up"
    elif I > J and len(I - J) == 1:
        relation = "down"
    else:
        relation = "far"
    gap = "ge2" if abs(len(I) - len(J)) >= 2 else "lt2"
    rows = [r for r in EXT_TABLE
            if r[0] == preset and p in r[1] and r[2] == relation and r[3] in (None, gap)]
    if len(rows) != 1:
        raise AssertionError(f"transcription does not decide {preset}, p={p}, {relation}, {gap}")
    return rows[0][4], rows[0][5]


def criterion_5() -> CriterionResult:
    def run():
        bad, count = [], 0
        for size in range(6):
            subs = subsets(size)
            for p in (2, 3, 5):
                for preset in ("GLnD", "GeneralQuasiSplit", "GLnD@Q2"):
                    if preset == "GLnD@Q2" and p != 2:
                        continue
                    for I in subs:
                        for J in subs:
                            count += 1
                            if preset == "GLnD@Q2":
                                got = ext1(I, J, p, "GLnD", split_at_2=True)
                            else:
                                got = ext1(I, J, p, preset)
                            if (got.value, got.torsion_bound) != expected_ext(I, J, p, preset):
                                bad.append((size, p, preset, sorted(I), sorted(J)))
        return not bad, f"{count} cases agree" if not bad else f"mismatches {bad[:3]}"
    return _timed(5, "Ext table", None, run)


# 6. Resolution identity -----------------------------------------------------

def _perturbed(I, n, delta):
    """constituents_i with one multiplicity bumped in the top term of the complex."""
    full = frozenset(range(delta)) if isinstance(delta, int) else frozenset(delta)
    v = constituents_i(I, n, delta)
    return v + ConstituentVector({full: 1}) if frozenset(I) == full else v


def criterion_6() -> CriterionResult:
    def run():
        bad, count = [], 0
        for size in range(7):
            for I in subsets(size):
                for n in (1, 2, 3):
                    count += 1
                    if not resolution_euler_check(I, n, size):
                        bad.append((size, sorted(I), n))
        sensitive = not resolution_euler_check(frozenset(), 1, 2, constituents=_perturbed)
        ok = not bad and sensitive
        detail = f"{count} cases hold; perturbation detected" if ok else f"failures {bad[:3]}, sensitive={sensitive}"
        return ok, detail
    return _timed(6, "Resolution identity", 10.0, run)


# 7. Invariants --------------------------------------------------------------

def criterion_7() -> CriterionResult:
    def run():
        bad = []
        for name, desc in SUITE:
            for res in invariant_suite(build_datum(desc)):
                if not res.passed:
                    bad.append((name, res.name))
        return not bad, f"all invariants hold on {len(SUITE)} data" if not bad else f"failures {bad[:5]}"
    return _timed(7, "Invariant suite", None, run)


# 8. Duality ---------------------------------------------------------------

def criterion_8() -> CriterionResult:
    """Dualizing H_c^{2d-i}, twisting by -d and relabeling gives H^i = Sp_i^*(-i)."""
    def run():
        bad = []
        for d in range(1, 5):
            datum = build_datum(f"drinfeld:{d}")
            predicted = set()
            for s in compactly_supported_cohomology(datum):
                sp = len(datum.delta - s.rep.I)          # Sp_j has |Delta - I| = j
                if s.rep.I != frozenset(range(d - sp)):
                    bad.append((d, "not a Drinfeld label"))
                predicted.add((2 * d - s.degree, ("Sp*", sp), -s.galois.twist - d))
            cited = {(i, ("Sp*", i), -i) for i in range(d + 1)}
            if predicted != cited:
                bad.append(d)
        return not bad, "d = 1..4 match" if not bad else f"mismatch {bad}"
    return _timed(8, "Duality label check", None, run)


# 9. Determinism -------------------------------------------------------------

def criterion_9() -> CriterionResult:
    from .cli import regression_reports

    def run():
        first = regression_reports()
        second = regression_reports()
        same = first == second
        return same, f"{len(first)} machine reports byte-identical" if same else "reruns differ"
    return _timed(9, "Determinism", None, run)


CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9)


def run_all() -> list[CriterionResult]:
    return [c() for c in CRITERIA]
