"""Cohomology of period domains as graded sums of Steinberg-type pieces.

Every orbit [w] of the Galois action on W^mu contributes through its length
l, its size r and the subset I_[w] of relative simple roots; the Galois
module rho_[w] is recorded as (rank r, twist -l).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .errors import BadIndex, EmptyBoundary, ValidationError
from .shtuka import LocalShtukaDatum, OrbitInvariant, orbit_invariants
from .steinberg import ConstituentVector, ExtAnswer, _check_prime, constituents_i, constituents_v, ext1

COEFFICIENTS = ("ModPn", "Zp")


@dataclass(frozen=True)
class RepSymbol:
    kind: str
    I: frozenset
    coefficient: str = "ModPn"

    def __post_init__(self):
        if self.kind not in ("v", "i"):
            raise ValueError(f"unknown representation kind {self.kind!r}")
        if self.coefficient not in COEFFICIENTS:
            raise ValueError(f"unknown coefficient tag {self.coefficient!r}")


def rep(kind: str, I: Iterable[int], delta: frozenset, coefficient: str = "ModPn") -> RepSymbol:
    """Build a symbol, folding v_Delta into the trivial representation i_Delta."""
    I = frozenset(I)
    if I == delta:
        kind = "i"
    return RepSymbol(kind, I, coefficient)


def trivial(delta: frozenset, coefficient: str = "ModPn") -> RepSymbol:
    return RepSymbol("i", frozenset(delta), coefficient)


@dataclass(frozen=True)
class GaloisFactor:
    rank: int
    twist: int

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("Galois rank must be positive")


@dataclass(frozen=True)
class CohomologySummand:
    degree: int
    rep: RepSymbol
    galois: GaloisFactor
    origin_orbit: int

    def sort_key(self):
        return (self.degree, len(self.rep.I), sorted(self.rep.I), self.galois.twist,
                self.galois.rank, self.rep.kind, self.origin_orbit)


@dataclass(frozen=True)
class GradedRepSum:
    summands: tuple[CohomologySummand, ...]
    flags: tuple[tuple[str, bool], ...] = ()

    @classmethod
    def build(cls, summands: Iterable[CohomologySummand], **flags: bool) -> "GradedRepSum":
        return cls(tuple(sorted(summands, key=CohomologySummand.sort_key)), tuple(sorted(flags.items())))

    def __len__(self) -> int:
        return len(self.summands)

    def __iter__(self):
        return iter(self.summands)

    def flag(self, name: str) -> bool:
        return dict(self.flags).get(name, False)

    def degrees(self) -> list[int]:
        return sorted({s.degree for s in self.summands})

    def in_degree(self, d: int) -> list[CohomologySummand]:
        return [s for s in self.summands if s.degree == d]

    def without(self, index: int) -> "GradedRepSum":
        """Copy with one summand removed (used to test that checks detect corruption)."""
        return GradedRepSum(self.summands[:index] + self.summands[index + 1:], self.flags)


@dataclass(frozen=True)
class SpectralPage:
    page: int
    cells: tuple[tuple[tuple[int, int], tuple[tuple[RepSymbol, GaloisFactor, int], ...]], ...]

    def cell(self, i: int, j: int) -> tuple:
        return dict(self.cells).get((i, j), ())

    def total(self) -> GradedRepSum:
        """Collapse to a graded sum in total degree i + j."""
        out = []
        for (i, j), entries in self.cells:
            for r, g, oid in entries:
                out.append(CohomologySummand(i + j, r, g, oid))
        return GradedRepSum.build(out)


def _invariants(datum: LocalShtukaDatum) -> list[OrbitInvariant]:
    return orbit_invariants(datum)


def _rho(inv: OrbitInvariant) -> GaloisFactor:
    return GaloisFactor(inv.orbit.size, -inv.orbit.length)


def omega_set(datum: LocalShtukaDatum, I: Iterable[int], invariants=None) -> frozenset[int]:
    """Orbit ids [w] with I_[w] contained in I."""
    I = datum.check_subset(I)
    invs = _invariants(datum) if invariants is None else invariants
    return frozenset(inv.orbit_id for inv in invs if inv.I <= I)


def schubert_cohomology(datum: LocalShtukaDatum, I: Iterable[int], invariants=None) -> GradedRepSum:
    I = datum.check_subset(I)
    invs = _invariants(datum) if invariants is None else invariants
    out = [CohomologySummand(2 * inv.length, trivial(datum.delta), _rho(inv), inv.orbit_id)
           for inv in invs if inv.I <= I]
    return GradedRepSum.build(out)


def flag_cohomology(datum: LocalShtukaDatum, invariants=None) -> GradedRepSum:
    return schubert_cohomology(datum, datum.delta, invariants)


def boundary_cohomology(datum: LocalShtukaDatum, invariants=None) -> GradedRepSum:
    """Cohomology of the complement of the period domain, one or two pieces per orbit."""
    delta = datum.delta
    invs = _invariants(datum) if invariants is None else invariants
    out = []
    for inv in invs:
        k = len(delta - inv.I)
        if k == 0:
            continue
        if k == 1:
            out.append(CohomologySummand(2 * inv.length, RepSymbol("i", inv.I), _rho(inv), inv.orbit_id))
        else:
            out.append(CohomologySummand(2 * inv.length, trivial(delta), _rho(inv), inv.orbit_id))
            out.append(CohomologySummand(2 * inv.length + k - 1, rep("v", inv.I, delta), _rho(inv), inv.orbit_id))
    return GradedRepSum.build(out, boundary_empty=not out)


def compactly_supported_cohomology(datum: LocalShtukaDatum, coefficients: str = "ModPn",
                                   invariants=None) -> GradedRepSum:
    """v_{I_[w]} (x) rho_[w] placed in degree n_[w], one summand per orbit."""
    if coefficients not in COEFFICIENTS:
        raise ValidationError(f"coefficients must be one of {COEFFICIENTS}")
    invs = _invariants(datum) if invariants is None else invariants
    out = [CohomologySummand(inv.n, rep("v", inv.I, datum.delta, coefficients), _rho(inv), inv.orbit_id)
           for inv in invs]
    return GradedRepSum.build(out)


def _page(page: int, cells: dict) -> SpectralPage:
    return SpectralPage(page, tuple(sorted((k, tuple(v)) for k, v in cells.items())))


def spectral_pages(datum: LocalShtukaDatum, invariants=None) -> tuple[SpectralPage, SpectralPage]:
    """E_1 and E_2 of the spectral sequence computing the boundary cohomology.

    E_1^{i,j} is the sum over I with |Delta - I| = i + 1 of i_I tensored with
    the degree-j cohomology of the closed stratum, i.e. the orbits in Omega_I
    with 2l = j.  E_2 keeps, per orbit, the two ends of its row.
    """
    delta = datum.delta
    if not delta:
        raise EmptyBoundary("no relative simple roots: the boundary is empty")
    invs = _invariants(datum) if invariants is None else invariants
    e1: dict = {}
    for size in range(len(delta)):
        for I in map(frozenset, combinations(sorted(delta), size)):
            i = len(delta) - size - 1
            for inv in invs:
                if inv.I <= I:
                    e1.setdefault((i, 2 * inv.length), []).append((RepSymbol("i", I), _rho(inv), inv.orbit_id))
    e2: dict = {}
    for inv in invs:
        k = len(delta - inv.I)
        if k == 0:
            continue
        if k == 1:
            e2.setdefault((0, 2 * inv.length), []).append((RepSymbol("i", inv.I), _rho(inv), inv.orbit_id))
        else:
            e2.setdefault((0, 2 * inv.length), []).append((trivial(delta), _rho(inv), inv.orbit_id))
            e2.setdefault((k - 1, 2 * inv.length), []).append((rep("v", inv.I, delta), _rho(inv), inv.orbit_id))
    key = lambda e: (len(e[0].I), sorted(e[0].I), e[1].twist, e[1].rank, e[2])
    return (_page(1, {c: sorted(v, key=key) for c, v in e1.items()}),
            _page(2, {c: sorted(v, key=key) for c, v in e2.items()}))


def strata(datum: LocalShtukaDatum, i: int, invariants=None) -> list[tuple[frozenset, bool]]:
    """Subsets I with |Delta - I| = i, each with whether Omega_I is nonempty."""
    delta = datum.delta
    if not isinstance(i, int) or not 1 <= i <= len(delta):
        raise BadIndex(f"i must lie in [1, {len(delta)}], got {i!r}")
    invs = _invariants(datum) if invariants is None else invariants
    out = []
    for I in map(frozenset, combinations(sorted(delta), len(delta) - i)):
        out.append((I, any(inv.I <= I for inv in invs)))
    return out


# Grothendieck group bookkeeping --------------------------------------------

def rep_constituents(r: RepSymbol, n: int, delta: frozenset) -> ConstituentVector:
    if r.kind == "i":
        return constituents_i(r.I, n, delta)
    return constituents_v(r.I, n, delta)


def euler_class(gsum: GradedRepSum, n: int, delta: frozenset) -> Counter:
    """sum_j (-1)^j [H^j] keyed by (constituent K, Tate twist)."""
    out: Counter = Counter()
    for s in gsum:
        sign = -1 if s.degree % 2 else 1
        for K, m in rep_constituents(s.rep, n, delta).items():
            out[(K, s.galois.twist)] += sign * m * s.galois.rank
    return out


def page_row_class(page: SpectralPage, n: int, delta: frozenset) -> Counter:
    """Euler characteristic of each E_r row: keyed by (row j, constituent K, twist)."""
    out: Counter = Counter()
    for (i, j), entries in page.cells:
        sign = -1 if (i + j) % 2 else 1
        for r, g, _ in entries:
            for K, m in rep_constituents(r, n, delta).items():
                out[(j, K, g.twist)] += sign * m * g.rank
    return out


@dataclass(frozen=True)
class EulerReport:
    passed: bool
    p: int
    n: int
    residual: tuple[tuple[frozenset, int, int], ...]


def euler_consistency_check(datum: LocalShtukaDatum, p: int, n: int,
                            hc: GradedRepSum | None = None,
                            boundary: GradedRepSum | None = None) -> EulerReport:
    """chi_c(period domain) + chi(boundary) = chi(flag variety) in the Grothendieck group.

    ``hc`` and ``boundary`` may be supplied to check modified sums.
    """
    _check_prime(p)
    if n < 1:
        raise ValidationError("n must be positive")
    delta = datum.delta
    invs = _invariants(datum)
    hc = compactly_supported_cohomology(datum, invariants=invs) if hc is None else hc
    boundary = boundary_cohomology(datum, invs) if boundary is None else boundary
    total = euler_class(hc, n, delta)
    total.update(euler_class(boundary, n, delta))
    total.subtract(euler_class(flag_cohomology(datum, invs), n, delta))
    residual = tuple(sorted(((K, t, v) for (K, t), v in total.items() if v),
                            key=lambda e: (len(e[0]), sorted(e[0]), e[1])))
    return EulerReport(not residual, p, n, residual)


# Splitting hypotheses ------------------------------------------------------

@dataclass(frozen=True)
class PairCheck:
    degree: int
    kind: str               # "T3-T3", "T1-T3" or "T2-T3"
    source: int             # orbit id (or -1 for the trivial representation)
    target: int
    I: frozenset
    J: frozenset
    answer: ExtAnswer

    @property
    def ok(self) -> bool:
        return self.answer.value == "Zero"


@dataclass(frozen=True)
class SplittingReport:
    p: int
    verdict: str            # "ProvenByTheorem" or "ConjecturalForThisP"
    ext_preset: str
    checks: tuple[PairCheck, ...]
    notes: tuple[str, ...] = field(default=())

    @property
    def failing(self) -> tuple[PairCheck, ...]:
        return tuple(c for c in self.checks if not c.ok)


def is_gl_type(datum: LocalShtukaDatum) -> bool:
    """G = GL_n with trivial Galois action, so J is an inner form of GL_n."""
    factors = datum.g.spec.factors
    return len(factors) == 1 and factors[0][0] == "GL" and datum.tau.is_identity


def splitting_hypothesis_check(datum: LocalShtukaDatum, p: int) -> SplittingReport:
    """Check the Ext^1 vanishing needed to split the filtration on the boundary cohomology.

    For each total degree j the graded pieces are T1 (i_I with |Delta - I| = 1),
    T2 (trivial) in gr^0 and T3 (v_I) in gr^{>0}.  Needed: Ext^1 between T3
    pieces of different lengths, and Ext^1 of v_I, v_Delta (resp. v_Delta)
    against T3 for T1 (resp. T2) pieces.
    """
    _check_prime(p)
    delta = datum.delta
    invs = _invariants(datum)
    gl = is_gl_type(datum)
    preset = "GLnD" if gl else "GeneralQuasiSplit"
    split2 = gl and all(x == int(x) for x in datum.nu)

    def ext(I, J):
        return ext1(I, J, p, preset, split_at_2=split2)

    by_degree: dict[int, dict[str, list[OrbitInvariant]]] = {}
    for inv in invs:
        k = len(delta - inv.I)
        if k == 1:
            by_degree.setdefault(2 * inv.length, {}).setdefault("T1", []).append(inv)
        elif k > 1:
            by_degree.setdefault(2 * inv.length, {}).setdefault("T2", []).append(inv)
            by_degree.setdefault(2 * inv.length + k - 1, {}).setdefault("T3", []).append(inv)
    checks = []
    for j in sorted(by_degree):
        t = by_degree[j]
        t3 = t.get("T3", [])
        for a in t3:
            for b in t3:
                if a.length != b.length:
                    checks.append(PairCheck(j, "T3-T3", a.orbit_id, b.orbit_id, a.I, b.I, ext(a.I, b.I)))
        for a in t.get("T1", []):
            for b in t3:
                checks.append(PairCheck(j, "T1-T3", a.orbit_id, b.orbit_id, a.I, b.I, ext(a.I, b.I)))
        for kind in ("T1", "T2"):
            if t.get(kind):
                for b in t3:
                    checks.append(PairCheck(j, f"{kind}-T3", -1, b.orbit_id, delta, b.I, ext(delta, b.I)))
    notes = []
    if p == 2 and not gl:
        notes.append("p = 2 outside GL_n: the decomposition is not covered for this p")
        verdict = "ConjecturalForThisP"
    elif all(c.ok for c in checks):
        verdict = "ProvenByTheorem"
    else:
        verdict = "ConjecturalForThisP"
    return SplittingReport(p, verdict, preset, tuple(checks), tuple(notes))


# Invariant suite ----------------------------------------------------------

def top_degree_check(datum: LocalShtukaDatum, hc: GradedRepSum | None = None) -> bool:
    """The top degree 2 dim F holds exactly the trivial representation, rank 1, twist -dim F."""
    hc = compactly_supported_cohomology(datum) if hc is None else hc
    top = 2 * datum.dim_F
    if max(s.degree for s in hc) != top:
        return False
    part = hc.in_degree(top)
    return (len(part) == 1 and part[0].rep == trivial(datum.delta)
            and part[0].galois == GaloisFactor(1, -datum.dim_F))


def rank_total_check(datum: LocalShtukaDatum, hc: GradedRepSum | None = None) -> bool:
    hc = compactly_supported_cohomology(datum) if hc is None else hc
    by_orbit = Counter()
    for s in hc:
        by_orbit[s.origin_orbit] += s.galois.rank
    sizes = {k: o.size for k, o in enumerate(datum.orbits)}
    return dict(by_orbit) == sizes and sum(by_orbit.values()) == len(datum.kset)


def degree_support_check(datum: LocalShtukaDatum, hc: GradedRepSum | None = None) -> bool:
    hc = compactly_supported_cohomology(datum) if hc is None else hc
    low = min(2 * o.length for o in datum.orbits)
    return all(low <= s.degree <= 2 * datum.dim_F for s in hc)


def e2_matches_boundary(datum: LocalShtukaDatum) -> bool:
    if not datum.delta:
        return boundary_cohomology(datum).flag("boundary_empty")
    _, e2 = spectral_pages(datum)
    return e2.total().summands == boundary_cohomology(datum).summands


def e1_e2_rows_agree(datum: LocalShtukaDatum, n: int = 1) -> bool:
    """Row-wise Euler characteristics of E_1 and E_2 coincide."""
    if not datum.delta:
        return True
    e1, e2 = spectral_pages(datum)
    a = page_row_class(e1, n, datum.delta)
    b = page_row_class(e2, n, datum.delta)
    return {k: v for k, v in a.items() if v} == {k: v for k, v in b.items() if v}


def summand_signature(gsum: GradedRepSum, labels: Sequence[str]) -> list:
    """Datum-independent description of a graded sum (for comparing rescaled data)."""
    return [(s.degree, s.rep.kind, [labels[k] for k in sorted(s.rep.I)], s.rep.coefficient,
             s.galois.rank, s.galois.twist, s.origin_orbit) for s in gsum]
