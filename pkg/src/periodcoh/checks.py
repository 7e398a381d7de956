"""Invariant suite run by the ``check`` command and the acceptance tests."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import _linalg as la
from .cohomology import (
    compactly_supported_cohomology,
    degree_support_check,
    e1_e2_rows_agree,
    e2_matches_boundary,
    omega_set,
    rank_total_check,
    summand_signature,
    top_degree_check,
)
from .errors import PeriodCohError
from .rootdata import inner_product
from .shtuka import LocalShtukaDatum, i_set, orbit_invariants
from .steinberg import subsets


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def orbit_length_constancy(datum: LocalShtukaDatum) -> bool:
    return all(len({datum.kset.entries[m].length for m in o.members}) == 1 for o in datum.orbits)


def orbit_i_constancy(datum: LocalShtukaDatum) -> bool:
    invs = orbit_invariants(datum)
    return all(i_set(datum, datum.kset.entries[m].image) == inv.I
               for inv in invs for m in inv.orbit.members)


def central_shift_invariance(datum: LocalShtukaDatum, trials: int = 5, seed: int = 0) -> bool:
    """Shifting every omega by a central cocharacter leaves each I_[w] unchanged."""
    z = datum.g.central_basis
    if not z or not datum.delta:
        return True
    rng = random.Random(seed)
    base = [inv.I for inv in orbit_invariants(datum)]
    for _ in range(trials):
        shifted = []
        for w in datum.j.omega:
            v = w
            for b in z:
                v = la.vadd(v, la.vscale(Fraction(rng.randint(-9, 9), rng.randint(1, 5)), b))
            shifted.append(v)
        got = [i_set(datum, datum.kset.entries[o.members[0]].image, shifted) for o in datum.orbits]
        if got != base:
            return False
    return True


def _factor_classes(datum: LocalShtukaDatum) -> list[int]:
    """Class id per factor, factors exchanged by the Galois action sharing a class."""
    g = datum.g
    parent = list(range(len(g.factors)))

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    m = datum.tau.matrix
    for a, fa in enumerate(g.factors):
        for b, fb in enumerate(g.factors):
            if any(m[r][c] for r in fb.coords for c in fa.coords):
                parent[find(a)] = find(b)
    return [find(a) for a in range(len(g.factors))]


def rescaling_invariance(datum: LocalShtukaDatum, trials: int = 3, seed: int = 0) -> bool:
    """Per-factor rescaling of the inner product leaves the whole answer unchanged."""
    rng = random.Random(seed)
    labels = datum.j.labels
    base = summand_signature(compactly_supported_cohomology(datum), labels)
    classes = _factor_classes(datum)
    for _ in range(trials):
        by_class = {c: Fraction(rng.randint(1, 12), rng.randint(1, 7)) for c in set(classes)}
        other = datum.rescaled([by_class[c] for c in classes])
        if summand_signature(compactly_supported_cohomology(other), labels) != base:
            return False
    return True


def omega_lattice_properties(datum: LocalShtukaDatum) -> bool:
    """Omega is monotone in I and turns intersections into intersections."""
    invs = orbit_invariants(datum)
    subs = subsets(datum.delta)
    om = {I: omega_set(datum, I, invs) for I in subs}
    for I in subs:
        for J in subs:
            if I <= J and not om[I] <= om[J]:
                return False
            if om[I & J] != om[I] & om[J]:
                return False
    return om[datum.delta] == frozenset(range(len(datum.orbits)))


def omega_minimality(datum: LocalShtukaDatum) -> bool:
    """Omega_I equals the orbits with P(w mu - nu, omega_alpha) > 0 for every alpha outside I."""
    invs = orbit_invariants(datum)
    for I in subsets(datum.delta):
        direct = set()
        for oid, o in enumerate(datum.orbits):
            diff = la.vsub(datum.kset.entries[o.members[0]].image, datum.nu)
            if all(inner_product(datum.g, diff, datum.j.omega[a]) > 0 for a in datum.delta - I):
                direct.add(oid)
        if direct != omega_set(datum, I, invs):
            return False
    return True


def n_range(datum: LocalShtukaDatum) -> bool:
    return all(0 <= inv.n <= 2 * datum.dim_F for inv in orbit_invariants(datum))


def kostant_counts(datum: LocalShtukaDatum) -> bool:
    """Poincare counts sum to |W^mu|; top length is |Phi+| minus the roots fixed by mu."""
    g = datum.g
    counts = datum.kset.poincare_counts()
    fixed = sum(1 for b in g.positive_roots if la.dot(b, datum.mu) == 0)
    return sum(counts) == len(datum.kset) and len(counts) - 1 == len(g.positive_roots) - fixed


INVARIANTS = (
    ("orbit_length_constancy", orbit_length_constancy),
    ("orbit_I_constancy", orbit_i_constancy),
    ("central_shift_invariance", central_shift_invariance),
    ("rescaling_invariance", rescaling_invariance),
    ("omega_monotone_and_meet", omega_lattice_properties),
    ("omega_minimality", omega_minimality),
    ("top_degree_trivial", top_degree_check),
    ("galois_rank_total", rank_total_check),
    ("degree_support", degree_support_check),
    ("n_range", n_range),
    ("kostant_counts", kostant_counts),
    ("E2_total_equals_boundary", e2_matches_boundary),
    ("E1_E2_row_euler", e1_e2_rows_agree),
)


def invariant_suite(datum: LocalShtukaDatum) -> list[CheckResult]:
    out = []
    for name, fn in INVARIANTS:
        try:
            out.append(CheckResult(name, bool(fn(datum))))
        except PeriodCohError as exc:
            out.append(CheckResult(name, False, f"{type(exc).__name__}: {exc}"))
    return out
