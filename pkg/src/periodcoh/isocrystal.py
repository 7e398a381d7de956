"""Newton vectors, dominance order and the acceptable set for GL_n."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from typing import Sequence

from . import _linalg as la
from .errors import FrameMismatch, InvalidMu, NotBasic, NotDominant
from .rootdata import DiagramAutomorphism, RootDatum

FRAMES = ("GLn", "GeneralDominant")


@dataclass(frozen=True)
class NewtonVector:
    slopes: tuple
    frame: str = "GLn"

    def __post_init__(self):
        if self.frame not in FRAMES:
            raise FrameMismatch(f"unknown frame {self.frame!r}")
        object.__setattr__(self, "slopes", la.normalize(self.slopes))
        if self.frame == "GLn" and any(a < b for a, b in zip(self.slopes, self.slopes[1:])):
            raise NotDominant(f"slopes {self.slopes} are not nonincreasing")

    def __len__(self) -> int:
        return len(self.slopes)

    def partial_sums(self) -> list[Fraction]:
        return list(accumulate(Fraction(x) for x in self.slopes))

    def is_integral(self) -> bool:
        """Each slope value times its multiplicity is an integer."""
        return all(Fraction(x) * m % 1 == 0 for x, m in Counter(self.slopes).items())


def general_newton(datum: RootDatum, nu: Sequence) -> NewtonVector:
    datum.check_dim(nu)
    if not datum.is_dominant(nu):
        raise NotDominant(f"{tuple(nu)} is not dominant")
    return NewtonVector(tuple(nu), "GeneralDominant")


def dominance_leq(x: NewtonVector, y: NewtonVector) -> bool:
    """x <= y: partial sums of y dominate those of x, with equal totals."""
    if x.frame != "GLn" or y.frame != "GLn":
        raise FrameMismatch("dominance_leq compares GLn-frame vectors")
    if len(x) != len(y):
        raise FrameMismatch(f"lengths differ: {len(x)} vs {len(y)}")
    sx, sy = x.partial_sums(), y.partial_sums()
    return sx[-1] == sy[-1] and all(a <= b for a, b in zip(sx, sy))


def galois_average(datum: RootDatum, mu: Sequence, tau: DiagramAutomorphism) -> tuple:
    datum.check_dim(mu)
    total = (0,) * datum.ambient_rank
    v = tuple(mu)
    for _ in range(tau.order):
        total = la.vadd(total, v)
        v = tau.apply(v)
    return la.normalize(la.vscale(Fraction(1, tau.order), total))


def is_basic(nu: NewtonVector, datum: RootDatum | None = None) -> bool:
    if nu.frame == "GLn":
        return len(set(nu.slopes)) <= 1
    if datum is None:
        raise FrameMismatch("a root datum is needed to test a general Newton vector")
    return datum.is_central(nu.slopes)


@dataclass(frozen=True)
class KottwitzPointGLn:
    newton: NewtonVector
    kappa: int


def _check_mu_gln(n: int, mu: Sequence) -> tuple:
    if len(mu) != n:
        raise InvalidMu(f"mu has length {len(mu)}, expected {n}")
    if any(Fraction(x).denominator != 1 for x in mu):
        raise InvalidMu(f"mu = {tuple(mu)} is not integral")
    mu = tuple(int(x) for x in mu)
    if any(a < b for a, b in zip(mu, mu[1:])):
        raise InvalidMu(f"mu = {mu} is not nonincreasing")
    return mu


def acceptable_set_gln(n: int, mu: Sequence) -> list[KottwitzPointGLn]:
    """All integral Newton vectors nu <= mu, listed lexicographically descending.

    A Newton vector is a concave polygon from (0, 0) to (n, sum mu) with
    integral breakpoints; we walk breakpoint to breakpoint with strictly
    decreasing slopes, staying under the Hodge polygon of mu.
    """
    if n < 1:
        raise InvalidMu("n must be positive")
    mu = _check_mu_gln(n, mu)
    hodge = [0] + list(accumulate(mu))
    total = hodge[-1]
    out: list[tuple] = []

    def walk(i: int, h: int, prev: Fraction | None, slopes: list):
        if i == n:
            if h == total:
                out.append(tuple(slopes))
            return
        for j in range(i + 1, n + 1):
            for h2 in range(h + (j - i) * mu[-1], hodge[j] + 1):
                s = Fraction(h2 - h, j - i)
                if prev is not None and s >= prev:
                    continue
                if all(h + s * (k - i) <= hodge[k] for k in range(i + 1, j + 1)):
                    walk(j, h2, s, slopes + [s] * (j - i))

    walk(0, 0, None, [])
    out.sort(reverse=True)
    return [KottwitzPointGLn(NewtonVector(s), total) for s in out]


def hasse_edges(points: Sequence[KottwitzPointGLn]) -> list[tuple[int, int]]:
    """Covering relations (lower, upper) of the dominance order, as index pairs."""
    k = len(points)
    leq = [[dominance_leq(points[a].newton, points[b].newton) for b in range(k)] for a in range(k)]
    edges = []
    for a in range(k):
        for b in range(k):
            if a == b or not leq[a][b]:
                continue
            if not any(c not in (a, b) and leq[a][c] and leq[c][b] for c in range(k)):
                edges.append((a, b))
    return sorted(edges)


def is_acceptable(datum: RootDatum, nu: NewtonVector | Sequence, mu: Sequence,
                  tau: DiagramAutomorphism) -> bool:
    """nu <= mu-average: the difference is a nonnegative combination of simple coroots."""
    vec = nu.slopes if isinstance(nu, NewtonVector) else tuple(nu)
    datum.check_dim(vec)
    datum.check_dim(mu)
    if not datum.is_central(vec):
        raise NotBasic(f"nu = {la.normalize(vec)} is not central")
    if not la.is_integral(mu) or not datum.is_dominant(mu):
        raise NotDominant(f"mu = {tuple(mu)} is not dominant integral")
    diff = la.vsub(galois_average(datum, mu, tau), vec)
    if any(datum.central_projection(diff)):
        return False
    coords = datum.simple_coroot_coordinates(diff)
    return coords is not None and all(c >= 0 for c in coords)
