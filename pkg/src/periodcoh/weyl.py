"""Weyl group elements, minimal coset representatives and their Galois orbits.

Elements are identified by the image of a regular dominant vector, cosets of
the stabilizer of a dominant mu by the image w(mu).  Words are read left to
right as products, so ``(i, j)`` is the element s_i s_j.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from . import _linalg as la
from .errors import GroupTooLarge, MuNotGaloisStable, NotDominant, OrbitInconsistency
from .rootdata import DiagramAutomorphism, RootDatum

DEFAULT_WEYL_BOUND = 51840
BOUND_ENV = "PERIODCOH_WEYL_BOUND"


def weyl_bound() -> int:
    raw = os.environ.get(BOUND_ENV)
    return int(raw) if raw else DEFAULT_WEYL_BOUND


@dataclass(frozen=True, eq=False)
class WeylElement:
    datum: RootDatum = field(repr=False)
    reduced_word: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.reduced_word)

    @cached_property
    def matrix(self) -> tuple:
        m = la.identity(self.datum.ambient_rank)
        for i in self.reduced_word:
            m = la.mat_mul(m, self.datum.reflection_matrix(i))
        return m

    def act(self, lam: Sequence) -> tuple:
        """w(lam), applying the letters of the word right to left."""
        lam = tuple(lam)
        for i in reversed(self.reduced_word):
            lam = self.datum.reflect(i, lam)
        return la.normalize(lam)

    def inversion_count(self) -> int:
        positive = set(map(la.normalize, self.datum.positive_coroots))
        return sum(1 for b in self.datum.positive_coroots if la.normalize(self.act(b)) not in positive)

    def word_string(self) -> str:
        if not self.reduced_word:
            return "1"
        return "".join(f"s{i + 1}" for i in self.reduced_word)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.datum is other.datum and self.reduced_word == other.reduced_word

    def __hash__(self):
        return hash(self.reduced_word)


def regular_dominant(datum: RootDatum) -> tuple:
    """Sum of the fundamental coweights: pairs to 1 with every simple root."""
    v = (0,) * datum.ambient_rank
    for w in datum.fundamental_coweights:
        v = la.vadd(v, w)
    return la.normalize(v)


def _descent(datum: RootDatum, x: Sequence) -> int | None:
    for i, a in enumerate(datum.simple_roots):
        if la.dot(a, x) < 0:
            return i
    return None


def _orbit_layers(datum: RootDatum, start: tuple, limit: int | None = None):
    """Layered BFS of W.start for dominant ``start``; returns {image: canonical word}.

    Layer k holds the images of minimal representatives of length k.  The
    canonical word of y is (i,) + word(s_i y) with i the least index such that
    <alpha_i, y> < 0, i.e. the lexicographically least reduced word.
    """
    words = {start: ()}
    layer = [start]
    while layer:
        nxt = []
        for x in layer:
            for i, a in enumerate(datum.simple_roots):
                if la.dot(a, x) > 0:
                    y = la.normalize(datum.reflect(i, x))
                    if y not in words:
                        d = _descent(datum, y)
                        words[y] = (d,) + words[la.normalize(datum.reflect(d, y))]
                        nxt.append(y)
                        if limit is not None and len(words) > limit:
                            raise GroupTooLarge(f"orbit exceeds {limit} elements")
        layer = nxt
    return words


def enumerate_weyl_group(datum: RootDatum, bound: int | None = None) -> list[WeylElement]:
    """All elements of W sorted by (length, word)."""
    bound = weyl_bound() if bound is None else bound
    if datum.weyl_order > bound:
        raise GroupTooLarge(f"|W| = {datum.weyl_order} exceeds the bound {bound}")
    words = _orbit_layers(datum, regular_dominant(datum))
    if len(words) != datum.weyl_order:
        raise OrbitInconsistency(f"enumerated {len(words)} elements, expected {datum.weyl_order}")
    elems = [WeylElement(datum, w) for w in words.values()]
    elems.sort(key=lambda e: (e.length, e.reduced_word))
    return elems


@dataclass(frozen=True)
class KostantEntry:
    representative: WeylElement
    image: tuple

    @property
    def length(self) -> int:
        return self.representative.length


@dataclass(frozen=True)
class KostantSet:
    mu: tuple
    entries: tuple[KostantEntry, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def index_of_image(self, image: Sequence) -> int:
        return self._by_image[la.normalize(image)]

    @cached_property
    def _by_image(self) -> dict:
        return {e.image: k for k, e in enumerate(self.entries)}

    def poincare_counts(self) -> list[int]:
        """Number of representatives of each length."""
        top = max(e.length for e in self.entries)
        counts = [0] * (top + 1)
        for e in self.entries:
            counts[e.length] += 1
        return counts


def kostant_representatives(datum: RootDatum, mu: Sequence, limit: int | None = None) -> KostantSet:
    """Minimal length representatives of W / Stab_W(mu), found by BFS on W.mu."""
    datum.check_dim(mu)
    mu = la.normalize(mu)
    if not datum.is_dominant(mu):
        raise NotDominant(f"mu = {mu} is not dominant")
    words = _orbit_layers(datum, mu, limit)
    entries = [KostantEntry(WeylElement(datum, w), y) for y, w in words.items()]
    entries.sort(key=lambda e: (e.length, e.representative.reduced_word))
    return KostantSet(mu, tuple(entries))


@dataclass(frozen=True)
class GaloisOrbit:
    members: tuple[int, ...]
    length: int

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def representative(self) -> int:
        return self.members[0]


def conjugate(w: WeylElement, tau: DiagramAutomorphism) -> tuple:
    """Matrix of tau w tau^{-1}."""
    return la.mat_mul(tau.matrix, la.mat_mul(w.matrix, la.inverse(tau.matrix)))


def galois_orbits(kset: KostantSet, tau: DiagramAutomorphism) -> list[GaloisOrbit]:
    """Partition W^mu into orbits of w mu -> tau(w mu), sorted by least member."""
    if tau.apply(kset.mu) != kset.mu:
        raise MuNotGaloisStable(f"tau(mu) = {tau.apply(kset.mu)} differs from mu = {kset.mu}")
    seen: set[int] = set()
    orbits = []
    for k, e in enumerate(kset.entries):
        if k in seen:
            continue
        members = [k]
        y = tau.apply(e.image)
        while y != e.image:
            members.append(kset.index_of_image(y))
            y = tau.apply(y)
        lengths = {kset.entries[m].length for m in members}
        if len(lengths) != 1:
            raise OrbitInconsistency(f"Galois orbit {sorted(members)} mixes lengths {sorted(lengths)}")
        seen.update(members)
        orbits.append(GaloisOrbit(tuple(sorted(members)), lengths.pop()))
    return orbits
