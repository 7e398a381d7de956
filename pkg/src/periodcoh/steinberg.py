"""Generalized Steinberg representations in the Grothendieck group, and the Hom/Ext tables.

Subsets of the relative simple roots are frozensets of indices.  Nothing here
computes representation theory: the Ext table transcribes known vanishing and
rank statements, each answer carrying a short note on what licenses it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from math import lcm
from typing import Callable, Iterable, Mapping

from .errors import BadSubset, EvenPrimeUnsupported, UnknownIndex, ValidationError

PRESETS = ("GLnD", "GeneralQuasiSplit")
EXT_VALUES = ("Zero", "FreeRankOne", "HomUnitsOfF", "SelfCase", "OutsideTheorem")


def _as_delta(delta) -> frozenset[int]:
    if isinstance(delta, int):
        return frozenset(range(delta))
    return frozenset(delta)


def subsets(delta) -> list[frozenset[int]]:
    """All subsets of delta, by size and then lexicographically."""
    items = sorted(_as_delta(delta))
    return [frozenset(c) for k in range(len(items) + 1) for c in combinations(items, k)]


class ConstituentVector:
    """Finitely supported Z-combination of classes [v_K]."""

    __slots__ = ("_m",)

    def __init__(self, mults: Mapping[frozenset, int] | None = None):
        self._m = {frozenset(k): v for k, v in (mults or {}).items() if v}

    @property
    def multiplicities(self) -> dict[frozenset, int]:
        return dict(self._m)

    def support(self) -> set[frozenset]:
        return set(self._m)

    def __getitem__(self, key) -> int:
        return self._m.get(frozenset(key), 0)

    def __add__(self, other: "ConstituentVector") -> "ConstituentVector":
        out = dict(self._m)
        for k, v in other._m.items():
            out[k] = out.get(k, 0) + v
        return ConstituentVector(out)

    def __neg__(self) -> "ConstituentVector":
        return ConstituentVector({k: -v for k, v in self._m.items()})

    def __sub__(self, other: "ConstituentVector") -> "ConstituentVector":
        return self + (-other)

    def scale(self, c: int) -> "ConstituentVector":
        return ConstituentVector({k: c * v for k, v in self._m.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, ConstituentVector) and self._m == other._m

    def __hash__(self):
        return hash(frozenset(self._m.items()))

    def __bool__(self) -> bool:
        return bool(self._m)

    def items(self) -> list[tuple[frozenset, int]]:
        return sorted(self._m.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))

    def __repr__(self) -> str:
        body = ", ".join(f"v{sorted(k)}: {v}" for k, v in self.items())
        return f"ConstituentVector({{{body}}})"


def _check_subset(I, delta) -> frozenset[int]:
    I = frozenset(I)
    if not I <= delta:
        raise BadSubset(f"{sorted(I)} is not a subset of {sorted(delta)}")
    return I


def constituents_v(I: Iterable[int], n: int, delta) -> ConstituentVector:
    """v_I with Z/p^n coefficients: the single constituent v_I with multiplicity n."""
    delta = _as_delta(delta)
    return ConstituentVector({_check_subset(I, delta): n})


def constituents_i(I: Iterable[int], n: int, delta) -> ConstituentVector:
    """i_I with Z/p^n coefficients: every v_K with I <= K <= delta, multiplicity n."""
    delta = _as_delta(delta)
    I = _check_subset(I, delta)
    if n < 1:
        raise ValidationError("n must be positive")
    rest = sorted(delta - I)
    out = {}
    for k in range(len(rest) + 1):
        for extra in combinations(rest, k):
            out[I | frozenset(extra)] = n
    return ConstituentVector(out)


def resolution_euler_check(I: Iterable[int], n: int, delta,
                           constituents: Callable = constituents_i) -> bool:
    """Alternating sum over K >= I of (-1)^|K - I| [i_K] equals n [v_I]."""
    delta = _as_delta(delta)
    I = _check_subset(I, delta)
    total = ConstituentVector()
    for K in subsets(delta - I):
        term = constituents(I | K, n, delta)
        total = total + (term if len(K) % 2 == 0 else -term)
    return total == ConstituentVector({I: n})


def hom(I: Iterable[int], J: Iterable[int]) -> str:
    return "RankOne" if frozenset(I) == frozenset(J) else "Zero"


@dataclass(frozen=True)
class ExtAnswer:
    value: str
    torsion_bound: int | None = None
    trail: str = ""

    def __post_init__(self):
        if self.value not in EXT_VALUES:
            raise ValueError(f"unknown Ext value {self.value!r}")

    def label(self) -> str:
        if self.value == "OutsideTheorem":
            bound = "none" if self.torsion_bound is None else str(self.torsion_bound)
            return f"OutsideTheorem(torsion_bound={bound})"
        return self.value


_TRAIL_SELF = "I = J: computed in the literature without hypotheses; not evaluated here"
_TRAIL_ADD_GL = "GL_n(D), D != Q_2, J = I + {alpha}: free of rank one"
_TRAIL_SUB_GL = "GL_n(D), D != Q_2, I = J + {alpha}: isomorphic to Hom(F^*, R)"
_TRAIL_FAR_GL = "GL_n(D), D != Q_2, |I sym J| >= 2: vanishes"
_TRAIL_GL2_FAR = "inner form of GL_n at p = 2, ||I| - |J|| >= 2: vanishes"
_TRAIL_GL2_OPEN = "GL_n(Q_2): this case is not computed"
_TRAIL_ADD = "J = I + {alpha}, p >= 5: free of rank one"
_TRAIL_ADD_OPEN = "J = I + {alpha}, p < 5: mild hypothesis not guaranteed"
_TRAIL_SUB = "I = J + {alpha}, p != 2: reduces to relative rank one, Hom(F^*, R)"
_TRAIL_SUB_OPEN = "I = J + {alpha}, p = 2: relative rank one case not covered"
_TRAIL_FAR5 = "p >= 5, |I sym J| >= 2: vanishes"
_TRAIL_FAR3 = "p = 3, ||I| - |J|| >= 2: vanishes"
_TRAIL_FAR3_OPEN = "p = 3, ||I| - |J|| < 2: not covered; Ext^1 is 3-torsion"
_TRAIL_FAR2_OPEN = "p = 2: not covered; Ext^1 is 8-torsion"


def _check_prime(p: int) -> None:
    if not isinstance(p, int) or p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise ValidationError(f"p = {p!r} is not a prime")


def ext1(I: Iterable[int], J: Iterable[int], p: int, preset: str,
         split_at_2: bool = False) -> ExtAnswer:
    """Ext^1(v_I, v_J) in smooth representations with Z/p^n coefficients.

    ``preset`` is ``GLnD`` (J = GL_n(D), D != Q_2) or ``GeneralQuasiSplit``.
    ``split_at_2`` marks GLnD with D = F = Q_2, i.e. the split group at p = 2,
    where only the inner-form-of-GL_n vanishing statement is available.
    """
    _check_prime(p)
    if preset not in PRESETS:
        raise ValidationError(f"unknown group preset {preset!r}")
    I, J = frozenset(I), frozenset(J)
    if I == J:
        return ExtAnswer("SelfCase", None, _TRAIL_SELF)
    sym = I ^ J
    gap = abs(len(I) - len(J))
    adjacent_up = len(sym) == 1 and I < J
    adjacent_down = len(sym) == 1 and J < I
    if preset == "GLnD":
        if p == 2 and split_at_2:
            if len(sym) >= 2 and gap >= 2:
                return ExtAnswer("Zero", None, _TRAIL_GL2_FAR)
            if len(sym) >= 2:
                return ExtAnswer("OutsideTheorem", 8, _TRAIL_FAR2_OPEN)
            return ExtAnswer("OutsideTheorem", None, _TRAIL_GL2_OPEN)
        if adjacent_up:
            return ExtAnswer("FreeRankOne", None, _TRAIL_ADD_GL)
        if adjacent_down:
            return ExtAnswer("HomUnitsOfF", None, _TRAIL_SUB_GL)
        return ExtAnswer("Zero", None, _TRAIL_FAR_GL)
    if adjacent_up:
        if p >= 5:
            return ExtAnswer("FreeRankOne", None, _TRAIL_ADD)
        return ExtAnswer("OutsideTheorem", None, _TRAIL_ADD_OPEN)
    if adjacent_down:
        if p != 2:
            return ExtAnswer("HomUnitsOfF", None, _TRAIL_SUB)
        return ExtAnswer("OutsideTheorem", None, _TRAIL_SUB_OPEN)
    if p >= 5:
        return ExtAnswer("Zero", None, _TRAIL_FAR5)
    if p == 3:
        if gap >= 2:
            return ExtAnswer("Zero", None, _TRAIL_FAR3)
        return ExtAnswer("OutsideTheorem", 3, _TRAIL_FAR3_OPEN)
    return ExtAnswer("OutsideTheorem", 8, _TRAIL_FAR2_OPEN)


def hom_units_count(p: int, n: int) -> int:
    """|Hom(Q_p^*, Z/p^n)| for odd p, using Q_p^* = Z x Z/(p-1) x Z_p."""
    _check_prime(p)
    if p == 2:
        raise EvenPrimeUnsupported("Q_2^* has a different structure; not evaluated")
    if n < 1:
        raise ValidationError("n must be positive")
    return p ** (2 * n)


# Centers of the simply connected covers for the relative rank two Tits indices.
# A descriptor is a tuple of cyclic orders; () is the trivial group.
_TITS = [
    (("2A_{3,2}^{(1)}", "2D_{3,2}^{(1)}"), (4,), ()),
    (("2A_{4,2}^{(1)}",), (5,), ()),
    (("2A_{5,2}^{(1)}",), (6,), (2,)),
    (("B_{2,2}", "C_{2,2}^{(1)}"), (2,), ()),
    (("B_{3,2}",), (2,), (2,)),
    (("C_{4,2}^{(2)}",), (2,), (2, 2)),
    (("C_{5,2}^{(2)}",), (2,), (2, 2, 2)),
    (("1D_{4,2}^{(1)}", "1D_{4,2}^{(2)}"), (2, 2), (2, 2)),
    (("1D_{7,2}^{(2)}",), (4,), (2, 2, 4)),
    (("2D_{5,2}^{(2)}",), (4,), (2, 2)),
    (("2D_{6,2}^{(2)}",), (2, 2), (2, 2, 2, 2)),
    (("3D_{4,2}^2", "6D_{4,2}^2"), (2, 2), ()),
    (("1E_{6,2}^{16}",), (3,), (3, 3)),
    (("G_{2,2}^0",), (), ()),
]
TITS_FAMILY = "1A_{3d-1,2}^{(d)}"
_TITS_INDEX = {name: (gsc, zsc) for names, gsc, zsc in _TITS for name in names}
_TYPE_A_RE = re.compile(r"1A_\{(\d+),2\}\^\{\((\d+)\)\}")


def tits_names() -> list[str]:
    return [TITS_FAMILY] + [n for names, _, _ in _TITS for n in names]


def _canon_name(name: str) -> str:
    return name.strip().replace("−", "-").replace(" ", "")


def tits_table_lookup(name: str) -> tuple[tuple, tuple]:
    """(center of G_sc, center of Z_sc) for a relative rank two Tits index.

    The type A family is parametric: ``1A_{3d-1,2}^{(d)}`` itself returns
    symbolic orders, while a concrete ``1A_{5,2}^{(2)}`` returns numbers.
    """
    key = _canon_name(name)
    if key in _TITS_INDEX:
        return _TITS_INDEX[key]
    if key == TITS_FAMILY:
        return ("3d",), ("d", "d", "d")
    m = _TYPE_A_RE.fullmatch(key)
    if m:
        rank, d = int(m.group(1)), int(m.group(2))
        if d >= 1 and rank == 3 * d - 1:
            return (3 * d,), (d, d, d)
    raise UnknownIndex(f"no relative rank two Tits index named {name!r}")


def format_group(desc: tuple) -> str:
    """Render a descriptor, e.g. (2, 2) -> 'mu_2 x mu_2' and () -> '1'."""
    if not desc:
        return "1"
    return " x ".join(f"mu_{k}" for k in desc)


def exponent(desc: tuple) -> int:
    """Exponent of a product of numeric cyclic groups."""
    return lcm(*desc) if desc else 1
