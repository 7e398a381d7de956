"""Exact based root data for products of classical, exceptional, GL and torus factors.

Characters and cocharacters both live in Q^N (N = ambient rank) and the
canonical pairing is the coordinate dot product.  Realizations:

* ``GL_n``: Z^n with roots e_i - e_{i+1}.
* ``B_n``, ``C_n``, ``D_n``: the Euclidean lattices of SO(2n+1), Sp(2n), SO(2n).
* ``A_n`` and the exceptional types: the coroot lattice, simple coroots being
  the standard basis (simply connected form).
* ``Torus_k``: Z^k with no roots.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import _linalg as la
from .errors import DimensionMismatch, InvalidAutomorphism, InvalidCartanSpec

FAMILIES = ("A", "B", "C", "D", "E6", "E7", "E8", "F4", "G2", "GL", "Torus")
SEMISIMPLE = ("A", "B", "C", "D", "E6", "E7", "E8", "F4", "G2")
_FIXED_RANK = {"E6": 6, "E7": 7, "E8": 8, "F4": 4, "G2": 2}
_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3, "GL": 1, "Torus": 1}

NORMALIZATIONS = ("standard",)


@dataclass(frozen=True)
class CartanSpec:
    factors: tuple[tuple[str, int], ...]

    def __post_init__(self):
        if not self.factors:
            raise InvalidCartanSpec("at least one factor is required")
        for fam, rank in self.factors:
            if fam not in FAMILIES:
                raise InvalidCartanSpec(f"unknown family {fam!r}")
            if not isinstance(rank, int) or rank < 1:
                raise InvalidCartanSpec(f"rank must be a positive integer, got {rank!r}")
            if fam in _FIXED_RANK and rank != _FIXED_RANK[fam]:
                raise InvalidCartanSpec(f"{fam} has rank {_FIXED_RANK[fam]}, got {rank}")
            if rank < _MIN_RANK.get(fam, 1):
                raise InvalidCartanSpec(f"{fam} needs rank >= {_MIN_RANK[fam]}, got {rank}")

    def __str__(self) -> str:
        parts = []
        for fam, rank in self.factors:
            parts.append(fam if fam in _FIXED_RANK else f"{fam}{rank}")
        return "x".join(parts)


_FACTOR_RE = re.compile(r"^(GL|Torus|T|E6|E7|E8|F4|G2|A|B|C|D)(\d*)$")


def parse_cartan_spec(text: str) -> CartanSpec:
    """Parse strings such as ``"GL4"``, ``"B10"``, ``"A2xA1"``, ``"GL3xTorus1"``."""
    if not isinstance(text, str) or not text.strip():
        raise InvalidCartanSpec("empty group string")
    factors = []
    for token in text.strip().split("x"):
        m = _FACTOR_RE.match(token.strip())
        if not m:
            raise InvalidCartanSpec(f"cannot parse factor {token!r}")
        fam, digits = m.groups()
        if fam == "T":
            fam = "Torus"
        if fam in _FIXED_RANK:
            if digits:
                raise InvalidCartanSpec(f"unexpected rank suffix on {fam}")
            rank = _FIXED_RANK[fam]
        else:
            if not digits:
                raise InvalidCartanSpec(f"missing rank on {fam}")
            rank = int(digits)
        factors.append((fam, rank))
    return CartanSpec(tuple(factors))


def _chain(n: int, edges: Sequence[tuple[int, int]]) -> list[list[int]]:
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        a[i][j] = a[j][i] = -1
    return a


def standard_cartan_matrix(family: str, rank: int) -> list[list[int]]:
    """Cartan matrix with entries a[i][j] = <alpha_j, alpha_i^vee> (Bourbaki numbering)."""
    if family == "A":
        return _chain(rank, [(i, i + 1) for i in range(rank - 1)])
    if family == "B":
        a = _chain(rank, [(i, i + 1) for i in range(rank - 1)])
        a[rank - 1][rank - 2] = -2
        return a
    if family == "C":
        a = _chain(rank, [(i, i + 1) for i in range(rank - 1)])
        a[rank - 2][rank - 1] = -2
        return a
    if family == "D":
        return _chain(rank, [(i, i + 1) for i in range(rank - 2)] + [(rank - 3, rank - 1)])
    if family in ("E6", "E7", "E8"):
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, rank - 1)]
        return _chain(rank, edges)
    if family == "F4":
        return [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]]
    if family == "G2":
        return [[2, -1], [-3, 2]]
    raise InvalidCartanSpec(f"no Cartan matrix for {family}")


def is_finite_type_cartan(a: Sequence[Sequence[int]]) -> bool:
    """Generalized Cartan matrix check plus positive definiteness of a symmetrization."""
    n = len(a)
    for i in range(n):
        if a[i][i] != 2:
            return False
        for j in range(n):
            if i != j:
                if a[i][j] > 0 or (a[i][j] == 0) != (a[j][i] == 0):
                    return False
    # d_i a_ij = d_j a_ji, propagated along the Dynkin graph
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i != j and a[i][j] != 0:
                    want = d[i] * a[i][j] / a[j][i]
                    if d[j] is None:
                        d[j] = want
                        stack.append(j)
                    elif d[j] != want:
                        return False
    sym = [[d[i] * a[i][j] for j in range(n)] for i in range(n)]
    return all(la.det([row[:k] for row in sym[:k]]) > 0 for k in range(1, n + 1))


def _local_realization(family: str, rank: int):
    """(ambient_dim, simple_roots, simple_coroots) in local coordinates."""
    def e(i, n):
        return tuple(1 if k == i else 0 for k in range(n))

    if family == "Torus":
        return rank, [], []
    if family == "GL":
        roots = [la.vsub(e(i, rank), e(i + 1, rank)) for i in range(rank - 1)]
        return rank, roots, list(roots)
    if family in ("B", "C", "D"):
        n = rank
        roots = [la.vsub(e(i, n), e(i + 1, n)) for i in range(n - 1)]
        coroots = list(roots)
        if family == "B":
            roots.append(e(n - 1, n))
            coroots.append(la.vscale(2, e(n - 1, n)))
        elif family == "C":
            roots.append(la.vscale(2, e(n - 1, n)))
            coroots.append(e(n - 1, n))
        else:
            last = la.vadd(e(n - 2, n), e(n - 1, n))
            roots.append(last)
            coroots.append(last)
        return n, roots, coroots
    a = standard_cartan_matrix(family, rank)
    roots = [tuple(a[k][j] for k in range(rank)) for j in range(rank)]
    coroots = [e(j, rank) for j in range(rank)]
    return rank, roots, coroots


def _weyl_order(family: str, rank: int) -> int:
    if family in ("A",):
        return math.factorial(rank + 1)
    if family in ("B", "C"):
        return 2 ** rank * math.factorial(rank)
    if family == "D":
        return 2 ** (rank - 1) * math.factorial(rank)
    if family == "GL":
        return math.factorial(rank)
    if family == "Torus":
        return 1
    return {"E6": 51840, "E7": 2903040, "E8": 696729600, "F4": 1152, "G2": 12}[family]


def _root_closure(cartan: Sequence[Sequence[int]]):
    """All (root, coroot) pairs in simple-root / simple-coroot coordinates.

    Closes the simple roots under the simple reflections, moving each root
    together with its coroot.  Returns the positive pairs sorted by height.
    """
    r = len(cartan)
    start = []
    for i in range(r):
        unit = tuple(1 if k == i else 0 for k in range(r))
        start.append((unit, unit))
    seen = {s[0]: s[1] for s in start}
    frontier = list(start)
    while frontier:
        nxt = []
        for beta, cobeta in frontier:
            for j in range(r):
                c = sum(beta[i] * cartan[j][i] for i in range(r))
                d = sum(cobeta[i] * cartan[i][j] for i in range(r))
                nb = tuple(b - (c if k == j else 0) for k, b in enumerate(beta))
                ncb = tuple(b - (d if k == j else 0) for k, b in enumerate(cobeta))
                if nb not in seen:
                    seen[nb] = ncb
                    nxt.append((nb, ncb))
        frontier = nxt
    positive = []
    for beta, cobeta in seen.items():
        if all(x >= 0 for x in beta):
            positive.append((beta, cobeta))
        elif not all(x <= 0 for x in beta):
            raise InvalidCartanSpec(f"root {beta} is neither positive nor negative")
    positive.sort(key=lambda p: (sum(p[0]), p[0]))
    return positive


@dataclass(frozen=True)
class Factor:
    family: str
    rank: int
    offset: int          # first ambient coordinate
    dim: int             # ambient coordinates owned by this factor
    first_root: int      # global index of the first simple root
    n_roots: int
    scale: Fraction

    @property
    def coords(self) -> range:
        return range(self.offset, self.offset + self.dim)

    @property
    def roots(self) -> range:
        return range(self.first_root, self.first_root + self.n_roots)

    @property
    def is_semisimple(self) -> bool:
        return self.family in SEMISIMPLE


@dataclass(frozen=True, eq=False)
class RootDatum:
    spec: CartanSpec
    factors: tuple[Factor, ...]
    ambient_rank: int
    simple_roots: tuple[tuple, ...]
    simple_coroots: tuple[tuple, ...]
    positive_roots: tuple[tuple, ...]
    positive_coroots: tuple[tuple, ...]
    cartan_matrix: tuple[tuple[int, ...], ...]
    fundamental_coweights: tuple[tuple, ...]
    inner_product_matrix: tuple[tuple, ...]
    central_basis: tuple[tuple, ...]
    normalization: str = "standard"
    _refl: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(f"a{i + 1}" for i in range(self.rank))

    @property
    def scales(self) -> tuple[Fraction, ...]:
        return tuple(f.scale for f in self.factors)

    @cached_property
    def weyl_order(self) -> int:
        return math.prod(_weyl_order(f.family, f.rank) for f in self.factors)

    def check_dim(self, v: Sequence) -> None:
        if len(v) != self.ambient_rank:
            raise DimensionMismatch(f"expected length {self.ambient_rank}, got {len(v)}")

    def reflect(self, i: int, lam: Sequence) -> tuple:
        """s_i(lam) = lam - <alpha_i, lam> alpha_i^vee on cocharacters."""
        c = la.dot(self.simple_roots[i], lam)
        if c == 0:
            return tuple(lam)
        return tuple(x - c * y for x, y in zip(lam, self.simple_coroots[i]))

    def reflect_character(self, i: int, chi: Sequence) -> tuple:
        c = la.dot(chi, self.simple_coroots[i])
        if c == 0:
            return tuple(chi)
        return tuple(x - c * y for x, y in zip(chi, self.simple_roots[i]))

    def reflection_matrix(self, i: int) -> tuple:
        if i not in self._refl:
            a, av = self.simple_roots[i], self.simple_coroots[i]
            n = self.ambient_rank
            self._refl[i] = tuple(
                tuple((1 if r == c else 0) - av[r] * a[c] for c in range(n)) for r in range(n)
            )
        return self._refl[i]

    def is_dominant(self, lam: Sequence) -> bool:
        return all(la.dot(a, lam) >= 0 for a in self.simple_roots)

    def is_central(self, lam: Sequence) -> bool:
        return all(la.dot(a, lam) == 0 for a in self.simple_roots)

    def make_dominant(self, lam: Sequence) -> tuple:
        lam = tuple(lam)
        while True:
            for i, a in enumerate(self.simple_roots):
                if la.dot(a, lam) < 0:
                    lam = self.reflect(i, lam)
                    break
            else:
                return lam

    def central_projection(self, lam: Sequence) -> tuple:
        """P-orthogonal projection of lam onto the central cocharacter space."""
        z = self.central_basis
        if not z:
            return (0,) * self.ambient_rank
        gram = [[inner_product(self, a, b) for b in z] for a in z]
        rhs = [inner_product(self, a, lam) for a in z]
        coeffs = la.solve(gram, rhs)
        out = [Fraction(0)] * self.ambient_rank
        for c, v in zip(coeffs, z):
            out = [o + c * x for o, x in zip(out, v)]
        return la.normalize(out)

    def simple_coroot_coordinates(self, lam: Sequence) -> tuple | None:
        """Coefficients of lam in the simple coroots, or None if lam is not in their span."""
        cols = la.transpose(self.simple_coroots) if self.simple_coroots else ()
        if not self.simple_coroots:
            return () if not any(lam) else None
        return la.solve(cols, tuple(lam))


def _killing_form(dim: int, pos_roots: Sequence[Sequence]) -> list[list[Fraction]]:
    k = [[Fraction(0)] * dim for _ in range(dim)]
    for b in pos_roots:
        for i in range(dim):
            if b[i]:
                for j in range(dim):
                    k[i][j] += b[i] * b[j]
    return k


def build_root_datum(spec: CartanSpec | str, normalization: str = "standard",
                     scales: Sequence | None = None) -> RootDatum:
    """Assemble the block-diagonal root datum of a product of factors.

    ``scales`` multiplies the invariant form of each factor by a positive
    rational; the default normalization gives short coroots squared length 2
    (identity form on GL and torus factors).
    """
    if isinstance(spec, str):
        spec = parse_cartan_spec(spec)
    if normalization not in NORMALIZATIONS:
        raise InvalidCartanSpec(f"unknown normalization {normalization!r}")
    if scales is None:
        scales = [1] * len(spec.factors)
    if len(scales) != len(spec.factors):
        raise InvalidCartanSpec("one scale per factor is required")
    scales = [Fraction(s) for s in scales]
    if any(s <= 0 for s in scales):
        raise InvalidCartanSpec("scales must be positive")

    locals_ = [_local_realization(f, r) for f, r in spec.factors]
    N = sum(l[0] for l in locals_)
    factors = []
    simple_roots, simple_coroots = [], []
    pos_roots, pos_coroots, coweights = [], [], []
    p_blocks, central = [], []
    cartan_blocks = []
    off = 0
    for (fam, rk), (dim, roots, coroots), scale in zip(spec.factors, locals_, scales):
        factors.append(Factor(fam, rk, off, dim, len(simple_roots), len(roots), scale))

        def embed(v, off=off, dim=dim):
            return (0,) * off + tuple(v) + (0,) * (N - off - dim)

        r = len(roots)
        cart = [[la.dot(roots[j], coroots[i]) for j in range(r)] for i in range(r)]
        cartan_blocks.append(cart)
        if r and not is_finite_type_cartan(cart):
            raise InvalidCartanSpec(f"{fam}{rk}: Cartan matrix is not of finite type")
        local_pos, local_copos = [], []
        for beta, cobeta in _root_closure(cart):
            local_pos.append(tuple(sum(c * roots[i][k] for i, c in enumerate(beta)) for k in range(dim)))
            local_copos.append(tuple(sum(c * coroots[i][k] for i, c in enumerate(cobeta)) for k in range(dim)))
        if r:
            inv = la.inverse(cart)
            for j in range(r):
                w = [Fraction(0)] * dim
                for k in range(r):
                    w = [x + inv[j][k] * y for x, y in zip(w, coroots[k])]
                coweights.append(embed(la.normalize(w)))
        if fam in ("GL", "Torus"):
            block = [[Fraction(1 if i == j else 0) for j in range(dim)] for i in range(dim)]
        else:
            kf = _killing_form(dim, local_pos)
            short = min(la.dot(cb, la.mat_vec(kf, cb)) for cb in local_copos)
            block = [[2 * x / short for x in row] for row in kf]
        p_blocks.append(tuple(tuple(la.normalize([scale * x for x in row])) for row in block))
        for z in la.nullspace([list(a) for a in roots], ncols=dim) if roots else la.nullspace([], ncols=dim):
            central.append(embed(z))
        simple_roots += [embed(a) for a in roots]
        simple_coroots += [embed(a) for a in coroots]
        pos_roots += [embed(a) for a in local_pos]
        pos_coroots += [embed(a) for a in local_copos]
        off += dim

    R = len(simple_roots)
    cartan = [[0] * R for _ in range(R)]
    for f, cart in zip(factors, cartan_blocks):
        for i in range(f.n_roots):
            for j in range(f.n_roots):
                cartan[f.first_root + i][f.first_root + j] = cart[i][j]
    return RootDatum(
        spec=spec,
        factors=tuple(factors),
        ambient_rank=N,
        simple_roots=tuple(simple_roots),
        simple_coroots=tuple(simple_coroots),
        positive_roots=tuple(pos_roots),
        positive_coroots=tuple(pos_coroots),
        cartan_matrix=tuple(tuple(r) for r in cartan),
        fundamental_coweights=tuple(coweights),
        inner_product_matrix=la.block_diag(p_blocks),
        central_basis=tuple(central),
        normalization=normalization,
    )


def pairing(datum: RootDatum, chi: Sequence, lam: Sequence) -> Fraction:
    """Canonical pairing <chi, lam> of a character with a cocharacter."""
    datum.check_dim(chi)
    datum.check_dim(lam)
    return Fraction(la.dot(chi, lam))


def inner_product(datum: RootDatum, lam: Sequence, lam2: Sequence) -> Fraction:
    datum.check_dim(lam)
    datum.check_dim(lam2)
    return Fraction(la.dot(lam, la.mat_vec(datum.inner_product_matrix, lam2)))


@dataclass(frozen=True)
class DiagramAutomorphism:
    """A pinned automorphism: permutation of simple roots plus its lattice action on X_*(T)."""

    perm: tuple[int, ...]
    order: int
    matrix: tuple[tuple[int, ...], ...]

    def apply(self, lam: Sequence) -> tuple:
        return la.normalize(la.mat_vec(self.matrix, lam))

    def power(self, k: int) -> "DiagramAutomorphism":
        m = la.identity(len(self.matrix))
        perm = tuple(range(len(self.perm)))
        for _ in range(k % self.order):
            m = la.mat_mul(self.matrix, m)
            perm = tuple(self.perm[p] for p in perm)
        return DiagramAutomorphism(perm, self.order, m)

    @property
    def is_identity(self) -> bool:
        return self.matrix == la.identity(len(self.matrix))


def identity_automorphism(datum: RootDatum) -> DiagramAutomorphism:
    return DiagramAutomorphism(tuple(range(datum.rank)), 1, la.identity(datum.ambient_rank))


def torus_coordinates(datum: RootDatum) -> list[int]:
    """Ambient coordinates of factors without roots (tori and GL_1)."""
    out = []
    for f in datum.factors:
        if f.n_roots == 0:
            out.extend(f.coords)
    return out


def diagram_automorphism(datum: RootDatum, perm: Sequence[int], gl_mode: str = "auto",
                         torus_perm: Sequence[int] | None = None) -> DiagramAutomorphism:
    """Lift a Cartan-preserving permutation of the simple roots to the cocharacter lattice.

    Semisimple factors are mapped by sending simple coroots to simple coroots.
    On a GL_n factor the lift is either a plain block copy (``same``) or
    lambda -> -w_0(lambda) (``dual``, the quasi-split unitary action); ``auto``
    reads the choice off the permutation and falls back to ``same`` for GL_2.
    ``torus_perm`` permutes the coordinates listed by :func:`torus_coordinates`.
    """
    perm = tuple(perm)
    R = datum.rank
    if sorted(perm) != list(range(R)):
        raise InvalidAutomorphism("perm must be a permutation of the simple roots")
    cm = datum.cartan_matrix
    for i in range(R):
        for j in range(R):
            if cm[perm[i]][perm[j]] != cm[i][j]:
                raise InvalidAutomorphism("permutation does not preserve the Cartan matrix")
    if gl_mode not in ("auto", "same", "dual"):
        raise InvalidAutomorphism(f"unknown gl_mode {gl_mode!r}")
    N = datum.ambient_rank
    M = [[0] * N for _ in range(N)]

    def owner(root_index):
        return next(f for f in datum.factors if root_index in f.roots)

    for f in datum.factors:
        if f.n_roots == 0:
            continue
        targets = {owner(perm[i]) for i in f.roots}
        if len(targets) != 1:
            raise InvalidAutomorphism("a factor must map onto a single factor")
        g = targets.pop()
        if (g.family, g.rank) != (f.family, f.rank):
            raise InvalidAutomorphism("factor mapped onto a non-isomorphic factor")
        local = [perm[i] - g.first_root for i in f.roots]
        if f.family == "GL":
            n = f.rank
            straight = local == list(range(n - 1))
            flipped = local == list(range(n - 2, -1, -1))
            mode = gl_mode
            if mode == "auto":
                mode = "same" if straight else "dual"
            if (mode == "same" and not straight) or (mode == "dual" and not flipped):
                raise InvalidAutomorphism(f"GL{n} block cannot realize this permutation in mode {mode}")
            for k in range(n):
                if mode == "same":
                    M[g.offset + k][f.offset + k] = 1
                else:
                    M[g.offset + n - 1 - k][f.offset + k] = -1
            continue
        cf = [[datum.simple_coroots[i][c] for i in f.roots] for c in f.coords]
        cg = [[datum.simple_coroots[perm[i]][c] for i in f.roots] for c in g.coords]
        block = la.mat_mul(cg, la.inverse(cf))
        if not la.is_integral(block):
            raise InvalidAutomorphism(f"{f.family}{f.rank}: automorphism does not preserve X_*(T)")
        for r, row in enumerate(block):
            for c, x in enumerate(row):
                M[g.offset + r][f.offset + c] = int(x)

    tcoords = torus_coordinates(datum)
    if torus_perm is None:
        torus_perm = range(len(tcoords))
    torus_perm = list(torus_perm)
    if sorted(torus_perm) != list(range(len(tcoords))):
        raise InvalidAutomorphism("torus_perm must permute the torus coordinates")
    for k, t in enumerate(torus_perm):
        M[tcoords[t]][tcoords[k]] = 1

    matrix = tuple(tuple(r) for r in M)
    if la.rank(matrix) != N:
        raise InvalidAutomorphism("lattice action is not invertible")
    P = datum.inner_product_matrix
    if la.mat_mul(la.transpose(matrix), la.mat_mul(P, matrix)) != tuple(tuple(r) for r in P):
        raise InvalidAutomorphism("automorphism does not preserve the invariant inner product")
    pos = set(map(la.normalize, datum.positive_coroots))
    for cb in datum.positive_coroots:
        if la.normalize(la.mat_vec(matrix, cb)) not in pos:
            raise InvalidAutomorphism("automorphism does not preserve positive coroots")
    order, power = 1, matrix
    ident = la.identity(N)
    while power != ident:
        power = la.mat_mul(matrix, power)
        order += 1
        if order > 10_000:
            raise InvalidAutomorphism("automorphism has no finite order")
    return DiagramAutomorphism(perm, order, matrix)
