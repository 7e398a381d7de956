"""Local Shtuka data: validation, the relative root data of J, and per-orbit invariants.

A datum is built from a plain description (a dict in the datum-file layout)
so it can be rebuilt verbatim, e.g. under a rescaled inner product::

    {"preset": "drinfeld:2"}
    {"group": "GL4", "galois": "(a1 a3)", "mu": [1, 0, 0, -1], "nu": [0, 0, 0, 0],
     "j": {"delta": [[...], ...], "omega": [[...], ...]}}
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Mapping, Sequence

from . import _linalg as la
from .errors import (
    BadSubset,
    DenominatorNotDividing,
    DualBasisViolation,
    EmptyPeriodDomain,
    GaloisIncompatible,
    InvalidAutomorphism,
    InvalidMu,
    NotBasic,
    NotDominant,
    OrbitInconsistency,
    ValidationError,
)
from .isocrystal import NewtonVector, is_acceptable, is_basic
from .rootdata import (
    DiagramAutomorphism,
    RootDatum,
    build_root_datum,
    diagram_automorphism,
    identity_automorphism,
    inner_product,
    parse_cartan_spec,
    torus_coordinates,
)
from .weyl import GaloisOrbit, KostantSet, galois_orbits, kostant_representatives


@dataclass(frozen=True)
class RelativeRootData:
    delta_J: tuple[tuple, ...]
    omega: tuple[tuple, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        if not (len(self.delta_J) == len(self.omega) == len(self.labels)):
            raise DualBasisViolation("delta_J, omega and labels must have equal length")

    def __len__(self) -> int:
        return len(self.delta_J)

    @property
    def indices(self) -> frozenset[int]:
        return frozenset(range(len(self.delta_J)))


def _default_labels(r: int) -> tuple[str, ...]:
    return tuple(f"a{i + 1}" for i in range(r))


def canonical_omega(g: RootDatum, delta: Sequence[Sequence]) -> tuple[tuple, ...]:
    """The dual basis to ``delta`` inside the P-dual span of ``delta``.

    omega = P^{-1} R^T (R P^{-1} R^T)^{-1}, column j being omega_j.  When the
    characters kill the center this basis is P-orthogonal to it.
    """
    if not delta:
        return ()
    pinv = la.inverse(g.inner_product_matrix)
    rt = la.transpose(delta)
    gram = la.mat_mul(delta, la.mat_mul(pinv, rt))
    cols = la.mat_mul(la.mat_mul(pinv, rt), la.inverse(gram))
    return tuple(la.normalize(c) for c in la.transpose(cols))


def relative_data_from_galois(g: RootDatum, tau: DiagramAutomorphism) -> RelativeRootData:
    """Relative simple roots of the quasi-split group itself: tau-orbits on the simple roots.

    Each orbit gives the average of its roots as a character and the sum of
    the corresponding fundamental coweights as omega.
    """
    seen: set[int] = set()
    delta, omega, labels = [], [], []
    for i in range(g.rank):
        if i in seen:
            continue
        orb = [i]
        k = tau.perm[i]
        while k != i:
            orb.append(k)
            k = tau.perm[k]
        orb.sort()
        seen.update(orb)
        chi = (0,) * g.ambient_rank
        w = (0,) * g.ambient_rank
        for k in orb:
            chi = la.vadd(chi, g.simple_roots[k])
            w = la.vadd(w, g.fundamental_coweights[k])
        delta.append(la.normalize(la.vscale(Fraction(1, len(orb)), chi)))
        omega.append(la.normalize(w))
        labels.append("".join(g.labels[k] for k in orb))
    return RelativeRootData(tuple(delta), tuple(omega), tuple(labels))


def derive_J_gln(n: int, nu: NewtonVector | Sequence) -> RelativeRootData:
    """Relative root data of J = GL_{n/m}(D) for the basic slope lambda = k/m."""
    slopes = nu.slopes if isinstance(nu, NewtonVector) else la.normalize(nu)
    if len(slopes) != n:
        raise InvalidMu(f"nu has length {len(slopes)}, expected {n}")
    if not is_basic(NewtonVector(tuple(slopes))):
        raise NotBasic(f"nu = {tuple(slopes)} is not constant")
    lam = Fraction(slopes[0])
    m = lam.denominator
    if n % m:
        raise DenominatorNotDividing(f"denominator {m} of {lam} does not divide {n}")
    blocks = n // m
    delta, omega = [], []
    for j in range(blocks - 1):
        chi = [Fraction(0)] * n
        for k in range(m):
            chi[j * m + k] = Fraction(1, m)
            chi[(j + 1) * m + k] = Fraction(-1, m)
        delta.append(la.normalize(chi))
        filled = (j + 1) * m
        w = [Fraction(1 if k < filled else 0) - Fraction(filled, n) for k in range(n)]
        omega.append(la.normalize(w))
    return RelativeRootData(tuple(delta), tuple(omega), _default_labels(blocks - 1))


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_galois(g: RootDatum, text: str | None, gl_mode: str = "auto") -> DiagramAutomorphism:
    """Cycle notation on simple-root labels ``a1..`` and torus coordinates ``t1..``."""
    if not text or not text.strip():
        return identity_automorphism(g)
    if _CYCLE_RE.sub("", text).strip():
        raise InvalidAutomorphism(f"cannot parse cycles {text!r}")
    perm = list(range(g.rank))
    tcount = len(torus_coordinates(g))
    tperm = list(range(tcount))
    for body in _CYCLE_RE.findall(text):
        items = body.replace(",", " ").split()
        if len(set(items)) != len(items):
            raise InvalidAutomorphism(f"repeated label in cycle ({body})")
        kinds = {x[:1] for x in items}
        if len(kinds) > 1:
            raise InvalidAutomorphism(f"cycle ({body}) mixes roots and torus coordinates")
        idx = []
        for x in items:
            m = re.fullmatch(r"([at])(\d+)", x)
            if not m:
                raise InvalidAutomorphism(f"unknown label {x!r}")
            k = int(m.group(2)) - 1
            limit = g.rank if m.group(1) == "a" else tcount
            if not 0 <= k < limit:
                raise InvalidAutomorphism(f"label {x!r} out of range")
            idx.append(k)
        target = perm if items and items[0][0] == "a" else tperm
        for a, b in zip(idx, idx[1:] + idx[:1]):
            target[a] = b
    return diagram_automorphism(g, perm, gl_mode=gl_mode, torus_perm=tperm)


def _frac_vector(v: Sequence) -> tuple:
    try:
        return la.normalize(Fraction(x) for x in v)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"cannot read rational vector {v!r}") from exc


def _int_vector(v: Sequence) -> tuple:
    out = _frac_vector(v)
    if not la.is_integral(out):
        raise InvalidMu(f"mu = {v!r} must be integral")
    return out


@dataclass(frozen=True, eq=False)
class LocalShtukaDatum:
    g: RootDatum
    tau: DiagramAutomorphism
    s: int
    mu: tuple
    nu: tuple
    j: RelativeRootData
    provenance: str
    name: str
    description: Mapping[str, Any] = field(repr=False)

    @cached_property
    def kset(self) -> KostantSet:
        return kostant_representatives(self.g, self.mu)

    @cached_property
    def orbits(self) -> list[GaloisOrbit]:
        return galois_orbits(self.kset, self.tau)

    @property
    def dim_F(self) -> int:
        return max(e.length for e in self.kset.entries)

    @property
    def delta(self) -> frozenset[int]:
        return self.j.indices

    def check_subset(self, I) -> frozenset[int]:
        I = frozenset(I)
        if not I <= self.delta:
            raise BadSubset(f"{sorted(I)} is not a subset of the relative simple roots")
        return I

    def labels_of(self, I) -> list[str]:
        return [self.j.labels[k] for k in sorted(I)]

    def rescaled(self, scales: Sequence) -> "LocalShtukaDatum":
        return build_datum(self.description, scales=scales)


@dataclass(frozen=True)
class OrbitInvariant:
    orbit_id: int
    orbit: GaloisOrbit
    I: frozenset
    n: int

    @property
    def length(self) -> int:
        return self.orbit.length


def _pairing_set(datum: LocalShtukaDatum, image: Sequence, omegas=None) -> frozenset[int]:
    omegas = datum.j.omega if omegas is None else omegas
    diff = la.vsub(image, datum.nu)
    return frozenset(k for k, w in enumerate(omegas) if inner_product(datum.g, diff, w) <= 0)


def i_set(datum: LocalShtukaDatum, image: Sequence, omegas=None) -> frozenset[int]:
    """{alpha in Delta_J : P(w mu - nu, omega_alpha) <= 0} for the given image w mu."""
    return _pairing_set(datum, image, omegas)


def orbit_invariants(datum: LocalShtukaDatum) -> list[OrbitInvariant]:
    out = []
    r = len(datum.j)
    for oid, orb in enumerate(datum.orbits):
        sets = {i_set(datum, datum.kset.entries[m].image) for m in orb.members}
        if len(sets) != 1:
            raise OrbitInconsistency(f"orbit {oid} members disagree on I: {sorted(map(sorted, sets))}")
        I = sets.pop()
        out.append(OrbitInvariant(oid, orb, I, 2 * orb.length + r - len(I)))
    return out


def _validate(g, tau, mu, nu, j) -> None:
    if not g.is_dominant(mu):
        raise NotDominant(f"mu = {mu} is not dominant")
    if not g.is_central(nu):
        raise NotBasic(f"nu = {nu} is not basic (some root pairs nonzero with it)")
    if tau.apply(mu) != mu:
        raise GaloisIncompatible(f"tau moves mu = {mu}")
    if tau.apply(nu) != nu:
        raise GaloisIncompatible(f"tau moves nu = {nu}")
    for lab, w in zip(j.labels, j.omega):
        if tau.apply(w) != la.normalize(w):
            raise GaloisIncompatible(f"tau moves omega_{lab}")
    for a, chi in enumerate(j.delta_J):
        g.check_dim(chi)
        for b, w in enumerate(j.omega):
            g.check_dim(w)
            if la.dot(chi, w) != (1 if a == b else 0):
                raise DualBasisViolation(f"<{j.labels[a]}, omega_{j.labels[b]}> = {la.dot(chi, w)}")
    for lab, w in zip(j.labels, j.omega):
        for z in g.central_basis:
            if inner_product(g, w, z) != 0:
                raise DualBasisViolation(f"omega_{lab} is not P-orthogonal to the center")
    if not is_acceptable(g, nu, mu, tau):
        raise EmptyPeriodDomain(
            f"period domain is empty: nu = {nu} is not <= the Galois average of mu = {mu} "
            "(nonemptiness criterion)"
        )


def _split_tokens(args: str) -> list[str]:
    return [t for t in re.split(r"[:,]", args) if t != ""]


def preset_description(text: str) -> dict:
    """Expand ``name:args`` into a full datum description."""
    name, _, args = text.strip().partition(":")
    if name == "drinfeld":
        d = int(args)
        if d < 1:
            raise ValidationError("drinfeld needs d >= 1")
        return {"group": f"GL{d + 1}", "mu": [d] + [-1] * d, "nu": [0] * (d + 1)}
    if name == "gln_basic":
        toks = _split_tokens(args)
        if not toks:
            raise ValidationError("gln_basic needs n, mu and lambda")
        n = int(toks[0])
        if len(toks) != n + 2:
            raise ValidationError(f"gln_basic:{args} needs n, then {n} entries of mu, then lambda")
        lam = Fraction(toks[-1])
        return {"group": f"GL{n}", "mu": [int(x) for x in toks[1:n + 1]], "nu": [str(lam)] * n}
    if name == "quadric":
        n = int(args)
        if n < 5:
            raise ValidationError("quadric needs n >= 5")
        m = n // 2
        group = f"B{m}" if n % 2 else f"D{m}"
        return {"group": group, "mu": [1] + [0] * (m - 1), "nu": [0] * m}
    if name in ("split", "quasisplit"):
        parts = args.split(":")
        if len(parts) < 2:
            raise ValidationError(f"{name} needs a group and mu")
        g = build_root_datum(parts[0])
        desc = {"group": parts[0], "mu": [int(x) for x in parts[1].split(",")], "nu": [0] * g.ambient_rank}
        if len(parts) > 2:
            desc["galois"] = parts[2]
        if len(parts) > 3:
            desc["gl_mode"] = parts[3]
        return desc
    raise ValidationError(f"unknown preset {name!r}")


def build_datum(desc: Mapping[str, Any] | str, scales: Sequence | None = None) -> LocalShtukaDatum:
    """Validate a description (or a preset string) and assemble the datum."""
    if isinstance(desc, str):
        desc = {"preset": desc}
    desc = dict(desc)
    provenance = "explicit"
    name = "explicit"
    full = desc
    if "preset" in desc:
        provenance = "preset"
        name = desc["preset"]
        full = preset_description(desc["preset"])
        if "s" in desc:
            full["s"] = desc["s"]
    for key in ("group", "mu", "nu"):
        if key not in full:
            raise ValidationError(f"datum is missing {key!r}")

    spec = parse_cartan_spec(full["group"])
    g = build_root_datum(spec, scales=scales)
    tau = parse_galois(g, full.get("galois"), full.get("gl_mode", "auto"))
    if "order" in full and int(full["order"]) != tau.order:
        raise InvalidAutomorphism(f"declared order {full['order']} differs from {tau.order}")
    s = int(full.get("s", 1))
    if s < 1:
        raise ValidationError("s must be a positive integer")
    mu = _int_vector(full["mu"])
    g.check_dim(mu)
    nu = _frac_vector(full["nu"])
    g.check_dim(nu)

    jdesc = full.get("j")
    if jdesc is not None:
        delta = tuple(_frac_vector(v) for v in jdesc.get("delta", []))
        for chi in delta:
            g.check_dim(chi)
        if "omega" in jdesc:
            omega = tuple(_frac_vector(v) for v in jdesc["omega"])
        else:
            omega = canonical_omega(g, delta)
        labels = tuple(jdesc.get("labels") or _default_labels(len(delta)))
        j = RelativeRootData(delta, omega, labels)
    elif not any(nu):
        j = relative_data_from_galois(g, tau)
    elif len(spec.factors) == 1 and spec.factors[0][0] == "GL" and tau.is_identity:
        j = derive_J_gln(g.ambient_rank, nu)
    else:
        raise ValidationError("an explicit 'j' block is required when nu != 0 outside GL_n")

    _validate(g, tau, mu, nu, j)
    echo = {k: full[k] for k in ("group", "galois", "gl_mode", "s", "mu", "nu", "j") if k in full}
    if "preset" in desc:
        echo = {"preset": desc["preset"], **({"s": desc["s"]} if "s" in desc else {})}
    return LocalShtukaDatum(g, tau, s, mu, nu, j, provenance, name, echo)
