from __future__ import annotations

from fractions import Fraction as F

import pytest

from periodcoh.errors import EmptyPeriodDomain, ValidationError
from periodcoh.shtuka import build_datum, canonical_omega, derive_J_gln, orbit_invariants
from periodcoh.rootdata import build_root_datum, inner_product, pairing


def test_derive_j_block_sizes():
    j = derive_J_gln(4, (F(1, 2),) * 4)
    assert len(j.delta_J) == 1
    assert derive_J_gln(2, (F(1, 2),) * 2).delta_J == ()
    for n in (2, 3, 5):
        assert len(derive_J_gln(n, (0,) * n).delta_J) == n - 1


def test_canonical_omega_is_dual_and_orthogonal_to_center():
    g = build_root_datum("GL3")
    omega = canonical_omega(g, g.simple_roots)
    for i, a in enumerate(g.simple_roots):
        for j, w in enumerate(omega):
            assert pairing(g, a, w) == (1 if i == j else 0)
    for w in omega:
        for z in g.central_basis:
            assert inner_product(g, w, z) == 0


def test_drinfeld_one():
    d = build_datum("drinfeld:1")
    assert str(d.g.spec) == "GL2"
    assert len(d.delta) == 1
    assert len(d.kset) == 2


@pytest.mark.parametrize("dd", [1, 2, 3, 4])
def test_drinfeld_invariants(dd):
    d = build_datum(f"drinfeld:{dd}")
    invs = orbit_invariants(d)
    assert len(invs) == dd + 1
    for i, inv in enumerate(invs):
        assert inv.length == i
        assert inv.I == frozenset(range(i))
        assert inv.n == dd + i


def test_basic_gl2_has_empty_relative_roots():
    d = build_datum("gln_basic:2:1,0:1/2")
    assert d.delta == frozenset()
    assert [(inv.I, inv.n) for inv in orbit_invariants(d)] == [(frozenset(), 0), (frozenset(), 2)]


def test_nonacceptable_nu_rejected():
    with pytest.raises(EmptyPeriodDomain):
        build_datum("gln_basic:2:1,0:1")


def test_orbit_with_w_mu_equal_nu_has_full_I():
    d = build_datum({"group": "GL3", "mu": [1, 1, 1], "nu": [1, 1, 1]})
    (inv,) = orbit_invariants(d)
    assert inv.I == d.delta


def test_explicit_j_required_off_gl():
    with pytest.raises(ValidationError):
        build_datum({"group": "B2", "mu": [1, 0], "nu": ["1/2", 0]})


@pytest.mark.parametrize("preset", ["quadric:7", "quadric:8", "split:GL2xB2:1,-1,1,0",
                                    "quasisplit:GL4:1,0,0,-1:(a1 a3):dual"])
def test_n_within_range(preset):
    d = build_datum(preset)
    for inv in orbit_invariants(d):
        assert 0 <= inv.n <= 2 * d.dim_F
        assert inv.n == 2 * inv.length + len(d.delta - inv.I)
