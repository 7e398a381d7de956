from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from periodcoh.errors import FrameMismatch, InvalidMu
from periodcoh.isocrystal import (
    NewtonVector,
    acceptable_set_gln,
    dominance_leq,
    galois_average,
    hasse_edges,
    is_acceptable,
    is_basic,
)
from periodcoh.rootdata import build_root_datum, diagram_automorphism, identity_automorphism


def nv(*xs):
    return NewtonVector(tuple(F(x) for x in xs))


def test_dominance_examples():
    assert dominance_leq(nv("1/2", "1/2"), nv(1, 0))
    assert dominance_leq(nv(1, 0), nv(1, 0))
    assert not dominance_leq(nv(1, 0), nv("1/2", "1/2"))


def test_dominance_frame_mismatch():
    with pytest.raises(FrameMismatch):
        dominance_leq(nv(1, 0), nv(1, 0, 0))


def test_galois_average():
    t = build_root_datum("Torus2")
    swap = diagram_automorphism(t, [], torus_perm=[1, 0])
    assert galois_average(t, (1, 0), swap) == (F(1, 2), F(1, 2))
    g = build_root_datum("GL3")
    assert galois_average(g, (2, 0, -1), identity_automorphism(g)) == (2, 0, -1)


def test_is_basic():
    assert is_basic(nv("1/2", "1/2"))
    assert not is_basic(nv(1, 0))
    assert is_basic(nv(0, 0, 0))


def slopes(points):
    return {p.newton.slopes for p in points}


def test_acceptable_sets():
    assert slopes(acceptable_set_gln(2, (1, 0))) == {(1, 0), (F(1, 2), F(1, 2))}
    assert slopes(acceptable_set_gln(3, (1, 0, 0))) == {(1, 0, 0), (F(1, 2), F(1, 2), 0), (F(1, 3),) * 3}
    assert slopes(acceptable_set_gln(3, (2, 2, 2))) == {(2, 2, 2)}


def test_gl3_hasse_chain():
    pts = acceptable_set_gln(3, (1, 0, 0))
    edges = hasse_edges(pts)
    assert len(edges) == 2
    assert all(dominance_leq(pts[a].newton, pts[b].newton) for a, b in edges)


def test_acceptable_set_rejects_bad_mu():
    with pytest.raises(InvalidMu):
        acceptable_set_gln(2, (0, 1))
    with pytest.raises(InvalidMu):
        acceptable_set_gln(2, (F(1, 2), 0))


def test_is_acceptable_examples():
    g = build_root_datum("GL2")
    tau = identity_automorphism(g)
    assert is_acceptable(g, (F(1, 2), F(1, 2)), (1, 0), tau)
    assert is_acceptable(g, (1, 1), (1, 1), tau)
    assert not is_acceptable(g, (1, 1), (1, 0), tau)


mus = st.lists(st.integers(min_value=-2, max_value=2), min_size=1, max_size=4).map(
    lambda xs: tuple(sorted(xs, reverse=True)))


@settings(max_examples=40, deadline=None)
@given(mus)
def test_acceptable_set_is_dominance_ideal(mu):
    pts = acceptable_set_gln(len(mu), mu)
    top = NewtonVector(tuple(F(x) for x in mu))
    assert sum(1 for p in pts if is_basic(p.newton)) == 1
    assert any(p.newton.slopes == top.slopes for p in pts)
    for p in pts:
        assert dominance_leq(p.newton, top)
        assert p.kappa == sum(mu)


triples = st.lists(st.integers(min_value=-3, max_value=3), min_size=3, max_size=3).map(
    lambda xs: NewtonVector(tuple(F(x) - F(sum(xs), 3) for x in sorted(xs, reverse=True))))


@settings(max_examples=60, deadline=None)
@given(triples, triples, triples)
def test_dominance_is_a_partial_order(x, y, z):
    assert dominance_leq(x, x)
    if dominance_leq(x, y) and dominance_leq(y, x):
        assert x.slopes == y.slopes
    if dominance_leq(x, y) and dominance_leq(y, z):
        assert dominance_leq(x, z)
