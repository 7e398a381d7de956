from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from periodcoh import _linalg as la
from periodcoh.errors import InvalidAutomorphism, InvalidCartanSpec
from periodcoh.rootdata import (
    build_root_datum,
    diagram_automorphism,
    inner_product,
    is_finite_type_cartan,
    pairing,
    parse_cartan_spec,
)
from periodcoh.weyl import enumerate_weyl_group

TYPES = ["GL2", "GL3", "GL4", "A2", "B2", "B3", "C3", "D4", "G2", "F4", "A2xA1", "GL2xB2", "GL3xTorus1"]


def test_gl3_simple_roots():
    g = build_root_datum("GL3")
    assert [list(r) for r in g.simple_roots] == [[1, -1, 0], [0, 1, -1]]
    assert len(g.positive_roots) == 3


@pytest.mark.parametrize("name,count", [("G2", 6), ("F4", 24), ("E6", 36), ("E7", 63), ("E8", 120), ("B4", 16)])
def test_positive_root_counts(name, count):
    assert len(build_root_datum(name).positive_roots) == count


def test_g2_cartan_matrix():
    rows = [list(r) for r in build_root_datum("G2").cartan_matrix]
    assert rows in ([[2, -1], [-3, 2]], [[2, -3], [-1, 2]])


@pytest.mark.parametrize("name", TYPES)
def test_fundamental_coweights_dual_to_simple_roots(name):
    g = build_root_datum(name)
    for i, a in enumerate(g.simple_roots):
        for j, w in enumerate(g.fundamental_coweights):
            assert pairing(g, a, w) == (1 if i == j else 0)


@pytest.mark.parametrize("name", TYPES)
def test_root_coroot_pairing_is_two(name):
    g = build_root_datum(name)
    for a, c in zip(g.positive_roots, g.positive_coroots):
        assert pairing(g, a, c) == 2


def test_pairing_examples():
    a2 = build_root_datum("A2")
    assert pairing(a2, a2.simple_roots[0], a2.fundamental_coweights[1]) == 0
    gl3 = build_root_datum("GL3")
    assert pairing(gl3, (1, -1, 0), (1, 0, 0)) == 1


def test_inner_product_normalization():
    gl = build_root_datum("GL3")
    for i in range(3):
        for j in range(3):
            e_i = tuple(1 if k == i else 0 for k in range(3))
            e_j = tuple(1 if k == j else 0 for k in range(3))
            assert inner_product(gl, e_i, e_j) == (1 if i == j else 0)
    a1 = build_root_datum("A1")
    c = a1.simple_coroots[0]
    assert inner_product(a1, c, c) == 2


@pytest.mark.parametrize("name", ["GL3", "B2", "G2", "A2xA1", "C3"])
def test_inner_product_weyl_invariant(name):
    g = build_root_datum(name)
    ws = enumerate_weyl_group(g)
    rng = random.Random(7)
    for _ in range(100):
        w = rng.choice(ws)
        x = tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(g.ambient_rank))
        y = tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(g.ambient_rank))
        assert inner_product(g, w.act(x), w.act(y)) == inner_product(g, x, y)


def test_parse_cartan_spec_products():
    spec = parse_cartan_spec("A2xA1")
    assert str(spec) == "A2xA1"
    assert build_root_datum("GL3xTorus1").ambient_rank == 4


@pytest.mark.parametrize("bad", ["", "X3", "A0", "B1", "D2", "E9", "G3", "GL0", "A2xx"])
def test_parse_rejects_bad_specs(bad):
    with pytest.raises(InvalidCartanSpec):
        parse_cartan_spec(bad)


def test_finite_type_recognition():
    assert is_finite_type_cartan([[2, -1], [-3, 2]])
    assert not is_finite_type_cartan([[2, -2], [-2, 2]])
    assert not is_finite_type_cartan([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])


def test_diagram_automorphism_a3_flip():
    g = build_root_datum("GL4")
    tau = diagram_automorphism(g, [2, 1, 0], gl_mode="dual")
    assert tau.order == 2
    assert tau.apply((1, 0, 0, -1)) == (1, 0, 0, -1)
    assert tau.power(2).is_identity


def test_diagram_automorphism_rejects_non_automorphism():
    g = build_root_datum("B3")
    with pytest.raises(InvalidAutomorphism):
        diagram_automorphism(g, [2, 1, 0])


small = st.fractions(min_value=-6, max_value=6, max_denominator=4)


@settings(max_examples=60, deadline=None)
@given(st.lists(small, min_size=4, max_size=4), st.lists(small, min_size=4, max_size=4),
       st.integers(min_value=0, max_value=2))
def test_inner_product_symmetric_bilinear(x, y, k):
    g = build_root_datum("GL2xB2")
    assert inner_product(g, x, y) == inner_product(g, y, x)
    assert inner_product(g, la.vscale(k, x), y) == k * inner_product(g, x, y)


@settings(max_examples=60, deadline=None)
@given(st.lists(small, min_size=3, max_size=3))
def test_make_dominant_is_dominant_and_in_orbit(v):
    g = build_root_datum("B3")
    d = g.make_dominant(v)
    assert g.is_dominant(d)
    assert inner_product(g, d, d) == inner_product(g, v, v)
