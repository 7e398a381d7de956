from __future__ import annotations

from math import comb

import pytest

from periodcoh.cohomology import (
    boundary_cohomology,
    compactly_supported_cohomology,
    e1_e2_rows_agree,
    e2_matches_boundary,
    euler_consistency_check,
    omega_set,
    schubert_cohomology,
    spectral_pages,
    splitting_hypothesis_check,
    strata,
)
from periodcoh.errors import BadIndex, EmptyBoundary
from periodcoh.shtuka import build_datum

PRESETS = ["drinfeld:1", "drinfeld:2", "drinfeld:3", "gln_basic:2:1,0:1/2", "gln_basic:4:1,1,0,0:1/2",
           "quadric:7", "quadric:8", "split:GL2xB2:1,-1,1,0", "quasisplit:GL4:1,0,0,-1:(a1 a3):dual"]


def sig(gsum):
    return [(s.degree, s.rep.kind, tuple(sorted(s.rep.I)), s.galois.rank, s.galois.twist) for s in gsum]


def test_drinfeld_one_cohomology():
    d = build_datum("drinfeld:1")
    assert sig(compactly_supported_cohomology(d)) == [(1, "v", (), 1, 0), (2, "i", (0,), 1, -1)]


def test_drinfeld_two_cohomology():
    d = build_datum("drinfeld:2")
    assert sig(compactly_supported_cohomology(d)) == [
        (2, "v", (), 1, 0), (3, "v", (0,), 1, -1), (4, "i", (0, 1), 1, -2)]


def test_basic_gl2_cohomology():
    d = build_datum("gln_basic:2:1,0:1/2")
    assert sig(compactly_supported_cohomology(d)) == [(0, "i", (), 1, 0), (2, "i", (), 1, -1)]


def test_zp_coefficients_are_tagged():
    d = build_datum("drinfeld:1")
    assert {s.rep.coefficient for s in compactly_supported_cohomology(d, "Zp")} == {"Zp"}


def test_omega_sets():
    d = build_datum("drinfeld:2")
    assert omega_set(d, d.delta) == frozenset(range(len(d.orbits)))
    assert omega_set(d, {0}) == frozenset({0, 1})


def test_schubert_cohomology():
    d = build_datum("drinfeld:1")
    assert sig(schubert_cohomology(d, set())) == [(0, "i", (0,), 1, 0)]
    full = schubert_cohomology(d, d.delta)
    assert [(s.degree, s.galois.twist) for s in full] == [(0, 0), (2, -1)]
    d3 = build_datum("drinfeld:3")
    assert len(schubert_cohomology(d3, set())) == 1


def test_boundary_examples():
    assert sig(boundary_cohomology(build_datum("drinfeld:1"))) == [(0, "i", (), 1, 0)]
    assert sig(boundary_cohomology(build_datum("drinfeld:2"))) == [
        (0, "i", (0, 1), 1, 0), (1, "v", (), 1, 0), (2, "i", (0,), 1, -1)]
    empty = boundary_cohomology(build_datum("gln_basic:2:1,0:1/2"))
    assert len(empty) == 0 and empty.flag("boundary_empty")


def test_spectral_pages():
    d = build_datum("drinfeld:1")
    e1, e2 = spectral_pages(d)
    assert e1.cells == e2.cells
    assert {ij for ij, _ in e1.cells} == {(0, 0)}
    with pytest.raises(EmptyBoundary):
        spectral_pages(build_datum("gln_basic:2:1,0:1/2"))


@pytest.mark.parametrize("preset", PRESETS)
def test_page_and_boundary_agree(preset):
    d = build_datum(preset)
    if not d.delta:
        return
    assert e2_matches_boundary(d)
    assert e1_e2_rows_agree(d)
    e1, _ = spectral_pages(d)
    assert {i for (i, _), _ in e1.cells} <= set(range(len(d.delta)))


def test_strata():
    d = build_datum("drinfeld:2")
    rows = strata(d, 1)
    assert [sorted(I) for I, _ in rows] == [[0], [1]]
    assert [I for I, _ in strata(d, 2)] == [frozenset()]
    with pytest.raises(BadIndex):
        strata(d, 3)
    d3 = build_datum("drinfeld:3")
    for i in (1, 2, 3):
        assert len(strata(d3, i)) == comb(3, i)


@pytest.mark.parametrize("preset", PRESETS)
def test_euler_residual_zero(preset):
    d = build_datum(preset)
    assert euler_consistency_check(d, 5, 2).passed


def test_euler_detects_dropped_summand():
    d = build_datum("drinfeld:2")
    hc = compactly_supported_cohomology(d)
    assert not euler_consistency_check(d, 5, 1, hc=hc.without(0)).passed


@pytest.mark.parametrize("preset", PRESETS)
def test_splitting_at_five_proven(preset):
    assert splitting_hypothesis_check(build_datum(preset), 5).verdict == "ProvenByTheorem"


@pytest.mark.parametrize("dd", [1, 2, 3])
def test_drinfeld_splitting_at_two(dd):
    assert splitting_hypothesis_check(build_datum(f"drinfeld:{dd}"), 2).verdict == "ProvenByTheorem"


def test_quadric_at_two_not_overclaimed():
    assert splitting_hypothesis_check(build_datum("quadric:7"), 2).verdict == "ConjecturalForThisP"
