from __future__ import annotations

import re
from itertools import product
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from periodcoh.errors import EvenPrimeUnsupported, ValidationError
from periodcoh.steinberg import (
    ConstituentVector,
    constituents_i,
    constituents_v,
    exponent,
    ext1,
    hom,
    hom_units_count,
    resolution_euler_check,
    subsets,
    tits_names,
    tits_table_lookup,
)


def test_constituents_rank_one():
    c = constituents_i(set(), 1, 1)
    assert dict(c.items()) == {frozenset(): 1, frozenset({0}): 1}
    assert dict(constituents_i({0}, 3, 1).items()) == {frozenset({0}): 3}


@pytest.mark.parametrize("size", range(0, 5))
def test_support_size(size):
    delta = frozenset(range(size))
    for I in subsets(delta):
        assert len(constituents_i(I, 1, delta).support()) == 2 ** len(delta - I)
        assert constituents_v(I, 2, delta).support() == {I}


@pytest.mark.parametrize("size", range(0, 7))
def test_resolution_identity(size):
    delta = frozenset(range(size))
    for I in subsets(delta):
        assert resolution_euler_check(I, 1, delta)


def test_resolution_detects_perturbation():
    delta = frozenset(range(2))

    def bad(I, n, d):
        v = constituents_i(I, n, d)
        return v + ConstituentVector({frozenset(d): 1}) if frozenset(I) == d else v

    assert not resolution_euler_check(frozenset(), 1, delta, constituents=bad)


def test_hom():
    assert hom({0}, {0}) == "RankOne"
    assert hom({0}, {1}) == "Zero"
    assert hom(set(), {0, 1}) == "Zero"


def test_ext_examples():
    assert ext1(set(), {0, 1}, 5, "GeneralQuasiSplit").value == "Zero"
    assert ext1({0}, {0, 1}, 3, "GLnD").value == "FreeRankOne"
    a = ext1({0}, {1}, 3, "GeneralQuasiSplit")
    assert (a.value, a.torsion_bound) == ("OutsideTheorem", 3)
    assert ext1({0}, {0}, 5, "GLnD").value == "SelfCase"
    assert ext1({0, 1}, {0}, 3, "GeneralQuasiSplit").value == "HomUnitsOfF"


def test_ext_rejects_bad_inputs():
    with pytest.raises(ValidationError):
        ext1(set(), {0}, 4, "GLnD")
    with pytest.raises(ValidationError):
        ext1(set(), {0}, 5, "SL2")


sets4 = st.frozensets(st.integers(min_value=0, max_value=3))
primes = st.sampled_from([2, 3, 5, 7, 11])


@settings(max_examples=200, deadline=None)
@given(sets4, sets4, primes, st.sampled_from(["GLnD", "GeneralQuasiSplit"]))
def test_ext_consistent_with_hom(I, J, p, preset):
    a = ext1(I, J, p, preset)
    assert (a.value == "SelfCase") == (hom(I, J) == "RankOne")
    if a.value == "OutsideTheorem" and a.torsion_bound is not None:
        assert a.torsion_bound in (3, 8)
    assert re.search(r"\d+\.\d+", a.trail) is None


@settings(max_examples=100, deadline=None)
@given(sets4, sets4)
def test_large_primes_are_never_outside(I, J):
    for preset in ("GLnD", "GeneralQuasiSplit"):
        assert ext1(I, J, 7, preset).value != "OutsideTheorem"


def hom_oracle(p: int, n: int) -> int:
    """Count homs Z x Z/(p-1) x Z_p -> Z/p^n by images of generators.

    The torsion generator must land in the (p-1)-torsion of Z/p^n, i.e. 0;
    the Z_p generator may go anywhere (continuity is automatic for finite
    p-groups), as may the Z generator.
    """
    N = p ** n
    free = N
    torsion = sum(1 for x in range(N) if (x * (p - 1)) % N == 0)
    assert torsion == gcd(p - 1, N)
    zp = N
    return free * torsion * zp


@pytest.mark.parametrize("p,n", list(product([3, 5, 7], [1, 2])))
def test_hom_units_count_oracle(p, n):
    assert hom_units_count(p, n) == hom_oracle(p, n)


def test_hom_units_count_examples():
    assert hom_units_count(3, 1) == 9
    assert hom_units_count(5, 2) == 625
    with pytest.raises(EvenPrimeUnsupported):
        hom_units_count(2, 1)


def test_tits_examples():
    assert tits_table_lookup("2A_{5,2}^{(1)}") == ((6,), (2,))
    assert tits_table_lookup("G_{2,2}^0") == ((), ())
    assert tits_table_lookup("1E_{6,2}^{16}") == ((3,), (3, 3))


def test_tits_table_is_complete_and_consistent():
    names = tits_names()
    # 15 rows, four of them also listed under an isomorphic alias
    assert len(names) == 19
    assert tits_table_lookup("2D_{3,2}^{(1)}") == tits_table_lookup("2A_{3,2}^{(1)}")
    assert tits_table_lookup("C_{2,2}^{(1)}") == tits_table_lookup("B_{2,2}")
    for name in names:
        if "d" in name.split("_")[1]:
            continue
        gsc, zsc = tits_table_lookup(name)
        assert exponent(gsc) >= 1 and exponent(zsc) >= 1


def test_tits_unknown_name():
    with pytest.raises(ValidationError):
        tits_table_lookup("3Q_{1,1}")
