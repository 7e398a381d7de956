from __future__ import annotations

from collections import Counter

import pytest

from periodcoh.errors import GroupTooLarge
from periodcoh.rootdata import build_root_datum, diagram_automorphism, identity_automorphism
from periodcoh.weyl import enumerate_weyl_group, galois_orbits, kostant_representatives


@pytest.mark.parametrize("name,size,top", [("A2", 6, 3), ("B2", 8, 4), ("A1xA1", 4, 2), ("G2", 12, 6), ("GL3", 6, 3)])
def test_group_sizes(name, size, top):
    ws = enumerate_weyl_group(build_root_datum(name))
    assert len(ws) == size
    assert max(w.length for w in ws) == top


def test_lengths_match_inversions():
    for w in enumerate_weyl_group(build_root_datum("B3")):
        assert w.length == w.inversion_count()


def test_bound_enforced():
    with pytest.raises(GroupTooLarge):
        enumerate_weyl_group(build_root_datum("A4"), bound=10)


def test_drinfeld_kostant_set():
    g = build_root_datum("GL3")
    kset = kostant_representatives(g, (2, -1, -1))
    assert [e.representative.reduced_word for e in kset.entries] == [(), (0,), (1, 0)]
    assert [e.length for e in kset.entries] == [0, 1, 2]


def test_regular_and_central_weights():
    g = build_root_datum("GL3")
    assert len(kostant_representatives(g, (2, 1, 0))) == 6
    assert len(kostant_representatives(g, (1, 1, 1))) == 1


def test_identity_orbits_are_singletons():
    g = build_root_datum("GL3")
    kset = kostant_representatives(g, (1, 0, 0))
    orbits = galois_orbits(kset, identity_automorphism(g))
    assert len(orbits) == len(kset) and all(o.size == 1 for o in orbits)


def test_a3_flip_orbits():
    g = build_root_datum("GL4")
    kset = kostant_representatives(g, (1, 0, 0, -1))
    assert len(kset) == 12
    tau = diagram_automorphism(g, [2, 1, 0], gl_mode="dual")
    orbits = galois_orbits(kset, tau)
    assert sum(o.size for o in orbits) == 12
    for o in orbits:
        assert len({kset.entries[m].length for m in o.members}) == 1
    # Frozen from direct enumeration: 4 fixed cosets and 4 swapped pairs.
    assert Counter(o.size for o in orbits) == Counter({1: 4, 2: 4})
