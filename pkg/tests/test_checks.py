from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from periodcoh.checks import central_shift_invariance, invariant_suite, rescaling_invariance
from periodcoh.shtuka import build_datum

PRESETS = ["drinfeld:2", "quadric:7", "split:GL2xB2:1,-1,1,0", "gln_basic:4:1,1,0,0:1/2"]


@pytest.mark.parametrize("preset", PRESETS)
def test_invariant_suite(preset):
    failed = [r.name for r in invariant_suite(build_datum(preset)) if not r.passed]
    assert failed == []


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6), st.sampled_from(PRESETS))
def test_random_shifts_and_rescalings(seed, preset):
    d = build_datum(preset)
    assert central_shift_invariance(d, trials=2, seed=seed)
    assert rescaling_invariance(d, trials=1, seed=seed)
