"""One test per acceptance criterion; each prints a pass/fail line."""

from __future__ import annotations

import subprocess
import sys

import pytest

from periodcoh import acceptance

from conftest import RESULT_LINES


@pytest.mark.parametrize("criterion", acceptance.CRITERIA, ids=lambda f: f.__name__)
def test_criterion(criterion):
    result = criterion()
    line = result.line()
    print(line)
    RESULT_LINES.append(line)
    assert result.passed, line
    if result.limit is not None:
        assert result.seconds <= result.limit, line


def test_selftest_subprocess_is_byte_stable():
    cmd = [sys.executable, "-m", "periodcoh", "selftest", "--skip-criteria", "--format", "machine"]
    first = subprocess.run(cmd, capture_output=True, check=False)
    second = subprocess.run(cmd, capture_output=True, check=False)
    assert first.returncode == 0, first.stderr.decode()
    assert first.stdout == second.stdout
    line = "[PASS] selftest subprocess: two runs byte-identical"
    print(line)
    RESULT_LINES.append(line)
