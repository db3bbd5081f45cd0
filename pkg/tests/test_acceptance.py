"""Acceptance gate: one test per criterion, one printed verdict line each."""

import pytest

from ultralogic.acceptance import CHECKS


@pytest.mark.parametrize("number,title,fn", CHECKS, ids=[f"criterion_{n}" for n, _, _ in CHECKS])
def test_acceptance(number, title, fn, capsys):
    if "seed" in fn.__code__.co_varnames:
        passed, detail = fn(0)
    else:
        passed, detail = fn()
    with capsys.disabled():
        print(f"\nACCEPTANCE {number}: {'PASS' if passed else 'FAIL'} - {title}: {detail}")
    assert passed, f"criterion {number} ({title}): {detail}"
