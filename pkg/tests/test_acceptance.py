"""Acceptance battery: one test (and one printed pass/fail line) per check.

The checks themselves live in kernelcalc.repro so the CLI `repro`
subcommand and this suite always execute the same code.
"""

import pytest

from kernelcalc import repro


@pytest.mark.parametrize(
    "check", repro.ALL_CHECKS, ids=lambda c: c.__name__.removeprefix("check_")
)
def test_acceptance(check, capsys):
    result = check()
    line = f"{'PASS' if result.passed else 'FAIL'}: {result.name} -- {result.detail}"
    with capsys.disabled():
        print(f"\n{line}")
    assert result.passed, line
