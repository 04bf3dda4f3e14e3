"""Acceptance criteria.

Each test runs one verification suite at its full committed grid and
prints a pass/fail line with the elapsed time against the stated budget.
The same suites back the ``krawlp verify`` command, so everything here is
reachable from the CLI as well.
"""

import subprocess
import sys

import pytest

from krawlp.suites import SUITES, run_suite

# criterion number, suite name, wall-clock budget in seconds
CRITERIA = [
    (1, "census", 5.0),
    (2, "roundtrip", 5.0),
    (3, "triple-agreement", 60.0),
    (4, "orthogonality-reflection", 60.0),
    (5, "macwilliams", 600.0),
    (6, "soundness", 600.0),
    (7, "collapse", 600.0),
    (8, "subadditivity", 600.0),
    (9, "fourier-equivalence", 600.0),
    (10, "level1", 5.0),
]


def _report(number: int, result, budget: float) -> None:
    status = "PASS" if result.passed else "FAIL"
    print(
        f"[acceptance] criterion {number} ({result.name}): {status} "
        f"checked={result.checked} elapsed={result.elapsed:.2f}s budget={budget:.0f}s"
    )
    for violation in result.violations[:10]:
        print(f"[acceptance]   violation: {violation}")


@pytest.mark.parametrize("number,suite,budget", CRITERIA, ids=[c[1] for c in CRITERIA])
def test_acceptance_criterion(number, suite, budget):
    result = run_suite(suite)
    _report(number, result, budget)
    assert result.passed, result.violations[:10]
    assert result.checked > 0
    assert result.elapsed < budget


def test_all_criteria_reachable_from_verify_cli():
    assert [c[1] for c in CRITERIA] == list(SUITES)


def test_verify_cli_composite_run():
    # the documented composite run: every suite at the n=4, l=2 caps
    proc = subprocess.run(
        [sys.executable, "-m", "krawlp.cli", "verify", "--n", "4", "--l", "2"],
        capture_output=True,
        text=True,
        timeout=590,
    )
    print(proc.stdout)
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert proc.stdout.count('"passed":true') == len(SUITES)
