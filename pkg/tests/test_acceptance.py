"""Acceptance criteria 1-12, one PASS/FAIL line each.

Run under pytest, or directly with ``python3 tests/test_acceptance.py`` for
just the report.
"""

import subprocess
import sys
import time

import pytest

from lommel_fresnel import checks


def _paper_check_cli():
    t0 = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "lommel_fresnel", "paper-check"],
                          capture_output=True, text=True, check=False)
    elapsed = time.perf_counter() - t0
    warns = [line for line in proc.stdout.splitlines() if line.startswith("WARN")]
    ok = proc.returncode == 0 and len(warns) == 3 and elapsed < 60.0
    detail = f"exit {proc.returncode}, {len(warns)} WARN lines, {elapsed:.1f}s wall"
    return checks.CheckResult(12, "paper-check exit status, WARN count, runtime", ok, detail, elapsed)


RUNNERS = list(checks.CRITERIA) + [_paper_check_cli]


@pytest.mark.parametrize("runner", RUNNERS, ids=[f"criterion_{i}" for i in range(1, 13)])
def test_criterion(runner, capsys):
    result = runner()
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail


def test_documented_findings():
    found = checks.findings()
    levels = [level for level, _ in found]
    assert levels.count("WARN") == 3
    assert set(levels) <= {"WARN", "NOTE"}


if __name__ == "__main__":
    results = [runner() for runner in RUNNERS]
    for r in results:
        print(r.line())
    sys.exit(0 if all(r.passed for r in results) else 1)
