"""The ten acceptance criteria at full size; one PASS/FAIL line is printed per criterion."""

import pytest

from formwitt.acceptance import run_all

LINES: list = []


@pytest.fixture(scope="module")
def results():
    out = {r.number: r for r in run_all(quick=False)}
    for k in sorted(out):
        LINES.append(out[k].line())
        print(out[k].line())
    return out


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(results, number):
    r = results[number]
    print(r.line())
    assert r.checked > 0
    assert not r.failures, r.failures[:5]


if __name__ == "__main__":
    for r in run_all(quick=False):
        print(r.line())
