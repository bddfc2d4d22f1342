"""One line per acceptance criterion, printed as ``criterion N: PASS|FAIL``.

Exact rational equality is the tolerance throughout.  Run with ``-s`` to see
the lines and the per-case details.
"""

import pytest

from superzhat.verify import CRITERIA, run_suite

_cache = {}


def result(n):
    if n not in _cache:
        _cache[n] = run_suite({n})[0]
        r = _cache[n]
        print(f"\n{r.line()}")
        for d in r.details:
            print(f"    {d}")
    return _cache[n]


@pytest.mark.parametrize("n", range(1, len(CRITERIA) + 1))
def test_criterion(n):
    r = result(n)
    assert r.passed, "\n".join(r.details)
