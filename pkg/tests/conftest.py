from __future__ import annotations

import functools
import sys

import pytest

from wreathcell.builtins import builtin_datum
from wreathcell.cellular import CellularDatum
from wreathcell.exactalg import Field
from wreathcell.wreath import build_wreath

BASES = {"k": ("trivial", {}), "dual": ("dual_numbers", {}), "kS2": ("sym_group", {"n": 2})}
CHARS = (0, 2, 3)
GRID = [(a, n, p) for a in BASES for n in (2, 3) for p in CHARS]


def grid_id(case) -> str:
    a, n, p = case
    return f"{a}-n{n}-p{p}"


def orthogonal_idempotents(field, labels) -> CellularDatum:
    """k x k x ... x k with one cell per factor, listed in the given order."""
    r = len(labels)
    products = [[{i: 1} if i == j else {} for j in range(r)] for i in range(r)]
    return CellularDatum(field, labels, {lam: ["1"] for lam in labels}, products, list(range(r)),
                         unit={i: 1 for i in range(r)}, name="k^" + str(r))


@functools.lru_cache(maxsize=None)
def base_datum(name: str, p: int):
    builtin, params = BASES[name]
    return builtin_datum(builtin, Field(p), **params)


@functools.lru_cache(maxsize=None)
def wreath(name: str, n: int, p: int):
    """Built wreath products are cached across the whole session."""
    return build_wreath(base_datum(name, p), n)


@pytest.fixture(params=GRID, ids=grid_id)
def grid_wreath(request):
    return wreath(*request.param)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(acceptance.TITLES):
        status = acceptance.RESULTS.get(num)
        word = "not run" if status is None else ("PASS" if status else "FAIL")
        terminalreporter.write_line(f"criterion {num:>2}: {word:<7} {acceptance.TITLES[num]}")
