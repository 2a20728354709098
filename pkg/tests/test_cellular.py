from __future__ import annotations

import itertools

import pytest

from wreathcell.builtins import builtin_datum, dual_numbers, matrix_units, sym_group, trivial
from wreathcell.cellular import (
    CellularDatum,
    NotCellular,
    cell_form,
    cell_module,
    is_semisimple,
    jacobson_radical,
    lambda0_and_simples,
    radical_first_basis,
    tensor_product,
    verify_cellularity,
)
from wreathcell.exactalg import QQ, Field, Matrix, kronecker_all, rank
from wreathcell.symgrp import is_p_restricted, partitions

F2, F3 = Field(2), Field(3)
FIELDS = [QQ, F2, F3, Field(5)]


def builtin_cases():
    for f in FIELDS:
        yield pytest.param(trivial(f), id=f"k-{f}")
        yield pytest.param(dual_numbers(f), id=f"dual-{f}")
        yield pytest.param(matrix_units(f, 2), id=f"M2-{f}")
        for n in range(MAX_N + 1):
            yield pytest.param(sym_group(n, f), id=f"S{n}-{f}")


MAX_N = 4


@pytest.mark.parametrize("d", list(builtin_cases()))
def test_builtins_are_cellular(d):
    rep = verify_cellularity(d)
    assert rep.ok, str(rep)
    assert d.dim == sum(len(m) ** 2 for m in d.m_sets.values())


@pytest.mark.parametrize("d", list(builtin_cases()))
def test_cell_modules_are_modules(d):
    if d.dim > 24:
        pytest.skip("covered by smaller cases")
    for lam in d.indices:
        cm = cell_module(d, lam)
        assert cm.action(d.one) == Matrix.identity(d.field, cm.dim)
        for i, j in itertools.product(range(d.dim), repeat=2):
            assert cm.action(d.product(i, j)) == cm.actions[i] @ cm.actions[j]
        assert cm.gram.is_symmetric()


@pytest.mark.parametrize("d", list(builtin_cases()))
def test_simple_dimensions_bound_the_dimension(d):
    total = sum(r * r for _, r in lambda0_and_simples(d))
    assert total <= d.dim
    assert (total == d.dim) == is_semisimple(d).semisimple


@pytest.mark.parametrize("d", list(builtin_cases()))
def test_jacobson_radical_oracle(d):
    rad = jacobson_radical(d)
    total = sum(r * r for _, r in lambda0_and_simples(d))
    assert len(rad) == d.dim - total
    assert (not rad) == is_semisimple(d).semisimple


def test_swapped_dual_numbers_are_not_cellular():
    rep = verify_cellularity(dual_numbers(QQ, swapped=True))
    assert not rep.ok
    bad = rep.first("multiplication rule")
    assert bad is not None
    assert ("top", "1", "1") in bad.where and ("bot", "x", "x") in bad.where


def test_trivial_algebra():
    d = trivial(QQ)
    assert cell_module(d, "k").dim == 1
    assert cell_form(d, "k") == Matrix.identity(QQ, 1)
    assert lambda0_and_simples(d) == [("k", 1)]
    assert is_semisimple(d).semisimple


def test_dual_numbers():
    d = dual_numbers(QQ)
    top = cell_module(d, "top")
    x = d.index[("bot", "x", "x")]
    assert top.dim == 1 and top.actions[x] == Matrix.from_rows(QQ, [[0]])
    assert top.action(d.one) == Matrix.identity(QQ, 1)
    assert cell_form(d, "bot") == Matrix.from_rows(QQ, [[0]])
    assert rank(cell_form(d, "bot")) == 0
    assert lambda0_and_simples(d) == [("top", 1)]
    v = is_semisimple(d)
    assert not v.semisimple and v.witness == "bot"


@pytest.mark.parametrize("n, f, dims", [
    (2, QQ, {(2,): 1, (1, 1): 1}),
    (3, QQ, {(3,): 1, (2, 1): 2, (1, 1, 1): 1}),
])
def test_sym_group_cell_dimensions(n, f, dims):
    d = sym_group(n, f)
    assert {lam: cell_module(d, lam).dim for lam in d.indices} == dims
    assert d.dim == sum(x * x for x in dims.values())


def test_sym_group_s2():
    d = sym_group(2, QQ)
    assert set(d.indices) == {(2,), (1, 1)}
    assert [r for _, r in lambda0_and_simples(d)] == [1, 1]
    d2 = sym_group(2, F2)
    assert not is_semisimple(d2).semisimple
    assert rank(cell_form(d2, (2,))) == 0


@pytest.mark.parametrize("n", range(1, MAX_N + 1))
@pytest.mark.parametrize("p", [0, 2, 3, 5])
def test_maschke(n, p):
    assert is_semisimple(sym_group(n, Field(p))).semisimple == (p == 0 or p > n)


@pytest.mark.parametrize("n", range(1, MAX_N + 1))
@pytest.mark.parametrize("p", [2, 3])
def test_simples_of_sym_group_are_p_restricted(n, p):
    d = sym_group(n, Field(p))
    assert {lam for lam, _ in lambda0_and_simples(d)} == {lam for lam in partitions(n) if is_p_restricted(lam, p)}


def test_s3_over_f3_has_two_simples():
    assert len(lambda0_and_simples(sym_group(3, F3))) == 2


def test_group_multiplication_round_trip():
    d = sym_group(3, QQ)
    for i in range(d.dim):
        assert d.from_group(d.to_group(i)) == {i: 1}


@pytest.mark.parametrize("f", [QQ, F2])
def test_tensor_product_of_s2(f):
    s = sym_group(2, f)
    t = tensor_product(s, s)
    assert verify_cellularity(t).ok
    assert len(t.indices) == 4 and t.dim == 4
    assert all(cell_module(t, lam).dim == 1 for lam in t.indices)
    for lam in t.indices:
        assert cell_form(t, lam) == kronecker_all(f, [cell_form(s, l) for l in lam])


def test_tensor_product_forms_are_kronecker():
    d, s = dual_numbers(F3), sym_group(3, F3)
    t = tensor_product(d, s)
    assert verify_cellularity(t).ok
    for lam in t.indices:
        assert cell_form(t, lam) == kronecker_all(F3, [cell_form(d, lam[0]), cell_form(s, lam[1])])


def test_tensor_with_k_is_a_relabelling():
    d = dual_numbers(QQ)
    t = tensor_product(trivial(QQ), d)
    assert t.dim == d.dim
    for i in range(t.dim):
        for j in range(t.dim):
            tp = t.product(i, j)
            a, b = t.factor_indices(i)[1], t.factor_indices(j)[1]
            assert {t.factor_indices(k)[1]: c for k, c in tp.items()} == d.product(a, b)


def test_cell_form_probe_independence_detected():
    # a 2x2 matrix algebra whose "cell form" depends on the probe pair is rejected
    base = matrix_units(QQ, 2)
    rows = [[base.product(i, j) for j in range(4)] for i in range(4)]
    rows[0][0] = {0: 2}
    bad = CellularDatum(QQ, base.indices, base.m_sets, rows, [0, 2, 1, 3], unit=base.one)
    with pytest.raises(NotCellular):
        cell_form(bad, base.indices[0])
    assert not verify_cellularity(bad).ok


def test_radical_first_basis():
    g = Matrix.from_rows(QQ, [[1, 1], [1, 1]])
    basis, rd = radical_first_basis(g)
    assert rd == 1 and not any(g.vecmul(basis[0]))
    assert rank(Matrix.from_rows(QQ, basis)) == 2


def test_with_order_reverses_cellularity():
    d = dual_numbers(QQ)
    assert not verify_cellularity(d.with_order(["bot", "top"])).ok


def test_builtin_lookup_errors():
    with pytest.raises(ValueError):
        builtin_datum("nope", QQ)
    with pytest.raises(ValueError):
        builtin_datum("sym_group", QQ)
    with pytest.raises(ValueError):
        sym_group(5, QQ)
    with pytest.raises(KeyError):
        cell_module(trivial(QQ), "missing")
