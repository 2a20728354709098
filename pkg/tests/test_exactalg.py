from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wreathcell.exactalg import (
    QQ,
    Echelon,
    Field,
    FieldMismatch,
    Matrix,
    block_diagonal,
    extend_to_basis,
    inverse,
    kronecker,
    nullspace_basis,
    rank,
    solve,
)

F2, F3, F5 = Field(2), Field(3), Field(5)


def det(rows, f):
    """Leibniz determinant; an elimination-free oracle for small matrices."""
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = (-1) ** sum(1 for i, j in itertools.combinations(range(n), 2) if perm[i] > perm[j])
        term = sign
        for i in range(n):
            term *= rows[i][perm[i]]
        total += term
    return f.norm(total)


def minor_rank(m: Matrix) -> int:
    rows = m.to_rows()
    for k in range(min(m.rows, m.cols), 0, -1):
        for r in itertools.combinations(range(m.rows), k):
            for c in itertools.combinations(range(m.cols), k):
                if det([[rows[i][j] for j in c] for i in r], m.field):
                    return k
    return 0


def matrices(field: Field, max_rows=4, max_cols=4):
    p = field.characteristic
    entry = st.integers(0, p - 1) if p else st.fractions(min_value=-3, max_value=3, max_denominator=3)
    return st.integers(0, max_rows).flatmap(lambda r: st.integers(0, max_cols).flatmap(
        lambda c: st.lists(st.lists(entry, min_size=c, max_size=c), min_size=r, max_size=r).map(
            lambda rows: Matrix.from_rows(field, rows, c))))


def test_field_rejects_composite():
    with pytest.raises(ValueError):
        Field(4)
    with pytest.raises(ValueError):
        Field(-1)


def test_scalars_are_normalised():
    assert QQ(Fraction(4, 2)) == 2 and isinstance(QQ(Fraction(4, 2)), int)
    assert QQ("3/6") == Fraction(1, 2)
    assert F5(-1) == 4
    assert F5(Fraction(1, 2)) == 3
    with pytest.raises(ZeroDivisionError):
        F5(Fraction(1, 5))


@pytest.mark.parametrize("f", [F2, F3, F5, Field(2**31 - 1)], ids=str)
def test_prime_field_inverses(f):
    for a in range(1, min(f.characteristic, 50)):
        assert f.mul(a, f.inv(a)) == 1


def test_big_rationals_do_not_overflow():
    m = Matrix.from_rows(QQ, [[10**40, 1], [1, Fraction(1, 10**40)]])
    assert rank(m) == 1


@pytest.mark.parametrize("m, f, expected", [
    (Matrix.identity(QQ, 3), QQ, 3),
    (Matrix.from_rows(F2, [[1, 1], [1, 1]]), F2, 1),
    (Matrix.from_rows(QQ, [[0]]), QQ, 0),
])
def test_rank_examples(m, f, expected):
    assert rank(m) == expected


def test_nullspace_examples():
    assert nullspace_basis(Matrix.identity(QQ, 3)) == []
    assert len(nullspace_basis(Matrix.zeros(QQ, 2, 2))) == 2
    (v,) = nullspace_basis(Matrix.from_rows(QQ, [[1, 1], [1, 1]]))
    assert v[0] == -v[1] != 0


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([QQ, F2, F3]).flatmap(matrices))
def test_rank_matches_minor_oracle(m):
    assert rank(m) == minor_rank(m)
    assert rank(m.T) == rank(m)
    assert rank(m) <= min(m.rows, m.cols)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([QQ, F2, F5]).flatmap(matrices))
def test_rank_nullity(m):
    null = nullspace_basis(m)
    assert m.cols == rank(m) + len(null)
    for v in null:
        assert not any(m.T.vecmul(v))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([QQ, F3]).flatmap(lambda f: st.tuples(matrices(f, 3, 3), matrices(f, 3, 3))))
def test_kronecker_rank_is_multiplicative(pair):
    a, b = pair
    assert rank(kronecker(a, b)) == rank(a) * rank(b)


def test_kronecker_rank_exhaustive_f2():
    # every 2x2 pair over F_2
    mats = [Matrix.from_rows(F2, [e[:2], e[2:]]) for e in itertools.product(range(2), repeat=4)]
    for a in mats:
        for b in mats:
            assert rank(kronecker(a, b)) == rank(a) * rank(b)


def test_kronecker_random_f5_pairs():
    import random
    rng = random.Random(5)
    for _ in range(20):
        a, b = (Matrix.from_rows(F5, [[rng.randrange(5) for _ in range(3)] for _ in range(3)]) for _ in range(2))
        assert rank(kronecker(a, b)) == rank(a) * rank(b)


def test_kronecker_examples():
    assert kronecker(Matrix.identity(QQ, 2), Matrix.identity(QQ, 3)) == Matrix.identity(QQ, 6)
    assert kronecker(Matrix.from_rows(QQ, [[2]]), Matrix.identity(QQ, 2)) == Matrix.from_rows(QQ, [[2, 0], [0, 2]])
    with pytest.raises(FieldMismatch):
        kronecker(Matrix.identity(QQ, 1), Matrix.identity(F2, 1))


def test_block_diagonal_examples():
    assert block_diagonal([]).shape == (0, 0)
    assert block_diagonal([Matrix.identity(QQ, 1), Matrix.identity(QQ, 2)]) == Matrix.identity(QQ, 3)
    with pytest.raises(FieldMismatch):
        block_diagonal([Matrix.identity(QQ, 1), Matrix.identity(F2, 1)])


@settings(max_examples=40, deadline=None)
@given(st.lists(matrices(F3, 3, 3), max_size=4))
def test_block_diagonal_rank_is_additive(blocks):
    assert rank(block_diagonal(blocks, F3)) == sum(rank(b) for b in blocks)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([QQ, F5]).flatmap(lambda f: matrices(f, 3, 3)))
def test_inverse_and_solve(m):
    if m.rows != m.cols or m.rows == 0:
        return
    if rank(m) < m.rows:
        with pytest.raises(ZeroDivisionError):
            inverse(m)
        return
    assert m @ inverse(m) == Matrix.identity(m.field, m.rows)
    rhs = [1] * m.rows
    x = solve(m, rhs)
    assert m.T.vecmul(x) == [m.field(1)] * m.rows


def test_solve_inconsistent():
    assert solve(Matrix.from_rows(QQ, [[1, 1], [1, 1]]), [0, 1]) is None


def test_echelon_span_and_extension():
    e = Echelon(F3, 3)
    assert e.add([1, 2, 0])
    assert not e.add([2, 1, 0])
    assert e.contains([0, 0, 0]) and not e.contains([0, 0, 1])
    basis = extend_to_basis(F3, [[1, 2, 0]], 3)
    assert basis[0] == [1, 2, 0] and rank(Matrix.from_rows(F3, basis)) == 3
    with pytest.raises(ValueError):
        extend_to_basis(F3, [[1, 0, 0], [2, 0, 0]], 3)
