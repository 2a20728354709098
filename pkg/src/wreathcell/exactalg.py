"""
Exact scalar and matrix arithmetic over the rationals and prime fields.

Scalars are plain Python values: over Q they are ``int`` or ``fractions.Fraction``
(integral fractions are collapsed back to ``int`` so that the common integer case
stays fast), over F_p they are ``int`` residues in ``[0, p)``. A :class:`Field`
carries the characteristic and knows how to normalise, add, multiply and invert.

Sparse vectors are ``dict`` objects mapping a hashable key to a nonzero scalar.
Dense matrices are immutable :class:`Matrix` values. Elimination always pivots on
the first nonzero entry, so ranks, nullspace bases and echelon forms are
reproducible.
"""

from __future__ import annotations

import dataclasses
import itertools
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

Scalar = int | Fraction
SparseVec = dict


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class FieldMismatch(ValueError):
    pass


@dataclasses.dataclass(frozen=True)
class Field:
    """The rationals (characteristic 0) or the prime field F_p."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if not isinstance(p, int) or p < 0:
            raise ValueError(f"characteristic must be a non-negative integer, got {p!r}")
        if p != 0 and not is_prime(p):
            raise ValueError(f"characteristic {p} is neither 0 nor a prime")
        if p >= 2**31:
            raise ValueError("prime fields are supported only for p < 2**31")

    def __str__(self):
        return "Q" if self.characteristic == 0 else f"F_{self.characteristic}"

    def __call__(self, x) -> Scalar:
        """Coerce an int, Fraction or decimal string "a/b" into the field."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        p = self.characteristic
        if p == 0:
            if isinstance(x, Fraction):
                return x.numerator if x.denominator == 1 else x
            if isinstance(x, int):
                return x
            raise TypeError(f"cannot coerce {x!r} into {self}")
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"{x} has no image in {self}")
            return x.numerator * pow(x.denominator, -1, p) % p
        if isinstance(x, int):
            return x % p
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def norm(self, x: Scalar) -> Scalar:
        """Normalise the result of raw Python arithmetic on field values."""
        p = self.characteristic
        if p:
            return x % p
        if isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        return x

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return self.norm(a + b)

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return self.norm(a - b)

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return self.norm(a * b)

    def neg(self, a: Scalar) -> Scalar:
        return self.norm(-a)

    def inv(self, a: Scalar) -> Scalar:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        p = self.characteristic
        if p:
            return pow(a, -1, p)
        return self.norm(Fraction(1) / a)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def to_str(self, a: Scalar) -> str:
        return str(a)


QQ = Field(0)


# ---------------------------------------------------------------------------
# sparse vectors


def sparse_axpy(field: Field, acc: dict, coeff: Scalar, vec: Mapping) -> dict:
    """acc += coeff * vec, in place, dropping zeros. Returns acc."""
    if coeff == 0:
        return acc
    norm = field.norm
    for k, v in vec.items():
        s = norm(acc.get(k, 0) + coeff * v)
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)
    return acc


def sparse_add(field: Field, *vecs: Mapping) -> dict:
    acc: dict = {}
    for vec in vecs:
        sparse_axpy(field, acc, 1, vec)
    return acc


def sparse_scale(field: Field, coeff: Scalar, vec: Mapping) -> dict:
    if coeff == 0:
        return {}
    return {k: s for k, v in vec.items() if (s := field.norm(coeff * v))}


def sparse_tensor(field: Field, vecs: Sequence[Mapping]) -> dict:
    """Tensor product of sparse vectors; keys of the result are tuples of keys."""
    out: dict = {(): 1}
    for vec in vecs:
        nxt: dict = {}
        for k1, c1 in out.items():
            for k2, c2 in vec.items():
                c = field.norm(c1 * c2)
                if c:
                    key = k1 + (k2,)
                    nxt[key] = field.norm(nxt.get(key, 0) + c)
        out = {k: v for k, v in nxt.items() if v}
    return out


def dense_to_sparse(row: Sequence[Scalar]) -> dict:
    return {i: v for i, v in enumerate(row) if v}


def sparse_to_dense(vec: Mapping[int, Scalar], size: int) -> list:
    row = [0] * size
    for i, v in vec.items():
        row[i] = v
    return row


# ---------------------------------------------------------------------------
# dense matrices


@dataclasses.dataclass(frozen=True)
class Matrix:
    """An immutable dense matrix over a :class:`Field`, stored row-major."""

    field: Field
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length does not match the shape")

    @classmethod
    def from_rows(cls, field: Field, rows: Iterable[Sequence], cols: int | None = None) -> Matrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        entries = tuple(field(x) for r in rows for x in r)
        return cls(field, len(rows), cols, entries)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> Matrix:
        return cls(field, rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, field: Field, n: int) -> Matrix:
        return cls(field, n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def from_sparse_rows(cls, field: Field, rows: Sequence[Mapping[int, Scalar]], cols: int) -> Matrix:
        return cls(field, len(rows), cols, tuple(x for r in rows for x in sparse_to_dense(r, cols)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Scalar:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def T(self) -> Matrix:
        return Matrix(self.field, self.cols, self.rows,
                      tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)))

    def _check(self, other: Matrix):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        f = self.field
        return Matrix(f, self.rows, self.cols, tuple(f.norm(a + b) for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        f = self.field
        return Matrix(f, self.rows, self.cols, tuple(f.norm(a - b) for a, b in zip(self.entries, other.entries)))

    def scale(self, c: Scalar) -> Matrix:
        f = self.field
        return Matrix(f, self.rows, self.cols, tuple(f.norm(c * a) for a in self.entries))

    def __matmul__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        f = self.field
        cols = [other.entries[j::other.cols] for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            nz = [(k, a) for k, a in enumerate(r) if a]
            for c in cols:
                out.append(f.norm(sum(a * c[k] for k, a in nz)))
        return Matrix(f, self.rows, other.cols, tuple(out))

    def vecmul(self, vec: Sequence[Scalar]) -> list:
        """Row vector times matrix."""
        f = self.field
        out = [0] * self.cols
        for i, a in enumerate(vec):
            if a:
                r = self.row(i)
                for j, b in enumerate(r):
                    if b:
                        out[j] += a * b
        return [f.norm(x) for x in out]

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and self == self.T

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
        return Matrix(self.field, len(rows), len(cols), tuple(self[i, j] for i in rows for j in cols))

    def permuted(self, order: Sequence[int]) -> Matrix:
        """Simultaneous row and column permutation: new[i, j] = old[order[i], order[j]]."""
        return self.submatrix(order, order)

    def rank(self) -> int:
        return rank(self)

    def nullspace(self) -> list[list]:
        return nullspace_basis(self)

    def __str__(self):
        rows = [[str(x) for x in self.row(i)] for i in range(self.rows)]
        width = max((len(x) for r in rows for x in r), default=1)
        return "\n".join("[" + " ".join(x.rjust(width) for x in r) + "]" for r in rows)


def _rref(m: Matrix) -> tuple[list[list], list[int]]:
    f = m.field
    a = m.to_rows()
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        if r >= m.rows:
            break
        piv = next((i for i in range(r, m.rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = f.inv(a[r][c])
        a[r] = [f.norm(x * inv) for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c]:
                t = a[i][c]
                a[i] = [f.norm(x - t * y) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    a, pivots = _rref(m)
    return Matrix.from_rows(m.field, a, m.cols), pivots


def rank(m: Matrix) -> int:
    """Rank over the matrix's field, by exact Gaussian elimination."""
    return len(_rref(m)[1])


def nullspace_basis(m: Matrix) -> list[list]:
    """A basis of the right nullspace {v : m v = 0}, one vector per free column."""
    f = m.field
    a, pivots = _rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [0] * m.cols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = f.neg(a[r][fc])
        basis.append(v)
    return basis


def left_nullspace_basis(m: Matrix) -> list[list]:
    return nullspace_basis(m.T)


def solve(m: Matrix, rhs: Sequence[Scalar]) -> list | None:
    """One solution x of m x = rhs, or None if inconsistent."""
    f = m.field
    aug = Matrix(f, m.rows, m.cols + 1,
                 tuple(x for i in range(m.rows) for x in (*m.row(i), f(rhs[i]))))
    a, pivots = _rref(aug)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [0] * m.cols
    for r, pc in enumerate(pivots):
        x[pc] = a[r][m.cols]
    return x


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ValueError("only square matrices are invertible")
    n = m.rows
    f = m.field
    aug = Matrix(f, n, 2 * n, tuple(x for i in range(n) for x in (*m.row(i), *(1 if j == i else 0 for j in range(n)))))
    a, pivots = _rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return Matrix.from_rows(f, [r[n:] for r in a], n)


def kronecker(a: Matrix, b: Matrix) -> Matrix:
    """The Kronecker product, rows indexed (i, k) with i major."""
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    f = a.field
    rows = a.rows * b.rows
    cols = a.cols * b.cols
    out = []
    for i in range(a.rows):
        for k in range(b.rows):
            brow = b.row(k)
            for j in range(a.cols):
                x = a[i, j]
                out.extend(f.norm(x * y) for y in brow)
    return Matrix(f, rows, cols, tuple(out))


def kronecker_all(field: Field, mats: Sequence[Matrix]) -> Matrix:
    out = Matrix.identity(field, 1)
    for m in mats:
        out = kronecker(out, m)
    return out


def block_diagonal(blocks: Sequence[Matrix], field: Field | None = None) -> Matrix:
    """Block-diagonal assembly; an empty list gives the 0x0 matrix over ``field``."""
    if not blocks:
        return Matrix.zeros(field or QQ, 0, 0)
    f = blocks[0].field
    if any(b.field != f for b in blocks) or (field is not None and field != f):
        raise FieldMismatch("blocks over different fields")
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = []
    c0 = 0
    for b in blocks:
        for i in range(b.rows):
            out.extend(itertools.chain((0,) * c0, b.row(i), (0,) * (cols - c0 - b.cols)))
        c0 += b.cols
    return Matrix(f, rows, cols, tuple(out))


class Echelon:
    """Incrementally maintained row-echelon basis of a subspace of field^dim.

    Used for span closures (cyclic submodules) and membership tests.
    """

    def __init__(self, field: Field, dim: int):
        self.field = field
        self.dim = dim
        self._rows: dict[int, list] = {}  # pivot column -> normalised row

    def __len__(self):
        return len(self._rows)

    def reduce(self, vec: Sequence[Scalar]) -> list:
        f = self.field
        v = [f(x) for x in vec]
        for c in sorted(self._rows):
            if v[c]:
                t = v[c]
                r = self._rows[c]
                v = [f.norm(x - t * y) for x, y in zip(v, r)]
        return v

    def add(self, vec: Sequence[Scalar]) -> bool:
        """Insert ``vec``; return True if it enlarged the span."""
        f = self.field
        v = self.reduce(vec)
        c = next((i for i, x in enumerate(v) if x), None)
        if c is None:
            return False
        inv = f.inv(v[c])
        v = [f.norm(x * inv) for x in v]
        for pc, r in self._rows.items():
            if r[c]:
                t = r[c]
                self._rows[pc] = [f.norm(x - t * y) for x, y in zip(r, v)]
        self._rows[c] = v
        return True

    def contains(self, vec: Sequence[Scalar]) -> bool:
        return not any(self.reduce(vec))

    def basis(self) -> list[list]:
        return [self._rows[c] for c in sorted(self._rows)]


def extend_to_basis(field: Field, vectors: Sequence[Sequence[Scalar]], dim: int) -> list[list]:
    """Extend independent ``vectors`` to a basis of field^dim by standard vectors.

    The given vectors come first, in order, followed by the standard basis vectors
    picked in increasing index order.
    """
    ech = Echelon(field, dim)
    out = []
    for v in vectors:
        if not ech.add(v):
            raise ValueError("vectors are linearly dependent")
        out.append([field(x) for x in v])
    for i in range(dim):
        e = [0] * dim
        e[i] = 1
        if ech.add(e):
            out.append(e)
    return out


def matrix_from_columns(field: Field, columns: Sequence[Sequence[Scalar]], rows: int) -> Matrix:
    return Matrix(field, rows, len(columns), tuple(field(columns[j][i]) for i in range(rows) for j in range(len(columns))))


def keyed_vector(vec: Mapping[Hashable, Scalar], order: Sequence[Hashable]) -> list:
    return [vec.get(k, 0) for k in order]
