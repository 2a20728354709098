"""
Concrete cellular data: the ground field, the dual numbers, matrix units and the
group algebras kS_n with a Murphy-type basis.

Every constructor returns an unverified :class:`CellularDatum`; callers (and the
test suite) run :func:`verify_cellularity` on the result.
"""

from __future__ import annotations

import functools
import itertools
from typing import Mapping

from .cellular import CellularDatum, CellModule, cell_module
from .exactalg import Field, Matrix, Scalar, inverse, sparse_axpy
from .symgrp import (
    Partition,
    Permutation,
    all_permutations,
    format_partition,
    format_tableau,
    partitions,
    row_stabilizer,
    standard_tableaux,
    tableau_permutation,
)

MAX_SYM_N = 4


def trivial(field: Field) -> CellularDatum:
    """The one-dimensional algebra k with C = 1."""
    return CellularDatum(field, ["k"], {"k": ["1"]}, [[{0: 1}]], [0], unit={0: 1}, name="k")


def dual_numbers(field: Field, *, swapped: bool = False) -> CellularDatum:
    """k[x]/(x^2) with cells top > bot, C^top = 1 and C^bot = x.

    ``swapped=True`` lists the cell indices the other way round, which is not a
    cellular structure (the product 1*x escapes upwards).
    """
    indices = ["bot", "top"] if swapped else ["top", "bot"]
    m_sets = {"top": ["1"], "bot": ["x"]}
    one = ("top", "1", "1")
    x = ("bot", "x", "x")
    keys = [(lam, s, s) for lam in indices for s in m_sets[lam]]
    idx = {k: i for i, k in enumerate(keys)}
    table = {(one, one): {one: 1}, (one, x): {x: 1}, (x, one): {x: 1}, (x, x): {}}
    products = [[{idx[k]: c for k, c in table[(a, b)].items()} for b in keys] for a in keys]
    return CellularDatum(field, indices, m_sets, products, [0, 1], unit={idx[one]: 1},
                         name="dual numbers (swapped)" if swapped else "dual numbers")


def matrix_units(field: Field, m: int) -> CellularDatum:
    """The full matrix algebra M_m(k) with C_{S,T} = E_{S,T} and transpose as star."""
    labels = [str(i) for i in range(1, m + 1)]
    lam = f"M{m}"
    keys = [(lam, s, t) for s in labels for t in labels]
    idx = {k: i for i, k in enumerate(keys)}

    def product(i, j):
        _, s, t = keys[i]
        _, u, w = keys[j]
        return {idx[(lam, s, w)]: 1} if t == u else {}

    star = [idx[(lam, t, s)] for (_, s, t) in keys]
    unit = {idx[(lam, s, s)]: 1 for s in labels}
    return CellularDatum(field, [lam], {lam: labels}, product, star, unit=unit, name=f"M_{m}")


class SymGroupDatum(CellularDatum):
    """kS_n with the Murphy basis m_st = d(s)^-1 x_lam d(t).

    x_lam is the sum of the row stabiliser of the initial lam-tableau and d(t) the
    permutation taking it to the standard tableau t. With the right-module
    multiplication rule the span of the m_st of shape lam and of more dominant shapes
    is an ideal, so the cell indices are listed least dominant first: (1^n) is the
    highest index and (n) the lowest.

    Cell modules are the Specht-type modules S^lam; their simple heads D^lam are
    nonzero exactly for the p-restricted lam.
    """

    def __init__(self, n: int, field: Field):
        if not 0 <= n <= MAX_SYM_N:
            raise ValueError(f"sym_group is built only for 0 <= n <= {MAX_SYM_N}, got {n}")
        self.n = n
        self.group = sorted(all_permutations(n), key=lambda g: g.images)
        self.group_index = {g: i for i, g in enumerate(self.group)}
        shapes = partitions(n)[::-1]
        m_sets = {lam: standard_tableaux(lam) for lam in shapes}
        vectors = []
        for lam in shapes:
            x_lam = row_stabilizer(lam)
            for s in m_sets[lam]:
                ds_inv = tableau_permutation(s).inverse()
                for t in m_sets[lam]:
                    dt = tableau_permutation(t)
                    vectors.append(sorted(ds_inv * w * dt for w in x_lam))
        size = len(self.group)
        if len(vectors) != size:
            raise AssertionError("Murphy basis has the wrong size")
        rows = []
        for terms in vectors:
            row = [0] * size
            for g in terms:
                row[self.group_index[g]] += 1
            rows.append(row)
        # rows: Murphy element -> group coordinates; the inverse is integral (Z-basis)
        self._to_group = Matrix.from_rows(field, rows, size)
        self._from_group = inverse(self._to_group)
        self._murphy_group = [{self.group[j]: c for j, c in enumerate(r) if c} for r in self._to_group.to_rows()]
        super().__init__(field, shapes, m_sets, self._murphy_product, self._murphy_star,
                         unit=None, name=f"kS_{n}")
        self._unit = self.from_group({Permutation.identity(n): 1})

    def to_group(self, i: int) -> dict:
        """Murphy basis element i as a combination of permutations."""
        return dict(self._murphy_group[i])

    @functools.lru_cache(maxsize=None)
    def _from_group_single(self, g: Permutation) -> tuple:
        j = self.group_index[g]
        return tuple((i, c) for i, c in enumerate(self._from_group.row(j)) if c)

    def from_group(self, vec: Mapping[Permutation, Scalar]) -> dict:
        """Expand a combination of permutations in the Murphy basis."""
        acc: dict = {}
        for g, c in vec.items():
            sparse_axpy(self.field, acc, c, dict(self._from_group_single(g)))
        return acc

    def group_multiply(self, x: Mapping[Permutation, Scalar], y: Mapping[Permutation, Scalar]) -> dict:
        acc: dict = {}
        f = self.field
        for g, a in x.items():
            for h, b in y.items():
                k = g * h
                s = f.norm(acc.get(k, 0) + a * b)
                if s:
                    acc[k] = s
                else:
                    acc.pop(k, None)
        return acc

    def _murphy_product(self, i: int, j: int) -> dict:
        return self.from_group(self.group_multiply(self._murphy_group[i], self._murphy_group[j]))

    def _murphy_star(self, i: int) -> dict:
        return self.from_group({g.inverse(): c for g, c in self._murphy_group[i].items()})

    def specht(self, lam: Partition) -> CellModule:
        """The cell module S^lam."""
        return cell_module(self, tuple(lam))

    def permutation_action(self, lam: Partition, g: Permutation) -> Matrix:
        """Matrix of the permutation g acting on S^lam."""
        cache = self._cache.setdefault("perm_action", {})
        key = (tuple(lam), g)
        if key not in cache:
            cache[key] = self.specht(lam).action(self.from_group({g: 1}))
        return cache[key]


def sym_group(n: int, field: Field) -> SymGroupDatum:
    return _sym_group_cached(n, field)


@functools.lru_cache(maxsize=None)
def _sym_group_cached(n: int, field: Field) -> SymGroupDatum:
    return SymGroupDatum(n, field)


BUILTIN_NAMES = ("trivial", "dual_numbers", "sym_group")


def builtin_datum(name: str, field: Field, **params) -> CellularDatum:
    """Look up a built-in datum by name: trivial, dual_numbers or sym_group (param n)."""
    if name == "trivial":
        return trivial(field)
    if name == "dual_numbers":
        return dual_numbers(field)
    if name == "sym_group":
        if "n" not in params:
            raise ValueError("sym_group needs the parameter n")
        return sym_group(int(params["n"]), field)
    raise ValueError(f"unknown built-in algebra {name!r}; choose from {', '.join(BUILTIN_NAMES)}")


def label_text(label) -> str:
    """Readable text for cell indices and M-labels of the built-in data."""
    if isinstance(label, tuple) and all(isinstance(x, int) for x in label):
        return format_partition(label)
    if isinstance(label, tuple) and all(isinstance(x, tuple) for x in label) and \
            all(all(isinstance(y, int) for y in x) for x in label):
        return format_tableau(label) or "()"
    return str(label)
