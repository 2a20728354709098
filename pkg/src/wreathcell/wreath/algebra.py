"""
The wreath product A wr S_n of a cellular algebra with a symmetric group.

Elements are sparse combinations of basis elements (sigma; C_1, ..., C_n) with each
C_i a cellular basis element of A, stored by its basis index. The multiplication is

    (sigma; a_1, ..., a_n)(pi; b_1, ..., b_n) = (sigma pi; a_(1)pi^-1 b_1, ..., a_(n)pi^-1 b_n)

and the anti-involution is (sigma; a_1, ..., a_n)^* = (sigma^-1; a*_(1)sigma, ..., a*_(n)sigma).
"""

from __future__ import annotations

import dataclasses
import itertools
from typing import Mapping, Sequence

from ..cellular import CellularDatum
from ..exactalg import Scalar, sparse_axpy, sparse_tensor
from ..symgrp import Permutation, all_permutations


@dataclasses.dataclass(frozen=True, order=True)
class WreathBasisElement:
    """(sigma; C_{letters[0]}, ..., C_{letters[n-1]}) with letters base basis indices."""

    sigma: Permutation
    letters: tuple[int, ...]

    def __post_init__(self):
        if len(self.letters) != self.sigma.n:
            raise ValueError(f"{len(self.letters)} letters for a permutation of {self.sigma.n}")

    @property
    def n(self) -> int:
        return self.sigma.n

    def describe(self, base: CellularDatum) -> str:
        from ..builtins import label_text
        parts = []
        for j in self.letters:
            lam, s, t = base.keys[j]
            parts.append(f"C[{label_text(s)},{label_text(t)}]")
        return f"({self.sigma}; {', '.join(parts)})"


WreathElement = dict  # WreathBasisElement -> Scalar, no zero coefficients


class WreathAlgebra:
    """A wr S_n over the field of the base datum."""

    def __init__(self, base: CellularDatum, n: int):
        if n < 0:
            raise ValueError("n must be non-negative")
        self.base = base
        self.n = n
        self.field = base.field
        self.group = sorted(all_permutations(n), key=lambda g: g.images)
        self._products: dict = {}

    @property
    def dim(self) -> int:
        return len(self.group) * self.base.dim ** self.n

    def basis(self) -> list[WreathBasisElement]:
        return [WreathBasisElement(g, letters) for g in self.group
                for letters in itertools.product(range(self.base.dim), repeat=self.n)]

    def _check(self, x: WreathBasisElement):
        if x.n != self.n:
            raise ValueError(f"element of A wr S_{x.n} used in A wr S_{self.n}")

    def pure(self, sigma: Permutation, letters: Sequence[Mapping[int, Scalar]]) -> dict:
        """The pure tensor (sigma; a_1, ..., a_n) with each a_i a sparse vector over A."""
        if len(letters) != self.n or sigma.n != self.n:
            raise ValueError("pure tensor of the wrong size")
        return {WreathBasisElement(sigma, k): c for k, c in sparse_tensor(self.field, letters).items()}

    @property
    def one(self) -> dict:
        return self.pure(Permutation.identity(self.n), [self.base.one] * self.n)

    def multiply_basis(self, x: WreathBasisElement, y: WreathBasisElement) -> dict:
        key = (x, y)
        out = self._products.get(key)
        if out is None:
            self._check(x)
            self._check(y)
            pinv = y.sigma.inverse()
            parts = [self.base.product(x.letters[pinv(i) - 1], y.letters[i - 1]) for i in range(1, self.n + 1)]
            out = self._products[key] = self.pure(x.sigma * y.sigma, parts)
        return out

    def multiply(self, x: Mapping[WreathBasisElement, Scalar], y: Mapping[WreathBasisElement, Scalar]) -> dict:
        f = self.field
        acc: dict = {}
        for a, c in x.items():
            for b, d in y.items():
                sparse_axpy(f, acc, f.norm(c * d), self.multiply_basis(a, b))
        return acc

    def star_basis(self, x: WreathBasisElement) -> dict:
        self._check(x)
        s = x.sigma
        parts = [self.base.star(x.letters[s(i) - 1]) for i in range(1, self.n + 1)]
        return self.pure(s.inverse(), parts)

    def star(self, x: Mapping[WreathBasisElement, Scalar]) -> dict:
        acc: dict = {}
        for a, c in x.items():
            sparse_axpy(self.field, acc, c, self.star_basis(a))
        return acc


def pure_product_symbolic(sigma: Permutation, a: Sequence, pi: Permutation, b: Sequence):
    """The product of two pure tensors with uninterpreted letters.

    Returns (sigma pi, [(a_(i)pi^-1, b_i) for i = 1..n]); the pairs stand for the
    products a_(i)pi^-1 b_i.

    >>> s = Permutation.parse("(1,4,3,5,2)", 5)
    >>> p = Permutation.parse("(1,3,5)(2,4)", 5)
    >>> g, letters = pure_product_symbolic(s, "12345", p, "12345")
    >>> str(g), letters[0]
    ('(1,2,3)(4,5)', ('5', '1'))
    """
    if sigma.n != pi.n or len(a) != sigma.n or len(b) != pi.n:
        raise ValueError("size mismatch")
    pinv = pi.inverse()
    return sigma * pi, [(a[pinv(i) - 1], b[i - 1]) for i in range(1, pi.n + 1)]
