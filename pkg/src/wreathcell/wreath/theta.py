"""
The induced modules Theta^mu(X, Y) of A wr S_n.

For an r-part composition mu, right A-modules X_1..X_r and right kS_mu_i-modules
Y_1..Y_r, Theta^mu(X, Y) has basis x_1 (x) ... (x) x_n (x) y_1 (x) ... (x) y_r (x) gamma
with x_k in X_i for k in the i-th block of mu and gamma in R_mu. The element
(sigma; a_1, ..., a_n) acts through gamma sigma = theta zeta:

    x_(1)theta^-1 a_(1)zeta (x) ... (x) y_1 theta_1 (x) ... (x) y_r theta_r (x) zeta
"""

from __future__ import annotations

import dataclasses
import itertools
from typing import Callable, Mapping, Sequence

from ..builtins import sym_group
from ..cellular import CellModule, CellularDatum
from ..exactalg import Echelon, Field, Matrix, Scalar, sparse_tensor
from ..symgrp import Composition, Permutation, block_of, check_composition, coset_factorize, minimal_coset_reps
from .algebra import WreathAlgebra, WreathBasisElement


@dataclasses.dataclass
class AlgebraModule:
    """A right module over a cellular datum, given by the matrices of its basis elements
    (row-vector convention: v . C_j = v @ actions[j])."""

    owner: CellularDatum
    dim: int
    actions: Sequence[Matrix]
    name: str = ""

    @classmethod
    def from_cell_module(cls, cm: CellModule) -> AlgebraModule:
        return cls(cm.owner, cm.dim, cm.actions, name=f"Delta({cm.label})")

    @classmethod
    def regular(cls, d: CellularDatum) -> AlgebraModule:
        """The right regular module, generated by the identity."""
        return cls(d, d.dim, [d.right_regular_matrix({j: 1}) for j in range(d.dim)], name="regular")


@dataclasses.dataclass
class GroupModule:
    """A right kS_m-module given by the matrix of each permutation."""

    field: Field
    m: int
    dim: int
    act: Callable[[Permutation], Matrix]
    name: str = ""

    @classmethod
    def specht(cls, field: Field, lam) -> GroupModule:
        lam = tuple(lam)
        s = sym_group(sum(lam), field)
        return cls(field, sum(lam), len(s.m_sets[lam]), lambda g: s.permutation_action(lam, g),
                   name=f"S^{lam}")

    @classmethod
    def trivial(cls, field: Field, m: int) -> GroupModule:
        return cls(field, m, 1, lambda g: Matrix.identity(field, 1), name="trivial")

    @classmethod
    def regular(cls, field: Field, m: int) -> GroupModule:
        s = sym_group(m, field)
        group = s.group
        pos = {g: i for i, g in enumerate(group)}

        def act(g):
            rows = [[0] * len(group) for _ in group]
            for h in group:
                rows[pos[h]][pos[h * g]] = 1
            return Matrix.from_rows(field, rows, len(group))

        return cls(field, m, len(group), act, name="regular")


class ThetaModule:
    """Theta^mu(X, Y) with basis (gamma, x-indices, y-indices) in lexicographic order,
    gamma running over R_mu sorted by Coxeter length then images."""

    def __init__(self, algebra: WreathAlgebra, mu: Composition, X: Sequence[AlgebraModule],
                 Y: Sequence[GroupModule]):
        mu = check_composition(mu)
        if sum(mu) != algebra.n:
            raise ValueError(f"{mu} is not a composition of {algebra.n}")
        if len(X) != len(mu) or len(Y) != len(mu):
            raise ValueError("need one A-module and one symmetric-group module per part of mu")
        for y, m in zip(Y, mu):
            if y.m != m:
                raise ValueError(f"{y.name or 'Y'} is a kS_{y.m}-module, expected kS_{m}")
        for x in X:
            if len(x.actions) != algebra.base.dim:
                raise ValueError("A-module over a different algebra")
        self.algebra = algebra
        self.field = algebra.field
        self.mu = mu
        self.X = tuple(X)
        self.Y = tuple(Y)
        self.n = algebra.n
        self.slot_block = block_of(mu)
        self.reps = minimal_coset_reps(mu)
        xranges = [range(self.X[i].dim) for i in self.slot_block]
        yranges = [range(y.dim) for y in self.Y]
        self.basis = [(g, xs, ys) for g in self.reps
                      for xs in itertools.product(*xranges) for ys in itertools.product(*yranges)]
        self.index = {b: i for i, b in enumerate(self.basis)}
        self._rows: dict = {}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def act_basis(self, b: int, e: WreathBasisElement) -> dict:
        """Image of basis vector b under the basis element e, as a sparse vector."""
        key = (b, e)
        out = self._rows.get(key)
        if out is not None:
            return out
        gamma, xs, ys = self.basis[b]
        theta, zeta, parts = coset_factorize(self.mu, gamma * e.sigma)
        tinv = theta.inverse()
        vecs = []
        for k in range(1, self.n + 1):
            mod = self.X[self.slot_block[k - 1]]
            row = mod.actions[e.letters[zeta(k) - 1]].row(xs[tinv(k) - 1])
            vecs.append({i: c for i, c in enumerate(row) if c})
        for y, yi, t in zip(self.Y, ys, parts):
            row = y.act(t).row(yi)
            vecs.append({i: c for i, c in enumerate(row) if c})
        out = {}
        for idx, c in sparse_tensor(self.field, vecs).items():
            out[self.index[(zeta, idx[:self.n], idx[self.n:])]] = c
        self._rows[key] = out
        return out

    def action(self, e: WreathBasisElement) -> Matrix:
        return Matrix.from_sparse_rows(self.field, [self.act_basis(b, e) for b in range(self.dim)], self.dim)

    def action_element(self, x: Mapping[WreathBasisElement, Scalar]) -> Matrix:
        out = Matrix.zeros(self.field, self.dim, self.dim)
        for e, c in x.items():
            out = out + self.action(e).scale(c)
        return out

    def pure_vector(self, gamma: Permutation, xvecs: Sequence[Sequence[Scalar]], yvecs: Sequence[Sequence[Scalar]]) -> list:
        """Coordinates of x_1 (x) ... (x) x_n (x) y_1 (x) ... (x) y_r (x) gamma."""
        vecs = [{i: c for i, c in enumerate(v) if c} for v in list(xvecs) + list(yvecs)]
        out = [0] * self.dim
        for idx, c in sparse_tensor(self.field, vecs).items():
            out[self.index[(gamma, idx[:self.n], idx[self.n:])]] = c
        return out

    def generator_actions(self) -> list[Matrix]:
        """Matrices of algebra generators: (s; 1, ..., 1) for simple transpositions s
        and (e; 1, ..., C_j, ..., 1) for every slot and base basis element."""
        A = self.algebra
        n = self.n
        e = Permutation.identity(n)
        ones = [A.base.one] * n
        mats = []
        for i in range(1, n):
            images = list(range(1, n + 1))
            images[i - 1], images[i] = images[i], images[i - 1]
            mats.append(self.action_element(A.pure(Permutation(tuple(images)), ones)))
        for k in range(n):
            for j in range(A.base.dim):
                letters = list(ones)
                letters[k] = {j: 1}
                mats.append(self.action_element(A.pure(e, letters)))
        return mats

    def span_dim(self, vec: Sequence[Scalar]) -> int:
        """Dimension of the submodule generated by ``vec``."""
        ech = Echelon(self.field, self.dim)
        if not ech.add(vec):
            return 0
        gens = self.generator_actions()
        queue = [list(vec)]
        while queue:
            v = queue.pop()
            for m in gens:
                w = m.vecmul(v)
                if ech.add(w):
                    queue.append(w)
        return len(ech)


def theta_module(algebra: WreathAlgebra, mu: Composition, X: Sequence[AlgebraModule],
                 Y: Sequence[GroupModule]) -> ThetaModule:
    return ThetaModule(algebra, mu, X, Y)


def theta_generator(t: ThetaModule, x_gens: Sequence[Sequence[Scalar]], y_gens: Sequence[Sequence[Scalar]]) -> list:
    """The diagram with gamma = e, x_i repeated mu_i times and y_i on block i."""
    xvecs = [x_gens[i] for i in t.slot_block]
    return t.pure_vector(Permutation.identity(t.n), xvecs, y_gens)


def theta_cyclic_check(t: ThetaModule, x_gens: Sequence[Sequence[Scalar]], y_gens: Sequence[Sequence[Scalar]]) -> bool:
    """Whether the generator diagram built from x_gens and y_gens spans Theta^mu."""
    return t.span_dim(theta_generator(t, x_gens, y_gens)) == t.dim


def theta_action_symbolic(mu: Composition, xs: Sequence, ys: Sequence, gamma: Permutation, sigma: Permutation,
                          letters: Sequence):
    """Act with (sigma; letters) on x_1 (x) ... (x) y_1 (x) ... (x) gamma, keeping every
    factor uninterpreted.

    Returns ([(x_(k)theta^-1, a_(k)zeta)], [(y_i, theta_i)], zeta); a pair stands for
    the product of its entries.
    """
    theta, zeta, parts = coset_factorize(mu, gamma * sigma)
    tinv = theta.inverse()
    n = sigma.n
    new_x = [(xs[tinv(k) - 1], letters[zeta(k) - 1]) for k in range(1, n + 1)]
    return new_x, list(zip(ys, parts)), zeta
