"""
Half diagrams, layer indices and the layer decomposition of the wreath basis.

A basis element (sigma; C[S_1,T_1], ..., C[S_n,T_n]) is drawn as a permutation diagram
whose top node i carries U_i = S_(i)sigma and whose bottom node j carries W_j = T_j, so
that U_i is joined to W_(i)sigma. The tuples u = (U_i) and w = (W_j) are half diagrams;
their common layer index mu counts the entries lying in each M(lambda_i), and their
shapes eps, delta in R_mu sort them into M(lambda_1)^mu_1 x ... x M(lambda_r)^mu_r.
Writing sigma = eps^-1 pi delta with pi in S_mu gives the layer triple (u, pi, w).
"""

from __future__ import annotations

import dataclasses
import itertools
from ..cellular import CellularDatum, cell_form, cell_module
from ..exactalg import Scalar
from ..symgrp import (
    Composition,
    Permutation,
    check_composition,
    coset_factorize,
    minimal_coset_reps,
    young_embed,
    young_split,
)
from .algebra import WreathBasisElement


@dataclasses.dataclass(frozen=True)
class HalfDiagram:
    """An n-tuple of row labels, each entry a pair (lambda, U) with U in M(lambda).

    ``layer_index`` and ``shape`` are derived from the entries and the cell order of
    the base algebra; equality and hashing use the entries only.
    """

    entries: tuple
    layer_index: Composition = dataclasses.field(compare=False)
    shape: Permutation = dataclasses.field(compare=False)

    @property
    def n(self) -> int:
        return len(self.entries)

    def labels(self) -> tuple:
        return tuple(u for _, u in self.entries)

    def __lt__(self, other: HalfDiagram):
        return self.entries < other.entries

    def __str__(self):
        from ..builtins import label_text
        return "(" + ", ".join(label_text(u) for _, u in self.entries) + ")"


def half_diagram(base: CellularDatum, entries) -> HalfDiagram:
    """Build a half diagram, computing its layer index and shape."""
    entries = tuple((lam, u) for lam, u in entries)
    r = len(base.indices)
    positions: list[list[int]] = [[] for _ in range(r)]
    for j, (lam, u) in enumerate(entries, 1):
        if lam not in base.position or u not in base.m_sets[lam]:
            raise ValueError(f"{u!r} is not a label of M({lam!r})")
        positions[base.position[lam]].append(j)
    mu = tuple(len(p) for p in positions)
    shape = Permutation(tuple(itertools.chain.from_iterable(positions)))
    return HalfDiagram(entries, mu, shape)


def graded_cells(base: CellularDatum, mu: Composition) -> tuple:
    """(alpha_1, ..., alpha_n): lambda_1 repeated mu_1 times, then lambda_2, and so on."""
    return tuple(lam for lam, m in zip(base.indices, mu) for _ in range(m))


def half_diagrams(base: CellularDatum, mu: Composition) -> list[HalfDiagram]:
    """The basis V_mu: half diagrams of type mu, grouped by shape in R_mu order and
    then listed in the product order of the label sets."""
    mu = check_composition(mu)
    if len(mu) != len(base.indices):
        raise ValueError(f"layer index {mu} needs {len(base.indices)} parts")
    alpha = graded_cells(base, mu)
    out = []
    for gamma in minimal_coset_reps(mu):
        ginv = gamma.inverse()
        cells = [alpha[ginv(j) - 1] for j in range(1, len(alpha) + 1)]
        for labels in itertools.product(*(base.m_sets[lam] for lam in cells)):
            out.append(HalfDiagram(tuple(zip(cells, labels)), mu, gamma))
    return out


@dataclasses.dataclass(frozen=True)
class LayerTriple:
    """u (x) pi (x) w with pi = (pi_1, ..., pi_r) in S_mu1 x ... x S_mur."""

    mu: Composition
    u: HalfDiagram
    pi: tuple[Permutation, ...]
    w: HalfDiagram


def layer_decompose(base: CellularDatum, e: WreathBasisElement) -> LayerTriple:
    """Split a wreath basis element into its layer triple."""
    sigma = e.sigma
    n = e.n
    keys = []
    for j in e.letters:
        if not 0 <= j < base.dim:
            raise ValueError(f"letter {j!r} is not a basis index of the base algebra")
        keys.append(base.keys[j])
    u = half_diagram(base, [(keys[sigma(i) - 1][0], keys[sigma(i) - 1][1]) for i in range(1, n + 1)])
    w = half_diagram(base, [(lam, t) for lam, _, t in keys])
    mu = w.layer_index
    pi = u.shape * sigma * w.shape.inverse()
    return LayerTriple(mu, u, young_split(pi, mu), w)


def recompose(base: CellularDatum, mu: Composition, u: HalfDiagram, pi, w: HalfDiagram) -> WreathBasisElement:
    """The basis element (eps^-1 pi delta; C[U_(1)sigma^-1, W_1], ..., C[U_(n)sigma^-1, W_n])."""
    if u.layer_index != tuple(mu) or w.layer_index != tuple(mu):
        raise ValueError(f"half diagrams are not of type {tuple(mu)}")
    sigma = u.shape.inverse() * young_embed(pi, mu) * w.shape
    sinv = sigma.inverse()
    letters = []
    for j in range(1, w.n + 1):
        lam_u, s = u.entries[sinv(j) - 1]
        lam, t = w.entries[j - 1]
        if lam_u != lam:
            raise ValueError("a string joins labels from different cells")
        letters.append(base.index[(lam, s, t)])
    return WreathBasisElement(sigma, tuple(letters))


def theta_phi(base: CellularDatum, w: HalfDiagram, a: WreathBasisElement) -> tuple[tuple[Permutation, ...], dict]:
    """Closed forms of theta_mu(w, a) and phi_mu(w, a).

    theta is the S_mu factor of delta sigma = theta zeta (zeta in R_mu), and phi is the
    tensor product of the cell-module actions C_{W_(i)sigma^-1} a_i, expanded as a
    combination of half diagrams.
    """
    mu = w.layer_index
    sigma = a.sigma
    _, _, theta = coset_factorize(mu, w.shape * sigma)
    sinv = sigma.inverse()
    factors = []
    for i in range(1, a.n + 1):
        lam, label = w.entries[sinv(i) - 1]
        mod = cell_module(base, lam)
        row = mod.actions[a.letters[i - 1]].row(mod.basis.index(label))
        factors.append([((lam, x), c) for x, c in zip(mod.basis, row) if c])
    f = base.field
    phi: dict[HalfDiagram, Scalar] = {}
    for combo in itertools.product(*factors):
        c = 1
        for _, x in combo:
            c = f.norm(c * x)
        if c:
            hd = half_diagram(base, [e for e, _ in combo])
            phi[hd] = f.norm(phi.get(hd, 0) + c)
    return theta, {k: v for k, v in phi.items() if v}


def psi_closed_form(base: CellularDatum, u: HalfDiagram, w: HalfDiagram) -> Scalar:
    """prod_i <C_{U_i}, C_{W_i}> when every U_i, W_i share a cell, else 0."""
    f = base.field
    c = 1
    for (lu, x), (lw, y) in zip(u.entries, w.entries):
        if lu != lw:
            return 0
        m = base.m_sets[lu]
        c = f.norm(c * cell_form(base, lu)[m.index(x), m.index(y)])
    return c


def describe_triple(t: LayerTriple) -> str:
    pis = ", ".join(str(p) for p in t.pi)
    return f"mu={t.mu} u={t.u} pi=({pis}) w={t.w}"

