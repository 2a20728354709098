"""
Cell modules, simple modules and semisimplicity of a built wreath product, each
computed two or three independent ways and cross-checked.
"""

from __future__ import annotations

import dataclasses
import hashlib
import itertools
import json
import math
from typing import Callable, Hashable

from ..builtins import sym_group
from ..cellular import (
    CellularDatum,
    VerificationReport,
    cell_form,
    cell_module,
    is_semisimple,
    jacobson_radical,
    lambda0_and_simples,
    radical_first_basis,
)
from ..exactalg import Matrix, block_diagonal, kronecker_all, rank
from ..inflation import inflation_cell_module, verify_inflation
from ..cellular import verify_cellularity
from ..symgrp import (
    Multipartition,
    format_multipartition,
    dominance_leq,
    enumerate_multipartitions,
    is_partition,
    minimal_coset_reps,
    multipartition_dominance_leq,
    multipartition_size,
)
from .build import WreathDatum
from .diagrams import HalfDiagram, graded_cells
from .theta import AlgebraModule, GroupModule, ThetaModule


class OracleMismatch(AssertionError):
    """Two independent computations of the same quantity disagree."""


def check_multipartition(W: WreathDatum, nu) -> Multipartition:
    nu = tuple(tuple(x) for x in nu)
    if len(nu) != W.r or not all(is_partition(x) for x in nu) or sum(map(sum, nu)) != W.n:
        raise ValueError(f"{nu} is not a multipartition of {W.n} with {W.r} parts")
    return nu


def _specht_gram(W: WreathDatum, lam) -> Matrix:
    return cell_form(sym_group(sum(lam), W.field), tuple(lam))


# ---------------------------------------------------------------------------
# cell modules


@dataclasses.dataclass
class CellDecomposition:
    """Delta^nu built three ways, with its Gram matrix split into the blocks B_gamma.

    ``order`` lists assembled basis positions in (gamma, Y, X) order, the layout in
    which the Gram matrix is block diagonal with blocks ``blocks``.
    """

    nu: Multipartition
    mu: tuple[int, ...]
    gammas: list
    blocks: list[Matrix]
    gram: Matrix
    order: list[int]
    rank: int
    predicted_rank: int
    radical_basis: list[list]
    dims: dict[str, int]
    ranks: dict[str, int]
    checks: dict[str, bool]

    @property
    def dim(self) -> int:
        return self.gram.rows

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failed(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]


def theta_for_cell(W: WreathDatum, nu: Multipartition) -> ThetaModule:
    """Theta^mu((Delta^lambda_1, ..., Delta^lambda_r), (S^nu_1, ..., S^nu_r))."""
    mu = multipartition_size(nu)
    X = [AlgebraModule.from_cell_module(cell_module(W.base, lam)) for lam in W.base.indices]
    Y = [GroupModule.specht(W.field, x) for x in nu]
    return ThetaModule(W.algebra, mu, X, Y)


def theta_to_cell_map(W: WreathDatum, nu: Multipartition, t: ThetaModule) -> list[int]:
    """Position in Delta^nu of the image of each Theta basis vector under
    x_1 (x) ... (x) x_n (x) y (x) gamma  ->  y (x) (x_(1)gamma^-1, ..., x_(n)gamma^-1)."""
    base = W.base
    mu = t.mu
    alpha = graded_cells(base, mu)
    cm = cell_module(W.cellular, nu)
    pos = {b: k for k, b in enumerate(cm.basis)}
    sym = [sym_group(m, W.field) for m in mu]
    out = []
    for gamma, xs, ys in t.basis:
        ginv = gamma.inverse()
        entries = []
        for j in range(1, t.n + 1):
            k = ginv(j)
            lam = alpha[k - 1]
            entries.append((lam, base.m_sets[lam][xs[k - 1]]))
        hd = HalfDiagram(tuple(entries), mu, gamma)
        y = tuple(s.m_sets[lam][i] for s, lam, i in zip(sym, nu, ys))
        out.append(pos[(hd, y)])
    return out


def _block_order(W: WreathDatum, nu: Multipartition) -> tuple[list, list[int], list[Matrix]]:
    """R_mu, the (gamma, Y, X) ordering of the assembled basis and the blocks B_gamma."""
    base = W.base
    mu = multipartition_size(nu)
    alpha = graded_cells(base, mu)
    cm = cell_module(W.cellular, nu)
    pos = {b: k for k, b in enumerate(cm.basis)}
    sym = [sym_group(m, W.field) for m in mu]
    g_nu = [_specht_gram(W, x) for x in nu]
    gammas = minimal_coset_reps(mu)
    order, blocks = [], []
    for gamma in gammas:
        ginv = gamma.inverse()
        cells = [alpha[ginv(j) - 1] for j in range(1, W.n + 1)]
        for y in itertools.product(*(s.m_sets[lam] for s, lam in zip(sym, nu))):
            for labels in itertools.product(*(base.m_sets[lam] for lam in cells)):
                order.append(pos[(HalfDiagram(tuple(zip(cells, labels)), mu, gamma), y)])
        blocks.append(kronecker_all(W.field, g_nu + [cell_form(base, lam) for lam in cells]))
    return gammas, order, blocks


def _radical_basis(W: WreathDatum, nu: Multipartition, gammas, order) -> list[list]:
    """Pure tensors of radical-first factor bases with at least one radical factor."""
    f = W.field
    base = W.base
    mu = multipartition_size(nu)
    alpha = graded_cells(base, mu)
    nu_bases = [radical_first_basis(_specht_gram(W, x)) for x in nu]
    dim = len(order)
    out = []
    offset = 0
    for gamma in gammas:
        ginv = gamma.inverse()
        cells = [alpha[ginv(j) - 1] for j in range(1, W.n + 1)]
        factors = nu_bases + [radical_first_basis(cell_form(base, lam)) for lam in cells]
        sizes = [len(b) for b, _ in factors]
        block_size = math.prod(sizes)
        for choice in itertools.product(*(range(s) for s in sizes)):
            if not any(c < rd for c, (_, rd) in zip(choice, factors)):
                continue
            local = [1]
            for c, (b, _) in zip(choice, factors):
                local = [f.norm(x * y) for x in local for y in b[c]]
            vec = [0] * dim
            for k, c in enumerate(local):
                if c:
                    vec[order[offset + k]] = c
            out.append(vec)
        offset += block_size
    return out


def cell_module_report(W: WreathDatum, nu, *, strict: bool = True) -> CellDecomposition:
    """Build Delta^nu from the assembled datum, from the inflation and as a Theta
    module; compare actions on every basis element of A wr S_n, Gram matrices, the
    Kronecker block structure, the rank formula and the radical basis.

    With ``strict`` any failed comparison raises :class:`OracleMismatch`.
    """
    nu = check_multipartition(W, nu)
    mu = multipartition_size(nu)
    f = W.field
    A = W.cellular
    cm = cell_module(A, nu)
    G = cm.gram
    checks: dict[str, bool] = {}
    basis = W.algebra.basis()

    im = inflation_cell_module(W.inflation, mu, nu)
    checks["inflation basis matches"] = list(im.basis) == list(cm.basis)
    checks["inflation gram matches"] = im.gram == G
    checks["inflation actions match"] = all(im.action(a) == cm.action(A.from_ambient({a: 1})) for a in basis)

    t = theta_for_cell(W, nu)
    perm = theta_to_cell_map(W, nu, t)
    checks["theta map is a bijection"] = sorted(perm) == list(range(cm.dim)) and t.dim == cm.dim
    intertwines = True
    if checks["theta map is a bijection"]:
        for a in basis:
            m = cm.action(A.from_ambient({a: 1}))
            for b in range(t.dim):
                image = {perm[k]: c for k, c in t.act_basis(b, a).items()}
                row = m.row(perm[b])
                if image != {k: c for k, c in enumerate(row) if c}:
                    intertwines = False
                    break
            if not intertwines:
                break
    checks["theta map intertwines"] = intertwines and checks["theta map is a bijection"]

    gammas, order, blocks = _block_order(W, nu)
    alpha = graded_cells(W.base, mu)
    theta_gram = block_diagonal([kronecker_all(f, [cell_form(W.base, lam) for lam in alpha]
                                                + [_specht_gram(W, x) for x in nu]) for _ in gammas], f)
    if checks["theta map is a bijection"]:
        checks["theta map is an isometry"] = all(
            theta_gram[i, j] == G[perm[i], perm[j]] for i in range(t.dim) for j in range(t.dim))
    else:
        checks["theta map is an isometry"] = False

    reordered = G.permuted(order)
    checks["gram is block diagonal over R_mu"] = reordered == block_diagonal(blocks, f)
    sizes = [b.rows for b in blocks]
    starts = list(itertools.accumulate([0] + sizes))
    orth = True
    for x, y in itertools.permutations(range(len(blocks)), 2):
        for i in range(starts[x], starts[x + 1]):
            if any(reordered[i, j] for j in range(starts[y], starts[y + 1])):
                orth = False
    checks["distinct blocks are orthogonal"] = orth

    r = rank(G)
    predicted = len(gammas)
    for x in nu:
        predicted *= rank(_specht_gram(W, x))
    for lam, m in zip(W.base.indices, mu):
        predicted *= rank(cell_form(W.base, lam)) ** m
    checks["rank formula"] = r == predicted

    rad = _radical_basis(W, nu, gammas, order)
    checks["radical basis size"] = len(rad) == cm.dim - r
    checks["radical basis in radical"] = all(not any(G.vecmul(v)) for v in rad)
    checks["radical basis independent"] = rank(Matrix.from_rows(f, rad, cm.dim)) == len(rad) if rad else True

    dims = {"assembled": cm.dim, "inflation": im.dim, "theta": t.dim,
            "formula": len(gammas) * math.prod(_specht_gram(W, x).rows for x in nu)
            * math.prod(len(W.base.m_sets[lam]) ** m for lam, m in zip(W.base.indices, mu))}
    checks["dimensions agree"] = len(set(dims.values())) == 1
    ranks = {"assembled": r, "inflation": rank(im.gram), "theta": rank(theta_gram), "formula": predicted}
    checks["ranks agree"] = len(set(ranks.values())) == 1

    out = CellDecomposition(nu, mu, gammas, blocks, G, order, r, predicted, rad, dims, ranks, checks)
    if strict and not out.ok:
        raise OracleMismatch(f"cell module {nu}: failed {', '.join(out.failed())}")
    return out


# ---------------------------------------------------------------------------
# simple modules


@dataclasses.dataclass
class SimpleReport:
    """(nu, dim L^nu) for every nu with nonzero cell form, computed from Gram ranks and
    predicted from the base algebra and the symmetric groups."""

    computed: list[tuple[Multipartition, int]]
    predicted: list[tuple[Multipartition, int]]
    lambda0: list[Hashable]
    reindexed: dict

    @property
    def agree(self) -> bool:
        return self.computed == self.predicted

    @property
    def count(self) -> int:
        return len(self.computed)


def simple_report(W: WreathDatum, *, strict: bool = True) -> SimpleReport:
    """Simple modules of A wr S_n.

    Computed: nu with nonzero assembled Gram matrix, dimension its rank. Predicted:
    nu_i empty whenever lambda_i is outside Lambda_0 and every nu_i p-restricted, with
    dimension |R_mu| prod dim D^nu_i prod (dim L^lambda_i)^mu_i. The survivors are
    re-indexed by dropping the (empty) entries at cell indices outside Lambda_0.
    """
    p = W.field.characteristic
    base_simples = dict(lambda0_and_simples(W.base))
    lam0 = [lam for lam in W.base.indices if lam in base_simples]
    computed = []
    for nu in W.multipartitions:
        r = rank(cell_form(W.cellular, nu))
        if r:
            computed.append((nu, r))
    mask = [i for i, lam in enumerate(W.base.indices) if lam not in base_simples]
    predicted = []
    for nu in enumerate_multipartitions(W.n, W.r, p_restricted=p, zero_mask=mask):
        mu = multipartition_size(nu)
        d = len(minimal_coset_reps(mu))
        for x in nu:
            d *= rank(_specht_gram(W, x))
        for lam, m in zip(W.base.indices, mu):
            d *= base_simples.get(lam, 0) ** m
        predicted.append((nu, d))
    order = {nu: k for k, nu in enumerate(W.multipartitions)}
    predicted.sort(key=lambda e: order[e[0]])
    keep = [i for i, lam in enumerate(W.base.indices) if lam in base_simples]
    reindexed = {nu: tuple(nu[i] for i in keep) for nu, _ in predicted}
    out = SimpleReport(computed, predicted, lam0, reindexed)
    if strict and not out.agree:
        raise OracleMismatch(f"simple labels disagree: computed {computed}, predicted {predicted}")
    return out


def delta_equals_simple(W: WreathDatum, nu) -> bool:
    """Whether Delta^nu is simple (zero cell radical), checked against the criterion
    D^nu_i = S^nu_i for all i and L^lambda_i = Delta^lambda_i whenever nu_i is nonempty."""
    nu = check_multipartition(W, nu)
    g = cell_form(W.cellular, nu)
    r = rank(g)
    if r == 0:
        raise ValueError(f"{nu} does not label a simple module")
    direct = r == g.rows
    predicted = True
    for x, lam in zip(nu, W.base.indices):
        gs = _specht_gram(W, x)
        if rank(gs) != gs.rows:
            predicted = False
        ga = cell_form(W.base, lam)
        if sum(x) and rank(ga) != ga.rows:
            predicted = False
    if direct != predicted:
        raise OracleMismatch(f"Delta = L criterion fails at {nu}: radical zero is {direct}, criterion gives {predicted}")
    return direct


# ---------------------------------------------------------------------------
# semisimplicity


@dataclasses.dataclass
class SemisimplicityReport:
    base: bool
    symmetric: bool
    wreath: bool
    base_witness: Hashable | None
    symmetric_witness: Hashable | None
    wreath_witness: Hashable | None
    n: int = 1
    radical_dim: int | None = None
    problems: list[str] = dataclasses.field(default_factory=list)

    @property
    def predicted(self) -> bool:
        # A wr S_0 is the ground field whatever A is
        return (self.base and self.symmetric) if self.n else True

    @property
    def consistent(self) -> bool:
        return self.wreath == self.predicted and not self.problems

    def triple(self) -> tuple[bool, bool, bool]:
        return self.base, self.symmetric, self.wreath


def semisimplicity_report(W: WreathDatum, *, radical_oracle: bool = False, strict: bool = True) -> SemisimplicityReport:
    """Semisimplicity of A, kS_n and A wr S_n from cell forms; with ``radical_oracle``
    the wreath verdict is also recomputed as "Jacobson radical is zero" and the
    radical dimension is checked against the simple dimensions."""
    a = is_semisimple(W.base)
    s = is_semisimple(sym_group(W.n, W.field))
    w = is_semisimple(W.cellular)
    out = SemisimplicityReport(a.semisimple, s.semisimple, w.semisimple, a.witness, s.witness, w.witness, n=W.n)
    if radical_oracle:
        out.radical_dim = len(jacobson_radical(W.cellular))
        if (out.radical_dim == 0) != w.semisimple:
            out.problems.append(f"cell forms say semisimple={w.semisimple}, Jacobson radical has dim {out.radical_dim}")
        # dim A - dim rad A = sum of (dim L)^2 over the simples
        squares = sum(r * r for _, r in lambda0_and_simples(W.cellular))
        if W.cellular.dim - out.radical_dim != squares:
            out.problems.append(f"radical dim {out.radical_dim} disagrees with simple dimensions (sum of squares {squares})")
    if out.wreath != out.predicted:
        out.problems.append(f"semisimplicity triple {out.triple()} breaks the biconditional")
    if strict and out.problems:
        raise OracleMismatch("; ".join(out.problems))
    return out


# ---------------------------------------------------------------------------
# compatibility of partial orders with the multiplication


def order_violations(d: CellularDatum, lower: Callable[[Hashable, Hashable], bool]) -> list[tuple]:
    """Pairs (nu, eta) such that some C^nu_{S,T} a has a component in cell eta != nu
    although eta is not below nu in the partial order ``lower(eta, nu)``."""
    bad = set()
    for i in range(d.dim):
        nu = d.keys[i][0]
        for j in range(d.dim):
            for k in d.product(i, j):
                eta = d.keys[k][0]
                if eta != nu and not lower(eta, nu):
                    bad.add((nu, eta))
    pos = d.position
    return sorted(bad, key=lambda e: (pos[e[0]], pos[e[1]]))


def _strictly(leq):
    return lambda a, b: a != b and leq(a, b)


def inflation_order_lower(eta, nu) -> bool:
    """The order on multipartitions delivered by the iterated inflation, in this
    package's conventions: a strictly less dominant composition is lower, and within
    one composition eta is lower when every eta_i dominates nu_i (Murphy convention)."""
    a, b = multipartition_size(eta), multipartition_size(nu)
    if a != b:
        return dominance_leq(a, b)
    return eta != nu and all(dominance_leq(y, x) for x, y in zip(eta, nu))


def dominance_order_report(W: WreathDatum) -> dict[str, list[tuple]]:
    """Which candidate partial orders on the multipartitions are compatible with the
    multiplication of the assembled datum (empty list = compatible)."""
    dom = _strictly(multipartition_dominance_leq)
    return {
        "inflation order": order_violations(W.cellular, inflation_order_lower),
        "multipartition dominance, less dominant lower": order_violations(W.cellular, dom),
        "multipartition dominance, more dominant lower": order_violations(W.cellular, lambda a, b: dom(b, a)),
    }


# ---------------------------------------------------------------------------
# the report document


def datum_digest(d: CellularDatum) -> str:
    """sha256 of a canonical dump of the structure constants and the anti-involution."""
    table = {
        "field": d.field.characteristic,
        "keys": [repr(k) for k in d.keys],
        "products": [[i, j, sorted((k, str(c)) for k, c in d.product(i, j).items())]
                     for i in range(d.dim) for j in range(d.dim)],
        "star": [sorted(d.star(i).items()) for i in range(d.dim)],
    }
    return hashlib.sha256(json.dumps(table, separators=(",", ":")).encode()).hexdigest()


def _flag(x: bool) -> str:
    return "yes" if x else "no"


@dataclasses.dataclass
class WreathReport:
    """Everything computed for one instance, plus its text rendering."""

    datum: WreathDatum
    cellularity: VerificationReport
    inflation: VerificationReport
    cells: list[CellDecomposition]
    simples: SimpleReport
    semisimplicity: SemisimplicityReport
    orders: dict[str, list[tuple]]
    inflation_probes: int | None

    @property
    def ok(self) -> bool:
        return (self.cellularity.ok and self.inflation.ok and all(c.ok for c in self.cells)
                and self.simples.agree and self.semisimplicity.consistent)

    def text(self) -> str:
        W = self.datum
        ss = self.semisimplicity
        out = [
            "wreathcell report",
            f"base: {W.base.name or 'A'}",
            f"base digest: sha256:{datum_digest(W.base)}",
            f"field: {W.field}",
            f"n: {W.n}",
            f"base cell indices: {W.r}",
            f"dim: {W.algebra.dim}",
            f"layers: {' '.join(str(list(mu)) for mu in W.layer_order)}",
            f"cell modules: {len(self.cells)}",
            f"simples: {self.simples.count}",
            "",
            "cells (nu | dim Delta | gram rank | labels a simple | Delta = L):",
        ]
        for c in self.cells:
            simple = c.rank > 0
            iso = _flag(c.rank == c.dim) if simple else "-"
            out.append(f"  {format_multipartition(c.nu)} | {c.dim} | {c.rank} | {_flag(simple)} | {iso}")
        out += [
            "",
            f"semisimple: base={_flag(ss.base)} symmetric={_flag(ss.symmetric)} wreath={_flag(ss.wreath)}",
            f"semisimplicity criterion: {'holds' if ss.consistent else 'FAILS'}",
        ]
        if ss.radical_dim is not None:
            out.append(f"jacobson radical dim: {ss.radical_dim}")
        out.extend(f"  problem: {x}" for x in ss.problems)
        out += ["", "verification:", "  cellularity:", *("  " + x for x in self.cellularity.lines())]
        out += ["  inflation:" + (f" {self.inflation_probes} random probes" if self.inflation_probes else " exhaustive"),
                *("  " + x for x in self.inflation.lines())]
        bad = [c for c in self.cells if not c.ok]
        out.append(f"  cell modules cross-checked: {len(self.cells) - len(bad)}/{len(self.cells)}")
        for c in bad:
            out.append(f"    {format_multipartition(c.nu)}: failed {', '.join(c.failed())}")
        out.append(f"  simple labels match prediction: {_flag(self.simples.agree)}")
        out += ["", "order compatibility (violating pairs):"]
        for name, pairs in self.orders.items():
            out.append(f"  {name}: {len(pairs)}")
        out += ["", f"verdict: {'PASS' if self.ok else 'FAIL'}"]
        return "\n".join(out) + "\n"


def wreath_report(W: WreathDatum, *, seed: int = 0, probe_threshold: int = 100, probes: int = 500,
                  radical_oracle: bool = True) -> WreathReport:
    """Run every check on a built wreath product without raising on mismatches.

    verify_inflation is exhaustive when dim A wr S_n is at most ``probe_threshold``
    and uses ``probes`` seeded random triples above it.
    """
    cellularity = verify_cellularity(W.cellular, seed=seed)
    n_probes = probes if W.algebra.dim > probe_threshold else None
    infl = verify_inflation(W.inflation, probes=n_probes, seed=seed)
    cells = [cell_module_report(W, nu, strict=False) for nu in W.multipartitions]
    simples = simple_report(W, strict=False)
    ss = semisimplicity_report(W, radical_oracle=radical_oracle, strict=False)
    return WreathReport(W, cellularity, infl, cells, simples, ss, dominance_order_report(W), n_probes)
