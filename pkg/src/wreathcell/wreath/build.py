"""
Building A wr S_n as an iterated inflation and assembling its cellular datum.

Layers are indexed by the r-part compositions of n, listed in decreasing
lexicographic order (a linear extension of dominance, most dominant first). Layer mu
is V_mu (x) kS_mu (x) V_mu with V_mu spanned by half diagrams of type mu and
kS_mu = kS_mu1 (x) ... (x) kS_mur carrying the tensor-product cellular structure.
"""

from __future__ import annotations

import dataclasses
import itertools
import math
from typing import Hashable

from ..builtins import MAX_SYM_N, sym_group
from ..cellular import CellularDatum, NotCellular, TensorDatum, tensor_product, verify_cellularity
from ..exactalg import Field, sparse_tensor
from ..inflation import AssembledDatum, InflationDatum, Layer, assemble_cellular
from ..symgrp import Composition, Permutation, compositions
from .algebra import WreathAlgebra, WreathBasisElement
from .diagrams import HalfDiagram, half_diagrams, layer_decompose, recompose, theta_phi


class CapExceeded(ValueError):
    """The requested instance is larger than the configured desk-scale limits."""


@dataclasses.dataclass(frozen=True)
class Caps:
    max_n: int = MAX_SYM_N
    max_base_dim: int = 4
    max_dim: int = 400

    def check(self, base: CellularDatum, n: int):
        if n > self.max_n:
            raise CapExceeded(f"n = {n} exceeds the cap {self.max_n}")
        if n > MAX_SYM_N:
            raise CapExceeded(f"symmetric group data are built only up to n = {MAX_SYM_N}")
        if base.dim > self.max_base_dim:
            raise CapExceeded(f"dim A = {base.dim} exceeds the cap {self.max_base_dim}")
        dim = math.factorial(n) * base.dim ** n
        if dim > self.max_dim:
            raise CapExceeded(f"dim A wr S_{n} = {dim} exceeds the cap {self.max_dim}")


@dataclasses.dataclass
class WreathDatum:
    """A built wreath product: the algebra, its inflation data and the assembled
    cellular datum whose cell indices are the length-r multipartitions of n."""

    base: CellularDatum
    n: int
    algebra: WreathAlgebra
    inflation: InflationDatum
    cellular: AssembledDatum
    layer_order: tuple[Composition, ...]

    @property
    def field(self) -> Field:
        return self.base.field

    @property
    def r(self) -> int:
        return len(self.base.indices)

    @property
    def multipartitions(self) -> tuple:
        return self.cellular.indices

    def layer(self, mu: Composition) -> Layer:
        return self.inflation.layer[tuple(mu)]

    def sym_factors(self, mu: Composition) -> TensorDatum:
        return self.layer(mu).algebra

    def __repr__(self):
        return f"<{self.base.name or 'A'} wr S_{self.n} over {self.field}: dim {self.algebra.dim}>"


def _sym_layer(field: Field, mu: Composition, vbasis: list[HalfDiagram]) -> Layer:
    factors = [sym_group(m, field) for m in mu]
    B = tensor_product(*factors, name=" (x) ".join(f"kS_{m}" for m in mu))
    bbasis = tuple(itertools.product(*(s.group for s in factors)))
    to_cell_cache: dict = {}

    def to_cell(pi):
        out = to_cell_cache.get(pi)
        if out is None:
            out = to_cell_cache[pi] = B.from_factor_vector(
                sparse_tensor(field, [s.from_group({p: 1}) for s, p in zip(factors, pi)]))
        return out

    def from_cell(j):
        idx = B.factor_indices(j)
        return sparse_tensor(field, [s.to_group(i) for s, i in zip(factors, idx)])

    return Layer(
        label=tuple(mu),
        vbasis=tuple(vbasis),
        algebra=B,
        bbasis=bbasis,
        bmul=lambda a, b: {tuple(x * y for x, y in zip(a, b)): 1},
        bstar=lambda a: {tuple(x.inverse() for x in a): 1},
        to_cell=to_cell,
        from_cell=from_cell,
        bunit={tuple(Permutation.identity(m) for m in mu): 1},
    )


def wreath_inflation(base: CellularDatum, n: int, algebra: WreathAlgebra | None = None) -> InflationDatum:
    """The layer decomposition of A wr S_n as an :class:`InflationDatum` with the
    closed-form theta/phi attached."""
    algebra = algebra or WreathAlgebra(base, n)
    field = base.field
    layers = [_sym_layer(field, mu, half_diagrams(base, mu)) for mu in compositions(n, len(base.indices))]

    def locate(e: WreathBasisElement):
        t = layer_decompose(base, e)
        return t.mu, t.u, t.pi, t.w

    def closed_form(mu, w: HalfDiagram, a: WreathBasisElement):
        theta, phi = theta_phi(base, w, a)
        return {theta: 1}, phi

    return InflationDatum(
        field, layers,
        embed=lambda mu, u, pi, w: recompose(base, mu, u, pi, w),
        locate=locate,
        amul=algebra.multiply_basis,
        astar=algebra.star_basis,
        aunit=algebra.one,
        theta_phi=closed_form,
        name=f"{base.name or 'A'} wr S_{n}",
    )


def multipartition_label(mu: Composition, lam: Hashable):
    """Assembled cell index: the tensor index (nu_1, ..., nu_r) already determines mu."""
    return lam


def build_wreath(base: CellularDatum, n: int, field: Field | None = None, *, caps: Caps = Caps(),
                 check_base: bool = True) -> WreathDatum:
    """Construct A wr S_n as an iterated inflation and assemble its cellular datum.

    The base datum is verified first (``check_base``); the wreath datum itself is not
    verified here, callers run :func:`verify_cellularity` and :func:`verify_inflation`.
    """
    if field is not None and field != base.field:
        raise ValueError(f"base algebra is over {base.field}, not {field}")
    if n < 0:
        raise ValueError("n must be non-negative")
    caps.check(base, n)
    if check_base:
        rep = verify_cellularity(base)
        if not rep.ok:
            raise NotCellular(f"base algebra is not cellular:\n{rep}")
    algebra = WreathAlgebra(base, n)
    infl = wreath_inflation(base, n, algebra)
    cellular = assemble_cellular(infl, relabel=multipartition_label, name=infl.name)
    return WreathDatum(base, n, algebra, infl, cellular, tuple(L.label for L in infl.layers))
