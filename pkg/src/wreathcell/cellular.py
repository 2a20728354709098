"""
Cellular algebras given by explicit cellular data.

A :class:`CellularDatum` holds a totally ordered list of cell indices (highest
first), the sets M(lam), the multiplication of basis elements C^lam_{S,T} and the
anti-involution. Nothing about a datum is trusted: :func:`verify_cellularity`
checks the Graham--Lehrer axioms in the right-module form

    C^lam_{S,T} a == sum_X R_a(T, X) C^lam_{S,X}   (mod lower cell indices)

together with the star axioms, associativity and unitality, and reports every
violation it finds.
"""

from __future__ import annotations

import dataclasses
import functools
import itertools
import random
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .exactalg import (
    Echelon,
    Field,
    Matrix,
    Scalar,
    extend_to_basis,
    inverse,
    nullspace_basis,
    rank,
    solve,
    sparse_axpy,
    sparse_tensor,
    sparse_to_dense,
)

BasisKey = tuple  # (lam, S, T)


class NotCellular(ValueError):
    """Raised when an operation needs cellularity and the datum violates it."""


class CellularDatum:
    """Explicit cellular data (Lambda, M, C) with its anti-involution.

    ``product(i, j)`` returns the expansion of C_i C_j as a sparse vector over basis
    indices; ``star`` is either a sequence with ``star[i] = j`` or a callable returning
    a sparse vector. Basis indices follow the canonical order: cell indices in the
    given order, then S, then T in the order of M(lam).
    """

    def __init__(self, field: Field, indices: Sequence[Hashable], m_sets: Mapping[Hashable, Sequence[Hashable]],
                 product: Callable[[int, int], Mapping[int, Scalar]] | Sequence[Sequence[Mapping[int, Scalar]]],
                 star: Sequence[int] | Callable[[int], Mapping[int, Scalar]],
                 *, unit: Mapping[int, Scalar] | None = None, name: str = ""):
        self.field = field
        self.indices = tuple(indices)
        if not self.indices:
            raise ValueError("a unital algebra needs at least one cell index")
        if len(set(self.indices)) != len(self.indices):
            raise ValueError("cell indices must be distinct")
        self.m_sets = {lam: tuple(m_sets[lam]) for lam in self.indices}
        self.name = name
        self.position = {lam: p for p, lam in enumerate(self.indices)}
        self.keys: list[BasisKey] = []
        self.level: list[int] = []
        self.cell_range: dict[Hashable, range] = {}
        for p, lam in enumerate(self.indices):
            m = self.m_sets[lam]
            if len(set(m)) != len(m):
                raise ValueError(f"M({lam}) has repeated labels")
            start = len(self.keys)
            for s, t in itertools.product(m, m):
                self.keys.append((lam, s, t))
                self.level.append(p)
            self.cell_range[lam] = range(start, len(self.keys))
        self.index = {k: i for i, k in enumerate(self.keys)}
        if callable(product):
            self._product_fn = product
        else:
            table = product
            self._product_fn = lambda i, j: table[i][j]
        self._products: dict[tuple[int, int], dict] = {}
        if callable(star):
            self._star_fn = star
        else:
            perm = tuple(star)
            self._star_fn = lambda i: {perm[i]: 1}
        self._unit = dict(unit) if unit is not None else None
        self._cache: dict = {}

    # -- basic structure ---------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.keys)

    def __repr__(self):
        label = self.name or "CellularDatum"
        return f"<{label} over {self.field}: dim {self.dim}, {len(self.indices)} cell indices>"

    def basis_index(self, lam, s, t) -> int:
        return self.index[(lam, s, t)]

    def cell_of(self, i: int):
        return self.keys[i][0]

    def product(self, i: int, j: int) -> dict:
        key = (i, j)
        out = self._products.get(key)
        if out is None:
            f = self.field
            out = {k: c for k, v in self._product_fn(i, j).items() if (c := f.norm(v))}
            self._products[key] = out
        return out

    def multiply(self, x: Mapping[int, Scalar], y: Mapping[int, Scalar]) -> dict:
        f = self.field
        acc: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                sparse_axpy(f, acc, f.norm(a * b), self.product(i, j))
        return acc

    def star(self, i: int) -> dict:
        return dict(self._star_fn(i))

    def star_vec(self, x: Mapping[int, Scalar]) -> dict:
        acc: dict = {}
        for i, a in x.items():
            sparse_axpy(self.field, acc, a, self.star(i))
        return acc

    def basis_vec(self, i: int) -> dict:
        return {i: 1}

    @property
    def one(self) -> dict:
        """The identity element; solved for from the structure constants if not supplied."""
        if self._unit is None:
            self._unit = self._solve_unit()
        return self._unit

    def _solve_unit(self) -> dict:
        # sum_i u_i C_i C_j = C_j for all j: dim^2 equations in dim unknowns
        f = self.field
        n = self.dim
        rows = []
        rhs = []
        for j in range(n):
            cols = [self.product(i, j) for i in range(n)]
            for k in range(n):
                rows.append([c.get(k, 0) for c in cols])
                rhs.append(1 if k == j else 0)
        x = solve(Matrix.from_rows(f, rows, n), rhs)
        if x is None:
            raise NotCellular(f"{self!r} has no left identity")
        return {i: v for i, v in enumerate(x) if v}

    def lower_than(self, i: int, lam) -> bool:
        """Whether basis element i lies strictly below cell index lam."""
        return self.level[i] > self.position[lam]

    def with_order(self, new_indices: Sequence[Hashable], name: str = "") -> CellularDatum:
        """The same algebra with its cell indices listed in another total order."""
        if sorted(map(repr, new_indices)) != sorted(map(repr, self.indices)):
            raise ValueError("new order must list the same cell indices")
        keys = [(lam, s, t) for lam in new_indices for s in self.m_sets[lam] for t in self.m_sets[lam]]
        old = [self.index[k] for k in keys]
        new_of_old = {o: n for n, o in enumerate(old)}

        def product(i, j):
            return {new_of_old[k]: c for k, c in self.product(old[i], old[j]).items()}

        def star(i):
            return {new_of_old[k]: c for k, c in self.star(old[i]).items()}

        unit = {new_of_old[k]: c for k, c in self.one.items()}
        return CellularDatum(self.field, new_indices, self.m_sets, product, star, unit=unit,
                             name=name or self.name)

    def structure_table(self) -> list[list[dict]]:
        return [[self.product(i, j) for j in range(self.dim)] for i in range(self.dim)]

    def right_regular_matrix(self, x: Mapping[int, Scalar]) -> Matrix:
        """Matrix of y -> y x on the basis (rows are the images of basis vectors)."""
        rows = []
        for i in range(self.dim):
            rows.append(sparse_to_dense(self.multiply({i: 1}, x), self.dim))
        return Matrix.from_rows(self.field, rows, self.dim)


def format_key(key: BasisKey) -> str:
    lam, s, t = key
    return f"C[{lam}; {s}, {t}]"


# ---------------------------------------------------------------------------
# verification reports


@dataclasses.dataclass
class Violation:
    check: str
    where: tuple
    detail: str

    def __str__(self):
        return f"{self.check}: {self.detail}"


@dataclasses.dataclass
class VerificationReport:
    """Outcome of an axiom check: cases examined per family and every violation found."""

    subject: str
    checked: dict[str, int] = dataclasses.field(default_factory=dict)
    violations: list[Violation] = dataclasses.field(default_factory=list)
    notes: list[str] = dataclasses.field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def count(self, check: str, k: int = 1):
        self.checked[check] = self.checked.get(check, 0) + k

    def fail(self, check: str, where: tuple, detail: str):
        self.violations.append(Violation(check, where, detail))

    def failures(self, check: str) -> list[Violation]:
        return [v for v in self.violations if v.check == check]

    def first(self, check: str) -> Violation | None:
        return next((v for v in self.violations if v.check == check), None)

    def lines(self) -> list[str]:
        out = [f"subject: {self.subject}", f"verdict: {'PASS' if self.ok else 'FAIL'}"]
        for check in self.checked:
            bad = self.failures(check)
            status = "pass" if not bad else f"FAIL ({len(bad)} violations)"
            k = self.checked[check]
            out.append(f"  {check}: {status} [{k} case{'' if k == 1 else 's'}]")
            if bad:
                out.append(f"    first counterexample: {bad[0].detail}")
        out.extend(f"  note: {n}" for n in self.notes)
        return out

    def __str__(self):
        return "\n".join(self.lines())


def verify_cellularity(d: CellularDatum, *, assoc_budget: int = 250_000, assoc_samples: int = 4000,
                       seed: int = 0) -> VerificationReport:
    """Check the cellular axioms of ``d`` exhaustively over basis elements.

    Associativity is checked on all basis triples when dim**3 <= assoc_budget and on
    ``assoc_samples`` seeded random triples otherwise (the report says which).
    """
    rep = VerificationReport(d.name or repr(d))
    f = d.field
    n = d.dim

    for i, (lam, s, t) in enumerate(d.keys):
        rep.count("star swaps indices")
        st = d.star(i)
        if st != {d.index[(lam, t, s)]: 1}:
            rep.fail("star swaps indices", (d.keys[i],), f"{format_key(d.keys[i])}* = {_fmt(d, st)}")
        rep.count("star is an involution")
        if d.star_vec(st) != {i: 1}:
            rep.fail("star is an involution", (d.keys[i],), f"star(star({format_key(d.keys[i])})) != itself")

    for i in range(n):
        for j in range(n):
            rep.count("star reverses products")
            lhs = d.star_vec(d.product(i, j))
            rhs = d.multiply(d.star(j), d.star(i))
            if lhs != rhs:
                rep.fail("star reverses products", (d.keys[i], d.keys[j]),
                         f"(ab)* != b*a* for a={format_key(d.keys[i])}, b={format_key(d.keys[j])}")

    try:
        one = d.one
    except NotCellular as exc:
        rep.count("unit")
        rep.fail("unit", (), str(exc))
        one = None
    if one is not None:
        for j in range(n):
            rep.count("unit")
            if d.multiply(one, {j: 1}) != {j: 1} or d.multiply({j: 1}, one) != {j: 1}:
                rep.fail("unit", (d.keys[j],), f"1 * {format_key(d.keys[j])} or its mirror is wrong")

    if n ** 3 <= assoc_budget:
        triples: Iterable = itertools.product(range(n), repeat=3)
    else:
        rng = random.Random(seed)
        triples = [(rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(assoc_samples)]
        rep.notes.append(f"associativity sampled on {assoc_samples} random basis triples (seed {seed})")
    for i, j, k in triples:
        rep.count("associativity")
        ab = d.product(i, j)
        bc = d.product(j, k)
        lhs: dict = {}
        for m, c in ab.items():
            sparse_axpy(f, lhs, c, d.product(m, k))
        rhs: dict = {}
        for m, c in bc.items():
            sparse_axpy(f, rhs, c, d.product(i, m))
        if lhs != rhs:
            rep.fail("associativity", (d.keys[i], d.keys[j], d.keys[k]),
                     f"(ab)c != a(bc) for {format_key(d.keys[i])}, {format_key(d.keys[j])}, {format_key(d.keys[k])}")

    _check_multiplication_rule(d, rep)
    return rep


def _fmt(d: CellularDatum, vec: Mapping[int, Scalar]) -> str:
    if not vec:
        return "0"
    return " + ".join(f"{c}*{format_key(d.keys[k])}" for k, c in sorted(vec.items()))


def _check_multiplication_rule(d: CellularDatum, rep: VerificationReport):
    check = "multiplication rule"
    for p, lam in enumerate(d.indices):
        m = d.m_sets[lam]
        for j in range(d.dim):
            reference: dict | None = None
            for s in m:
                coeffs: dict = {}
                for t in m:
                    i = d.index[(lam, s, t)]
                    rep.count(check)
                    for k, c in d.product(i, j).items():
                        lvl = d.level[k]
                        if lvl > p:
                            continue
                        where = (d.keys[i], d.keys[j])
                        if lvl < p:
                            rep.fail(check, where, f"{format_key(d.keys[i])} * {format_key(d.keys[j])} has "
                                                   f"component {format_key(d.keys[k])} above cell {lam}")
                            continue
                        _, s2, x = d.keys[k]
                        if s2 != s:
                            rep.fail(check, where, f"{format_key(d.keys[i])} * {format_key(d.keys[j])} has "
                                                   f"component {format_key(d.keys[k])} with changed row index")
                            continue
                        coeffs[(t, x)] = c
                if reference is None:
                    reference = coeffs
                elif coeffs != reference:
                    rep.fail(check, (lam, s, d.keys[j]),
                             f"coefficients R_a(T,X) for a={format_key(d.keys[j])} depend on S (S={s})")


# ---------------------------------------------------------------------------
# cell modules and cell forms


@dataclasses.dataclass
class CellModule:
    """A cell module Delta^lam with basis {C_T : T in M(lam)}, acting on the right.

    ``actions[j]`` is the matrix of basis element j: row T holds the coefficients
    R_{C_j}(T, X). Vectors are rows, so v * a is ``actions[a].vecmul(v)``.
    """

    owner: CellularDatum
    label: Hashable
    basis: tuple
    actions: list[Matrix]
    gram: Matrix

    @property
    def dim(self) -> int:
        return len(self.basis)

    def action(self, element: Mapping[int, Scalar]) -> Matrix:
        f = self.owner.field
        out = Matrix.zeros(f, self.dim, self.dim)
        for j, c in element.items():
            out = out + self.actions[j].scale(c)
        return out

    def radical(self) -> list[list]:
        return nullspace_basis(self.gram)

    @property
    def simple_dim(self) -> int:
        return rank(self.gram)


def cell_module(d: CellularDatum, lam) -> CellModule:
    """The right cell module Delta^lam with action read off from the multiplication rule."""
    if lam not in d.position:
        raise KeyError(f"unknown cell index {lam!r}")
    cache = d._cache.setdefault("cell_module", {})
    if lam in cache:
        return cache[lam]
    m = d.m_sets[lam]
    pos = {x: k for k, x in enumerate(m)}
    p = d.position[lam]
    s0 = m[0]
    actions = []
    for j in range(d.dim):
        rows = [[0] * len(m) for _ in m]
        for t in m:
            for k, c in d.product(d.index[(lam, s0, t)], j).items():
                if d.level[k] == p:
                    _, s2, x = d.keys[k]
                    if s2 != s0:
                        raise NotCellular(f"{format_key(d.keys[k])} changes the row index")
                    rows[pos[t]][pos[x]] = c
                elif d.level[k] < p:
                    raise NotCellular(f"product escapes above cell {lam}")
        actions.append(Matrix.from_rows(d.field, rows, len(m)))
    mod = CellModule(d, lam, m, actions, cell_form(d, lam))
    cache[lam] = mod
    return mod


def cell_form(d: CellularDatum, lam, *, all_probes: bool = True) -> Matrix:
    """Gram matrix of the cell form on Delta^lam.

    C_{U,S} C_{T,W} == <C_S, C_T> C_{U,W} modulo lower cells; the value is read for
    every probe pair (U, W) (or just the first when ``all_probes`` is False) and the
    probes must agree.
    """
    cache = d._cache.setdefault("cell_form", {})
    if (lam, all_probes) in cache:
        return cache[(lam, all_probes)]
    if lam not in d.position:
        raise KeyError(f"unknown cell index {lam!r}")
    m = d.m_sets[lam]
    p = d.position[lam]
    probes = list(itertools.product(m, m)) if all_probes else [(m[0], m[0])]
    gram = None
    for u, w in probes:
        target = d.index[(lam, u, w)]
        rows = []
        for s in m:
            row = []
            for t in m:
                prod = d.product(d.index[(lam, u, s)], d.index[(lam, t, w)])
                for k, c in prod.items():
                    if d.level[k] == p and k != target:
                        raise NotCellular(f"C_(U,S) C_(T,W) has a same-cell component {format_key(d.keys[k])}")
                    if d.level[k] < p:
                        raise NotCellular(f"C_(U,S) C_(T,W) escapes above cell {lam}")
                row.append(prod.get(target, 0))
            rows.append(row)
        g = Matrix.from_rows(d.field, rows, len(m))
        if gram is None:
            gram = g
        elif g != gram:
            raise NotCellular(f"cell form of {lam} depends on the probe pair ({u}, {w})")
    cache[(lam, all_probes)] = gram
    return gram


def lambda0_and_simples(d: CellularDatum) -> list[tuple[Hashable, int]]:
    """[(lam, dim L^lam)] for the cell indices with nonzero cell form."""
    out = []
    for lam in d.indices:
        r = rank(cell_form(d, lam))
        if r:
            out.append((lam, r))
    return out


@dataclasses.dataclass(frozen=True)
class SemisimplicityVerdict:
    semisimple: bool
    witness: Hashable | None = None

    def __bool__(self):
        return self.semisimple


def is_semisimple(d: CellularDatum) -> SemisimplicityVerdict:
    """Semisimple iff every cell form is nondegenerate; the witness is the first degenerate index."""
    for lam in d.indices:
        g = cell_form(d, lam)
        if rank(g) < g.rows:
            return SemisimplicityVerdict(False, lam)
    return SemisimplicityVerdict(True)


def radical_first_basis(gram: Matrix) -> tuple[list[list], int]:
    """A basis whose first vectors span the radical of the form; returns (basis, radical dim)."""
    rad = nullspace_basis(gram)
    return extend_to_basis(gram.field, rad, gram.rows), len(rad)


# ---------------------------------------------------------------------------
# Jacobson radical oracle (independent of the cellular structure)


def jacobson_radical(d: CellularDatum) -> list[list]:
    """Basis of the Jacobson radical of the algebra, from its regular representation.

    In characteristic 0 this is the radical of the trace form (a, b) -> tr(ab). In
    characteristic p the trace-form radical is refined by the p-power trace functions
    g_i(x) = Tr(x^(p^i)) / p^i mod p of the integer-lifted regular matrices
    (Cohen--Ivanyos--Wales), stopping at i = floor(log_p(dim)).
    The result is checked to be a nilpotent ideal.
    """
    f = d.field
    n = d.dim
    p = f.characteristic
    traces = [sum(d.product(i, m).get(i, 0) for i in range(n)) for m in range(n)]

    def g(z: Mapping[int, Scalar], i: int) -> Scalar:
        if i == 0:
            return f.norm(sum(c * traces[m] for m, c in z.items()))
        # sparse integer lift of the right regular matrix of z
        mod = p ** (i + 1)
        rows = [{k: int(c) for k, c in d.multiply({r: 1}, z).items()} for r in range(n)]
        power = rows
        for _ in range(i):
            power = _sparse_pow(power, p, mod)
        tr = sum(row.get(k, 0) for k, row in enumerate(power)) % mod
        if tr % (p ** i):
            raise ArithmeticError("trace function not defined on this element")
        return (tr // p ** i) % p

    current = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    i = 0
    while current:
        values = []
        for a in current:
            va = {k: x for k, x in enumerate(a) if x}
            values.append([g(d.multiply(va, {b: 1}), i) for b in range(n)])
        kernel = nullspace_basis(Matrix.from_rows(f, values, n).T)
        nxt = []
        for c in kernel:
            v = [0] * n
            for coeff, a in zip(c, current):
                if coeff:
                    v = [f.norm(x + coeff * y) for x, y in zip(v, a)]
            nxt.append(v)
        current = _echelon_basis(f, nxt, n)
        i += 1
        if p == 0 or p ** i > n:
            break

    if not _is_nilpotent_span(d, current):
        raise ArithmeticError("computed radical is not nilpotent")
    return current


def _sparse_matmul(a: list[dict], b: list[dict], mod: int) -> list[dict]:
    out = []
    for row in a:
        acc: dict = {}
        for k, x in row.items():
            for j, y in b[k].items():
                acc[j] = (acc.get(j, 0) + x * y) % mod
        out.append({j: v for j, v in acc.items() if v})
    return out


def _sparse_pow(a: list[dict], p: int, mod: int) -> list[dict]:
    result = None
    base = a
    e = p
    while e:
        if e & 1:
            result = base if result is None else _sparse_matmul(result, base, mod)
        e >>= 1
        if e:
            base = _sparse_matmul(base, base, mod)
    return result


def _echelon_basis(f: Field, vecs: Sequence[Sequence[Scalar]], dim: int) -> list[list]:
    ech = Echelon(f, dim)
    for v in vecs:
        ech.add(v)
    return ech.basis()


def _is_nilpotent_span(d: CellularDatum, span: list[list]) -> bool:
    f = d.field
    n = d.dim
    power = span
    for _ in range(n + 1):
        if not power:
            return True
        prods = []
        for a in power:
            va = {i: x for i, x in enumerate(a) if x}
            for b in span:
                vb = {i: x for i, x in enumerate(b) if x}
                prods.append(sparse_to_dense(d.multiply(va, vb), n))
        power = _echelon_basis(f, prods, n)
    return not power


# ---------------------------------------------------------------------------
# tensor products


class TensorDatum(CellularDatum):
    """Tensor product of cellular data with componentwise structure.

    Cell indices are tuples of factor indices ordered lexicographically by factor
    position, a linear extension of the componentwise product order.
    """

    def __init__(self, factors: Sequence[CellularDatum], name: str = ""):
        factors = tuple(factors)
        field = factors[0].field if factors else None
        if field is None:
            raise ValueError("use trivial() for the empty tensor product")
        if any(x.field != field for x in factors):
            raise ValueError("tensor factors over different fields")
        self.factors = factors
        combos = sorted(itertools.product(*(range(len(x.indices)) for x in factors)))
        indices = [tuple(x.indices[p] for x, p in zip(factors, c)) for c in combos]
        m_sets = {lam: tuple(itertools.product(*(x.m_sets[l] for x, l in zip(factors, lam)))) for lam in indices}
        # the basis index mapping must exist before the callbacks run
        super().__init__(field, indices, m_sets, self._tensor_product, self._tensor_star,
                         unit=None, name=name or " (x) ".join(x.name or "A" for x in factors))
        self._unit = self.from_factor_vector(sparse_tensor(field, [x.one for x in factors]))

    def factor_indices(self, i: int) -> tuple[int, ...]:
        lam, s, t = self.keys[i]
        return tuple(x.index[(l, a, b)] for x, l, a, b in zip(self.factors, lam, s, t))

    def from_factor_indices(self, idx: Sequence[int]) -> int:
        keys = [x.keys[i] for x, i in zip(self.factors, idx)]
        return self.index[(tuple(k[0] for k in keys), tuple(k[1] for k in keys), tuple(k[2] for k in keys))]

    def from_factor_vector(self, vec: Mapping[tuple, Scalar]) -> dict:
        return {self.from_factor_indices(k): c for k, c in vec.items()}

    def _tensor_product(self, i: int, j: int) -> dict:
        a = self.factor_indices(i)
        b = self.factor_indices(j)
        parts = [x.product(p, q) for x, p, q in zip(self.factors, a, b)]
        return self.from_factor_vector(sparse_tensor(self.field, parts))

    def _tensor_star(self, i: int) -> dict:
        parts = [x.star(p) for x, p in zip(self.factors, self.factor_indices(i))]
        return self.from_factor_vector(sparse_tensor(self.field, parts))


def tensor_product(*data: CellularDatum, name: str = "") -> TensorDatum:
    """Cellular tensor product d1 (x) d2 (x) ...; cell forms multiply factorwise."""
    return TensorDatum(data, name=name)
