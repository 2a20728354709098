from __future__ import annotations

import itertools

import pytest

from wreathcell.builtins import dual_numbers, sym_group, trivial
from wreathcell.cellular import CellularDatum, cell_form, cell_module, verify_cellularity
from wreathcell.exactalg import QQ, Field, Matrix, kronecker, sparse_axpy
from wreathcell.inflation import (
    InflationDatum,
    InflationError,
    Layer,
    assemble_cellular,
    derive_psi,
    inflation_cell_module,
    verify_inflation,
)
from wreathcell.wreath import build_wreath, wreath_inflation


def single_layer(B: CellularDatum, V, psi, *, field=QQ, mutate=None) -> InflationDatum:
    """V (x) B (x) V with (u b w)(x c y) = psi(w, x) u (bc) y for a k-valued form psi."""
    L = Layer.on_cellular_basis("only", V, B)
    f = field

    def amul(a, b):
        (u, p, w), (x, q, y) = a, b
        c = psi[V.index(w)][V.index(x)]
        out = {(u, k, y): f.norm(c * v) for k, v in B.product(p, q).items()} if c else {}
        out = {k: v for k, v in out.items() if v}
        return mutate(a, b, out) if mutate else out

    def astar(a):
        u, p, w = a
        return {(w, k, u): c for k, c in B.star(p).items()}

    # unit: sum of (psi^-1)_{ij} v_i (x) 1 (x) v_j, here psi is its own inverse
    unit: dict = {}
    for i, j in itertools.product(range(len(V)), repeat=2):
        if psi[i][j]:
            sparse_axpy(f, unit, psi[i][j], {(V[i], k, V[j]): c for k, c in B.one.items()})
    return InflationDatum(f, [L], embed=lambda mu, u, b, w: (u, b, w), locate=lambda k: ("only", *k),
                          amul=amul, astar=astar, aunit=unit, name="toy")


def dual_as_inflation(mutate=None) -> InflationDatum:
    """k[x]/(x^2) as two one-dimensional layers: top spanned by 1, bottom by x."""
    k = trivial(QQ)
    layers = [Layer.on_cellular_basis(mu, ["*"], k) for mu in ("top", "bot")]
    table = {("1", "1"): {"1": 1}, ("1", "x"): {"x": 1}, ("x", "1"): {"x": 1}, ("x", "x"): {}}
    if mutate:
        table.update(mutate)
    return InflationDatum(QQ, layers,
                          embed=lambda mu, u, b, w: "1" if mu == "top" else "x",
                          locate=lambda a: ("top" if a == "1" else "bot", "*", 0, "*"),
                          amul=lambda a, b: table[(a, b)], astar=lambda a: {a: 1}, aunit={"1": 1},
                          name="dual numbers")


SWAP = [[0, 1], [1, 0]]


@pytest.mark.parametrize("B", [trivial(QQ), dual_numbers(QQ), sym_group(2, QQ)], ids=lambda d: d.name)
def test_trivial_v_gives_b_back(B):
    d = single_layer(B, ["v"], [[1]])
    assert verify_inflation(d).ok
    A = assemble_cellular(d)
    assert verify_cellularity(A).ok
    for i, j in itertools.product(range(B.dim), repeat=2):
        assert A.product(i, j) == B.product(i, j)
    for lam in B.indices:
        assert cell_form(A, A.label("only", lam)) == cell_form(B, lam)
        im = inflation_cell_module(d, "only", lam)
        assert im.gram == cell_form(B, lam)


@pytest.mark.parametrize("B", [dual_numbers(QQ), sym_group(2, QQ)], ids=lambda d: d.name)
def test_two_dimensional_v(B):
    d = single_layer(B, ["v1", "v2"], SWAP)
    rep = verify_inflation(d)
    assert rep.ok, str(rep)
    psi = derive_psi(d, "only")
    assert psi("v1", "v2") == B.one and psi("v1", "v1") == {}
    A = assemble_cellular(d)
    assert verify_cellularity(A).ok
    assert A.dim == 4 * B.dim
    swap = Matrix.from_rows(QQ, SWAP)
    for lam in B.indices:
        label = A.label("only", lam)
        expected = kronecker(swap, cell_form(B, lam))
        assert cell_form(A, label) == expected
        im = inflation_cell_module(d, "only", lam)
        assert im.gram == expected
        cm = cell_module(A, label)
        for a in d.ambient_basis():
            assert im.action(a) == cm.action(A.from_ambient({a: 1}))


def test_antisymmetric_form_is_detected():
    d = single_layer(dual_numbers(QQ), ["v1", "v2"], [[0, 1], [-1, 0]])
    with pytest.raises(InflationError, match="psi"):
        derive_psi(d, "only")
    assert not verify_cellularity(assemble_cellular(d)).ok


def test_dual_numbers_as_an_inflation():
    d = dual_as_inflation()
    assert verify_inflation(d).ok
    assert derive_psi(d, "top")("*", "*") == {0: 1}
    assert derive_psi(d, "bot")("*", "*") == {}
    A = assemble_cellular(d)
    assert verify_cellularity(A).ok
    assert cell_form(A, ("bot", "k")) == Matrix.from_rows(QQ, [[0]])


def test_upward_escape_is_reported():
    d = dual_as_inflation(mutate={("x", "1"): {"1": 1}})
    rep = verify_inflation(d)
    assert not rep.ok
    bad = rep.first("multiplication congruence")
    assert bad is not None and "higher layer" in bad.detail


def test_dependence_on_the_cofactor_is_reported():
    # (v2 b w) a behaves differently from (v1 b w) a
    def mutate(a, b, out):
        if a[0] == "v2" and out:
            return {k: 2 * v for k, v in out.items()}
        return out

    d = single_layer(trivial(QQ), ["v1", "v2"], SWAP, mutate=mutate)
    rep = verify_inflation(d)
    assert rep.failures("multiplication congruence")


def test_wrong_closed_form_is_caught():
    base = dual_numbers(QQ)
    d = wreath_inflation(base, 2)
    good = d.theta_phi

    def bad(mu, w, a):
        theta, phi = good(mu, w, a)
        return theta, {v: 2 * c for v, c in phi.items()}

    d.theta_phi = bad
    rep = verify_inflation(d)
    assert rep.failures("closed form matches extractor")
    assert not rep.failures("multiplication congruence")


def test_probed_verification_notes_the_sample():
    d = wreath_inflation(dual_numbers(QQ), 2)
    rep = verify_inflation(d, probes=10, seed=3)
    assert rep.ok and rep.checked["closed form matches extractor"] == 10
    assert any("10 random" in n for n in rep.notes)


def test_k_wreath_s2():
    W = build_wreath(trivial(QQ), 2)
    assert verify_inflation(W.inflation).ok
    assert [L.label for L in W.inflation.layers] == [(2,)]
    assert W.cellular.dim == 2 and len(W.cellular.indices) == 2
    # Murphy basis: C^(2) = 1 + (1,2) squares to twice itself, C^(1,1) = 1
    im = inflation_cell_module(W.inflation, (2,), ((2,),))
    assert im.dim == 1 and im.gram == Matrix.from_rows(QQ, [[2]])
    assert inflation_cell_module(W.inflation, (2,), ((1, 1),)).gram == Matrix.from_rows(QQ, [[1]])


@pytest.mark.parametrize("p", [0, 2, 3])
def test_dual_wreath_s2_grams(p):
    W = build_wreath(dual_numbers(Field(p)), 2)
    assert W.cellular.dim == 8
    for mu in W.layer_order:
        L = W.layer(mu)
        for lam in L.algebra.indices:
            im = inflation_cell_module(W.inflation, mu, lam)
            assert im.gram == cell_form(W.cellular, W.cellular.label(mu, lam))


def test_unknown_layer():
    d = dual_as_inflation()
    with pytest.raises(KeyError):
        inflation_cell_module(d, "middle", "k")
    with pytest.raises(KeyError):
        inflation_cell_module(d, "top", "nope")
