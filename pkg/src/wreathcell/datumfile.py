"""
Reading and writing cellular data as JSON documents.

Document layout::

    {
      "field": 0,                       # 0 or a prime
      "cell_indices": ["top", "bot"],   # highest first
      "m_sets": {"top": ["1"], "bot": ["x"]},
      "products": {"1,1|x,x@top,bot": ["0", "1"], ...},
      "star": {"1,1@top": "1,1@top", ...}
    }

A product key "S,T|U,W@lam,mu" stands for C^lam_{S,T} C^mu_{U,W}; its value is the
coefficient list over the whole basis in canonical order (cell indices as listed,
then S, then T). Omitted products are zero. Coefficients are integers or decimal
strings "a/b". Labels may not contain the separators ``,``, ``|`` or ``@``.

An inflation document describes an ambient algebra by its own basis keys and adds
the layer structure; every B_mu is a nested cellular datum document and b names a
basis element of it as "S,T@lam"::

    {
      "field": 0,
      "layer_data": [{"label": "top", "vbasis": ["*"], "algebra": {...}}, ...],
      "layers": {"1": ["top", "*", "1,1@k", "*"], "x": ["bot", "*", "1,1@k", "*"]},
      "products": {"1|x": {"x": 1}, ...},
      "star": {"1": "1", "x": "x"},
      "unit": {"1": 1}
    }

Layers are listed highest first. Ambient products are sparse maps; omitted
products are zero.
"""

from __future__ import annotations

import json
from collections.abc import Mapping
from fractions import Fraction
from pathlib import Path
from typing import Any

from .cellular import CellularDatum
from .exactalg import Field
from .inflation import InflationDatum, Layer

_SEPARATORS = set(",|@")


class DatumFormatError(ValueError):
    pass


def _basis_key(s, t, lam) -> str:
    return f"{s},{t}@{lam}"


def _product_key(a, b) -> str:
    (lam, s, t), (mu, u, w) = a, b
    return f"{s},{t}|{u},{w}@{lam},{mu}"


def _coefficient(field: Field, x) -> Any:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise DatumFormatError(f"coefficient {x!r} must be an integer or a string 'a/b'")
    try:
        return field(Fraction(x) if isinstance(x, str) else x)
    except (ValueError, ZeroDivisionError) as exc:
        raise DatumFormatError(f"bad coefficient {x!r}: {exc}") from None


def datum_from_document(doc: dict, name: str = "") -> CellularDatum:
    try:
        field = Field(int(doc["field"]))
        indices = [str(x) for x in doc["cell_indices"]]
        m_sets = {str(k): [str(x) for x in v] for k, v in doc["m_sets"].items()}
        products_doc = doc.get("products", {})
        star_doc = doc["star"]
    except (KeyError, TypeError, ValueError) as exc:
        raise DatumFormatError(f"malformed datum document: {exc}") from None
    for lam in indices:
        if lam not in m_sets:
            raise DatumFormatError(f"m_sets has no entry for cell index {lam!r}")
        for label in [lam, *m_sets[lam]]:
            if _SEPARATORS & set(label):
                raise DatumFormatError(f"label {label!r} contains a separator")
    keys = [(lam, s, t) for lam in indices for s in m_sets[lam] for t in m_sets[lam]]
    index = {k: i for i, k in enumerate(keys)}
    by_text = {_basis_key(s, t, lam): i for (lam, s, t), i in index.items()}
    n = len(keys)

    table = [[{} for _ in range(n)] for _ in range(n)]
    pair_index = {_product_key(a, b): (i, j) for i, a in enumerate(keys) for j, b in enumerate(keys)}
    for key, coeffs in products_doc.items():
        if key not in pair_index:
            raise DatumFormatError(f"unknown product key {key!r}")
        if not isinstance(coeffs, list) or len(coeffs) != n:
            raise DatumFormatError(f"product {key!r} needs a list of {n} coefficients")
        i, j = pair_index[key]
        table[i][j] = {k: c for k, x in enumerate(coeffs) if (c := _coefficient(field, x))}

    star = [None] * n
    for key, value in star_doc.items():
        if key not in by_text or value not in by_text:
            raise DatumFormatError(f"star entry {key!r} -> {value!r} names an unknown basis element")
        star[by_text[key]] = by_text[value]
    if None in star:
        missing = [_basis_key(s, t, lam) for (lam, s, t), x in zip(keys, star) if x is None]
        raise DatumFormatError(f"star is missing basis elements {missing}")
    return CellularDatum(field, indices, m_sets, table, star, name=name or doc.get("name", "datum"))


def _read_document(path: str | Path) -> dict:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise DatumFormatError(f"cannot read {path}: {exc}") from None
    if not isinstance(doc, dict):
        raise DatumFormatError("datum document must be a JSON object")
    doc.setdefault("name", path.stem)
    return doc


def load_datum(path: str | Path) -> CellularDatum:
    doc = _read_document(path)
    return datum_from_document(doc, name=doc["name"])


def datum_to_document(d: CellularDatum, label=str) -> dict:
    """Serialise a datum; ``label`` turns cell indices and M-labels into strings."""
    def txt(x):
        s = label(x)
        if _SEPARATORS & set(s):
            raise DatumFormatError(f"label {s!r} contains a separator")
        return s

    keys = [(txt(lam), txt(s), txt(t)) for lam, s, t in d.keys]
    products = {}
    for i in range(d.dim):
        for j in range(d.dim):
            prod = d.product(i, j)
            if prod:
                products[_product_key(keys[i], keys[j])] = [str(prod.get(k, 0)) for k in range(d.dim)]
    star = {}
    for i in range(d.dim):
        (j, c), = d.star(i).items()
        if c != 1:
            raise DatumFormatError("star must map basis elements to basis elements")
        star[_basis_key(keys[i][1], keys[i][2], keys[i][0])] = _basis_key(keys[j][1], keys[j][2], keys[j][0])
    return {
        "name": d.name,
        "field": d.field.characteristic,
        "cell_indices": [txt(lam) for lam in d.indices],
        "m_sets": {txt(lam): [txt(s) for s in d.m_sets[lam]] for lam in d.indices},
        "products": products,
        "star": star,
    }


def dump_datum(d: CellularDatum, path: str | Path, label=str):
    Path(path).write_text(json.dumps(datum_to_document(d, label), indent=1, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# inflation documents


def _sparse(field: Field, doc, known: Mapping[str, object], what: str) -> dict:
    if not isinstance(doc, dict):
        raise DatumFormatError(f"{what} must be a map from basis keys to coefficients")
    out = {}
    for key, x in doc.items():
        if key not in known:
            raise DatumFormatError(f"{what} names an unknown basis element {key!r}")
        c = _coefficient(field, x)
        if c:
            out[key] = c
    return out


def inflation_from_document(doc: dict, name: str = "") -> InflationDatum:
    """Build an :class:`InflationDatum` whose ambient basis keys are the strings of
    the ``layers`` section and whose B_mu use their cellular bases."""
    try:
        field = Field(int(doc["field"]))
        layer_docs = list(doc["layer_data"])
        placement = dict(doc["layers"])
        products_doc = dict(doc.get("products", {}))
        star_doc = dict(doc["star"])
        unit_doc = doc["unit"]
    except (KeyError, TypeError, ValueError) as exc:
        raise DatumFormatError(f"malformed inflation document: {exc}") from None

    layers, bkeys = [], {}
    for ld in layer_docs:
        try:
            label, vbasis, algebra = str(ld["label"]), [str(v) for v in ld["vbasis"]], ld["algebra"]
        except (KeyError, TypeError) as exc:
            raise DatumFormatError(f"malformed layer entry: {exc}") from None
        B = datum_from_document({"field": field.characteristic, **algebra}, name=f"B_{label}")
        if label in bkeys:
            raise DatumFormatError(f"layer {label!r} is listed twice")
        bkeys[label] = {_basis_key(s, t, lam): i for i, (lam, s, t) in enumerate(B.keys)}
        layers.append(Layer.on_cellular_basis(label, vbasis, B))
    vsets = {L.label: set(L.vbasis) for L in layers}

    where: dict[str, tuple] = {}
    for key, entry in placement.items():
        if "|" in key:
            raise DatumFormatError(f"ambient key {key!r} contains '|'")
        if not isinstance(entry, list) or len(entry) != 4:
            raise DatumFormatError(f"layer entry of {key!r} must be [mu, u, b, w]")
        mu, u, b, w = (str(x) for x in entry)
        if mu not in bkeys or u not in vsets[mu] or w not in vsets[mu] or b not in bkeys[mu]:
            raise DatumFormatError(f"layer entry {entry!r} of {key!r} names an unknown layer element")
        where[key] = (mu, u, bkeys[mu][b], w)
    home = {v: k for k, v in where.items()}
    if len(home) != len(where):
        raise DatumFormatError("two ambient keys share a layer position")
    expected = sum(len(L.vbasis) ** 2 * L.algebra.dim for L in layers)
    if len(where) != expected:
        raise DatumFormatError(f"layers section has {len(where)} ambient keys, the layers need {expected}")

    table: dict[tuple[str, str], dict] = {}
    for key, value in products_doc.items():
        a, sep, b = key.partition("|")
        if not sep or a not in where or b not in where:
            raise DatumFormatError(f"unknown product key {key!r}")
        table[(a, b)] = _sparse(field, value, where, f"product {key!r}")
    star = {}
    for key, value in star_doc.items():
        if key not in where or value not in where:
            raise DatumFormatError(f"star entry {key!r} -> {value!r} names an unknown basis element")
        star[key] = value
    if len(star) != len(where):
        raise DatumFormatError("star is missing ambient basis elements")
    unit = _sparse(field, unit_doc, where, "unit")

    def embed(mu, u, b, w):
        try:
            return home[(mu, u, b, w)]
        except KeyError:
            raise DatumFormatError(f"no ambient key at {(mu, u, b, w)!r}") from None

    return InflationDatum(field, layers, embed=embed, locate=lambda a: where[a],
                          amul=lambda a, b: table.get((a, b), {}), astar=lambda a: {star[a]: 1},
                          aunit=unit, name=name or doc.get("name", "inflation"))


def load_inflation(path: str | Path) -> InflationDatum:
    doc = _read_document(path)
    return inflation_from_document(doc, name=doc["name"])


def inflation_to_document(d: InflationDatum, label=str) -> dict:
    """Serialise an inflation whose layers use the cellular basis of B_mu as their
    B-basis; ``label`` turns every label and ambient key into a string."""
    keys = d.ambient_basis()
    text = {a: label(a) for a in keys}
    if len(set(text.values())) != len(keys) or any("|" in t for t in text.values()):
        raise DatumFormatError("ambient keys must have distinct string forms without '|'")
    layer_data, placement = [], {}
    for L in d.layers:
        if L.bbasis != tuple(range(L.algebra.dim)):
            raise DatumFormatError(f"layer {L.label!r} does not use the cellular basis of B")
        algebra = datum_to_document(L.algebra, label)
        del algebra["field"]
        layer_data.append({"label": label(L.label), "vbasis": [label(v) for v in L.vbasis], "algebra": algebra})
        bnames = [_basis_key(label(s), label(t), label(lam)) for lam, s, t in L.algebra.keys]
        for u in L.vbasis:
            for b in L.bbasis:
                for w in L.vbasis:
                    placement[text[d.embed(L.label, u, b, w)]] = [label(L.label), label(u), bnames[b], label(w)]

    def coeffs(vec):
        return {text[k]: str(c) for k, c in vec.items() if c}

    products = {}
    for a in keys:
        for b in keys:
            prod = d.amul(a, b)
            if any(prod.values()):
                products[f"{text[a]}|{text[b]}"] = coeffs(prod)
    star = {}
    for a in keys:
        (s, c), = d.astar(a).items()
        if c != 1:
            raise DatumFormatError("star must map basis elements to basis elements")
        star[text[a]] = text[s]
    return {"name": d.name, "field": d.field.characteristic, "layer_data": layer_data, "layers": placement,
            "products": products, "star": star, "unit": coeffs(d.aunit)}


def dump_inflation(d: InflationDatum, path: str | Path, label=str):
    Path(path).write_text(json.dumps(inflation_to_document(d, label), indent=1, sort_keys=True) + "\n")
