from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import pytest

from wreathcell.builtins import dual_numbers, label_text, matrix_units, sym_group, trivial
from test_inflation import dual_as_inflation, single_layer
from wreathcell.cellular import cell_form, verify_cellularity
from wreathcell.datumfile import (
    DatumFormatError,
    datum_from_document,
    datum_to_document,
    dump_datum,
    dump_inflation,
    inflation_from_document,
    load_datum,
    load_inflation,
)
from wreathcell.exactalg import QQ, Field
from wreathcell.inflation import assemble_cellular, verify_inflation

DATA = Path(__file__).parent / "data"


def same_structure(a, b) -> bool:
    return a.dim == b.dim and all(a.product(i, j) == b.product(i, j) for i in range(a.dim) for j in range(a.dim)) \
        and all(a.star(i) == b.star(i) for i in range(a.dim))


@pytest.mark.parametrize("d", [trivial(QQ), dual_numbers(Field(3)), matrix_units(QQ, 2), sym_group(3, Field(2))],
                         ids=lambda d: d.name)
def test_round_trip(d, tmp_path):
    path = tmp_path / "d.datum"
    dump_datum(d, path, label=plain_label)
    back = load_datum(path)
    assert back.field == d.field
    assert same_structure(d, back)
    assert verify_cellularity(back).ok


def test_rational_coefficients():
    doc = datum_to_document(trivial(QQ))
    doc["products"]["1,1|1,1@k,k"] = ["2/2"]
    d = datum_from_document(doc)
    assert d.product(0, 0) == {0: 1}
    doc["products"]["1,1|1,1@k,k"] = ["1/2"]
    assert datum_from_document(doc).product(0, 0) == {0: Fraction(1, 2)}


def test_swapped_fixture_fails_verification():
    d = load_datum(DATA / "swapped_dual.datum")
    rep = verify_cellularity(d)
    assert not rep.ok and rep.first("multiplication rule") is not None


@pytest.mark.parametrize("mutate, message", [
    (lambda doc: doc.pop("star"), "malformed"),
    (lambda doc: doc.update(field=4), "malformed"),
    (lambda doc: doc["products"].update({"nope": ["1"]}), "unknown product key"),
    (lambda doc: doc["products"].update({"1,1|1,1@k,k": ["1", "2"]}), "needs a list"),
    (lambda doc: doc["products"].update({"1,1|1,1@k,k": [1.5]}), "must be an integer"),
    (lambda doc: doc["star"].update({"1,1@k": "2,2@k"}), "unknown basis element"),
    (lambda doc: doc["m_sets"].update({"k": ["a,b"]}), "separator"),
])
def test_malformed_documents(mutate, message):
    doc = datum_to_document(trivial(QQ))
    mutate(doc)
    with pytest.raises(DatumFormatError, match=message):
        datum_from_document(doc)


def test_unreadable_files(tmp_path):
    with pytest.raises(DatumFormatError):
        load_datum(tmp_path / "missing.datum")
    bad = tmp_path / "bad.datum"
    bad.write_text("[1, 2]")
    with pytest.raises(DatumFormatError):
        load_datum(bad)
    bad.write_text("{not json")
    with pytest.raises(DatumFormatError):
        load_datum(bad)


def test_document_is_plain_json():
    text = json.dumps(datum_to_document(dual_numbers(QQ)), sort_keys=True)
    assert json.loads(text)["cell_indices"] == ["top", "bot"]


# --- inflation documents -------------------------------------------------------


def plain_label(x) -> str:
    return label_text(x).replace(",", ".").replace("|", "/").replace("@", "a")


@pytest.mark.parametrize("make", [
    lambda: dual_as_inflation(),
    lambda: single_layer(sym_group(2, QQ), ["v1", "v2"], [[0, 1], [1, 0]]),
    lambda: single_layer(dual_numbers(QQ), ["v"], [[1]]),
], ids=["dual", "kS2-swap", "dual-single"])
def test_inflation_round_trip(make, tmp_path):
    d = make()
    path = tmp_path / "d.inflation"
    dump_inflation(d, path, label=plain_label)
    back = load_inflation(path)
    assert back.dim == d.dim and back.field == d.field
    assert verify_inflation(back).ok
    A, B = assemble_cellular(d), assemble_cellular(back)
    assert [cell_form(A, lam) for lam in A.indices] == [cell_form(B, lam) for lam in B.indices]


def test_matrix_units_file():
    d = load_inflation(DATA / "matrix_units.inflation")
    assert d.name == "2x2 matrices" and d.dim == 4
    assert verify_inflation(d).ok
    A = assemble_cellular(d)
    assert verify_cellularity(A).ok
    (lam,) = A.indices
    assert cell_form(A, lam).to_rows() == [[1, 0], [0, 1]]


def test_corrupted_inflation_product_is_caught():
    doc = json.loads((DATA / "matrix_units.inflation").read_text())
    doc["products"]["e12|e21"] = {"e22": 1}
    rep = verify_inflation(inflation_from_document(doc))
    assert not rep.ok


@pytest.mark.parametrize("edit, message", [
    (lambda doc: doc["layers"].pop("e11"), "need 4"),
    (lambda doc: doc["layers"].__setitem__("e11", ["only", "v9", "1,1@k", "v1"]), "unknown layer element"),
    (lambda doc: doc["layers"].__setitem__("e11", ["only", "v1"]), "must be"),
    (lambda doc: doc["products"].__setitem__("e11|e99", {}), "unknown product key"),
    (lambda doc: doc["unit"].__setitem__("e99", 1), "unknown basis element"),
    (lambda doc: doc.pop("star"), "malformed"),
    (lambda doc: doc["star"].pop("e11"), "missing"),
    (lambda doc: doc["layers"].__setitem__("e12", ["only", "v1", "1,1@k", "v1"]), "share"),
])
def test_malformed_inflation_documents(edit, message):
    doc = json.loads((DATA / "matrix_units.inflation").read_text())
    edit(doc)
    with pytest.raises(DatumFormatError, match=message):
        inflation_from_document(doc)
