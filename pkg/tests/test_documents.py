import json

import pytest

from lcworkbench.catalog import build_K2, build_KB_quotient, build_k
from lcworkbench.documents import (DocumentError, algebra_from_doc, algebra_to_doc,
                                   dump_document, load_document, module_from_doc,
                                   module_to_doc, report_json)
from lcworkbench.modules import build_module, reverse_parity

try:
    import tomllib
except ModuleNotFoundError:
    import tomli as tomllib


def _tables(A):
    return {(a.name, b.name): str(v) for (a, b), v in A.table.items() if v}


@pytest.mark.parametrize("A", [build_KB_quotient(-1, 2), build_KB_quotient("1/2", 1),
                               build_k(2), build_K2(3)], ids=lambda A: A.name)
@pytest.mark.parametrize("fmt", ["json", "toml"])
def test_algebra_round_trip(A, fmt, tmp_path):
    text = dump_document(algebra_to_doc(A), fmt)
    path = tmp_path / f"a.{fmt}"
    path.write_text(text)
    B = algebra_from_doc(load_document(path))
    assert _tables(B) == _tables(A)
    assert [s.name for s in B.basis] == [s.name for s in A.basis]
    assert all(r.passed for r in B.check_axioms().values())


def test_toml_is_parseable():
    doc = algebra_to_doc(build_KB_quotient(2, 1))
    assert tomllib.loads(dump_document(doc, "toml")) == json.loads(dump_document(doc))


@pytest.mark.parametrize("fmt", ["json", "toml"])
def test_module_round_trip(fmt, tmp_path):
    A = build_KB_quotient(-1, 2)
    for M in (build_module("V22", {"delta": "1/2", "lam": -1, "alpha": 2, "beta": 3}, A),
              reverse_parity(build_module("V2", {"delta": 0, "alpha": "-1/3"}, A)),
              build_module("trivial", {"alpha": 4}, A, parity=1)):
        path = tmp_path / f"m.{fmt}"
        path.write_text(dump_document(module_to_doc(M), fmt))
        N = module_from_doc(load_document(path))
        assert N.label() == M.label()
        assert {(a.name, g.name): str(v) for (a, g), v in N.actions.items()} == \
            {(a.name, g.name): str(v) for (a, g), v in M.actions.items()}
        assert [(g.name, g.parity) for g in N.generators] == [(g.name, g.parity) for g in M.generators]


def test_module_raw_tables():
    A = build_KB_quotient(2, 1)
    doc = module_to_doc(build_module("V1", {"delta": 1, "alpha": 1}, A))
    del doc["family"]
    M = module_from_doc(doc)
    assert M.family == "custom" and M.check_module_axioms().passed
    doc["actions"][0]["value"] = "(D + 7)*v0"
    assert not module_from_doc(doc).check_module_axioms().passed


def test_bad_documents(tmp_path):
    with pytest.raises(DocumentError):
        load_document(tmp_path / "missing.json")
    bad = tmp_path / "bad.toml"
    bad.write_text("schemaVersion = [")
    with pytest.raises(DocumentError):
        load_document(bad)
    doc = algebra_to_doc(build_KB_quotient(2, 0))
    doc["schemaVersion"] = 7
    with pytest.raises(DocumentError, match="schemaVersion"):
        algebra_from_doc(doc)
    doc = algebra_to_doc(build_KB_quotient(2, 0))
    doc["brackets"][0]["left"] = "Q_0"
    with pytest.raises(DocumentError):
        algebra_from_doc(doc)
    with pytest.raises(DocumentError, match="algebra"):
        module_from_doc({"family": {"name": "V1"}})


def test_report_json_is_deterministic():
    from fractions import Fraction

    a = report_json({"b": Fraction(-1, 2), "_hidden": 1, "a": [Fraction(3)]})
    assert a == report_json({"b": Fraction(-1, 2), "_hidden": 1, "a": [Fraction(3)]})
    body = json.loads(a)
    assert list(body)[0] == "schemaVersion" and body["b"] == "-1/2" and "_hidden" not in body
