import json

import pytest

from explosion.core import FiniteStructure
from explosion.formula import parse
from explosion.gallery import ValidationError, load_builtin, pure_reflexive
from explosion.matrix import entails
from explosion.serialize import (
    canonical_dumps, digest, finite_from_json, finite_to_json, load_logic_doc, make_report,
    matrix_from_json, matrix_to_json, read_logic, validate,
)


@pytest.mark.parametrize("s", [
    pure_reflexive(3),
    FiniteStructure.from_trivial_family(3, [4, 3, 7], unary_ops={"neg": (1, 0, 2)}),
    FiniteStructure.from_trivial_family(2, [1], constants={"⊥": 0}),
])
def test_finite_round_trip(s):
    doc = finite_to_json(s)
    validate(doc, "logic_spec")
    assert finite_from_json(doc) == s
    assert load_logic_doc(json.loads(json.dumps(doc))) == s


@pytest.mark.parametrize("name", ["cpc", "pwk", "p1", "lp", "pac", "b3"])
def test_matrix_round_trip(name):
    m = load_builtin(name)
    doc = matrix_to_json(m)
    validate(doc, "logic_spec")
    back = matrix_from_json(doc)
    assert back.values == m.values and back.designated == m.designated
    for c in m.sig.connectives:
        assert back.op_table(c.name) == m.op_table(c.name)
    assert entails(back, [parse("p", m.sig)], parse("p", m.sig))


def test_signature_presets():
    doc = {"kind": "matrix", "name": "two", "values": ["0", "1"], "designated": ["1"],
           "signature": "neg_imp",
           "tables": {"¬": ["1", "0"], "→": [["1", "1"], ["0", "1"]]}}
    m = load_logic_doc(doc)
    assert [c.name for c in m.sig.connectives] == ["¬", "→"]


@pytest.mark.parametrize("doc", [
    {"kind": "finite", "carrier": 2, "table": [[[], []]]},  # not total
    {"kind": "finite", "carrier": 2, "table": [[[], []], [[0], [0]], [[1], [1]], [[0, 1], [0, 5]]]},
    {"kind": "matrix", "name": "x", "values": ["0", "1"], "designated": ["1"], "signature": "classical",
     "tables": {"¬": ["1"]}},
    {"kind": "unknown"},
    {"kind": "builtin", "name": "nope"},
])
def test_bad_documents(doc):
    with pytest.raises(ValidationError):
        load_logic_doc(doc)


def test_read_logic_errors(tmp_path):
    with pytest.raises(ValidationError):
        read_logic(str(tmp_path / "missing.json"))
    bad = tmp_path / "bad.json"
    bad.write_text("{", "utf-8")
    with pytest.raises(ValidationError):
        read_logic(str(bad))
    logic, doc = read_logic("builtin:cpc")
    assert doc == {"kind": "builtin", "name": "cpc"}


def test_digest_is_order_independent():
    a = {"x": 1, "y": [1, 2], "z": {"b": 1, "a": 2}}
    b = {"z": {"a": 2, "b": 1}, "y": [1, 2], "x": 1}
    assert canonical_dumps(a) == canonical_dumps(b)
    assert digest(a) == digest(b) and len(digest(a)) == 64
    assert digest(a) != digest({**a, "x": 2})


def test_report_schema():
    rep = make_report("check", {"logic": {"kind": "builtin", "name": "cpc"}}, {"pool_vars": 2},
                      [{"principle": "gecq", "verdict": "proven", "scope": {"kind": "exact"},
                        "witness": None, "timing": 0.1}])
    validate(rep, "report")
    rep["input_digest"] = "short"
    with pytest.raises(ValidationError):
        validate(rep, "report")
