import itertools

import pytest

from explosion.core import FiniteStructure, RuleStructure, consequence
from explosion.formula import CLASSICAL
from explosion.gallery import (
    PosetSpec, ValidationError, builtin_names, load_builtin, poset_logic, poset_valuation_logic,
    pure_reflexive, qcons_structure,
)
from explosion.matrix import Matrix
from explosion.principles import check


def test_cpc_builtin():
    m = load_builtin("cpc")
    assert isinstance(m, Matrix)
    assert m.values == ("0", "1") and m.designated == {"1"}


def test_pure_reflexive_builtin():
    s = load_builtin("pure-reflexive:3")
    assert s.table == tuple(range(8))
    assert load_builtin("pure-reflexive", n=4).size == 4
    with pytest.raises(ValidationError):
        load_builtin("pure-reflexive:x")
    with pytest.raises(ValidationError):
        pure_reflexive(0)


def test_ex_3_13_builtin():
    s = load_builtin("ex-3-13")
    assert isinstance(s, RuleStructure) and s.carrier.kind == "integers"
    assert s.unary_ops["neg"](5) == -5
    assert consequence(s, [2, -2]).is_full()
    assert not consequence(s, [2]).is_full()


def test_every_builtin_name_resolves_or_asks_for_parameters():
    for name in builtin_names():
        try:
            load_builtin(name)
        except ValidationError as e:
            assert "missing parameter" in str(e)
    with pytest.raises(ValidationError):
        load_builtin("nope")


def test_poset_validation():
    with pytest.raises(ValidationError):
        PosetSpec(("a", "b"), frozenset({("a", "a")}))
    with pytest.raises(ValidationError):
        PosetSpec(("a", "b"), frozenset({("a", "a"), ("b", "b"), ("a", "b"), ("b", "a")}))
    with pytest.raises(ValidationError):
        PosetSpec.generated(("a",), [("a", "z")])


def test_poset_logic_examples():
    anti = PosetSpec.generated(("a", "b"), [])
    s = poset_logic(anti)
    assert consequence(s, ["a"]).elements == (0,)
    assert not any(s.trivial[m] for m in (1, 2, 3))
    assert check(s, "nf_para").proven
    chain = PosetSpec.generated(("a", "b"), [("a", "b")])
    assert consequence(poset_logic(chain), ["a"]).is_full()
    back = poset_logic(anti, "backward")
    assert check(back, "nf_para").proven
    with pytest.raises(ValidationError):
        poset_logic(anti, "sideways")


def test_poset_valuation_examples():
    anti = PosetSpec.generated(("u", "v"), [])
    s = poset_valuation_logic(("x", "y"), anti, [{"x": "u", "y": "v"}])
    assert check(s, "nf_para").proven
    const = poset_valuation_logic(("x", "y"), anti, [{"x": "u", "y": "u"}])
    assert all(const.trivial)
    chain = PosetSpec.generated(("0", "1", "2"), [("0", "1"), ("1", "2")])
    s = poset_valuation_logic(("x", "y", "z"), chain, [("0", "1", "2")])
    t = poset_logic(PosetSpec.generated(("x", "y", "z"), [("x", "y"), ("y", "z")]))
    assert s.table == t.table
    with pytest.raises(ValidationError):
        poset_valuation_logic(2, anti, [])
    with pytest.raises(ValidationError):
        poset_valuation_logic(("x", "y"), anti, [{"x": "u"}])


def test_qcons_examples():
    n = 3
    s, ok = qcons_structure(n, list(range(8)))
    assert ok and s.table == pure_reflexive(3).table
    s, ok = qcons_structure(n, [0] * 8)
    assert ok and check(s, "nf_para").proven
    s, ok = qcons_structure(n, [7] * 8)
    assert ok and not check(s, "nf_para").proven


def test_qcons_theorem_exhaustive_n2():
    # every q-consequence operator with W(𝓛) ⊊ 𝓛 is NF-paraconsistent
    for W in itertools.product(range(4), repeat=4):
        s, ok = qcons_structure(2, W)
        if ok and W[3] != 3:
            assert check(s, "nf_para").proven, W


def test_matrix_signatures():
    assert load_builtin("pwk").sig == CLASSICAL
    assert "⊥" not in load_builtin("lp").sig
    assert [c.name for c in load_builtin("p1").sig.connectives] == ["¬", "→"]


def test_weak_kleene_tables_agree_with_cpc_on_classical_values():
    c, w = load_builtin("cpc"), load_builtin("pwk")
    for op in ("∧", "∨", "→"):
        t = w.op_table(op)
        for (a, b), v in c.op_table(op).items():
            assert t[(a, b)] == v
        assert all(v == "e" for k, v in t.items() if "e" in k)
