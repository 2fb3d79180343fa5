import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import finite_structures
from explosion.core import (
    INTEGERS, NATURALS, BudgetExceeded, Carrier, DomainError, FiniteStructure, SentenceSet,
    consequence, finite_carrier, is_trivial, submasks, tarskian_report,
)
from explosion.gallery import load_builtin, poset_logic, PosetSpec, pure_reflexive
from explosion.miner import enumerate_structures


def F(*xs, c=NATURALS):
    return SentenceSet.finite(c, xs)


def CO(*xs, c=NATURALS):
    return SentenceSet.cofinite_of(c, xs)


def test_set_identities():
    assert F(1, 2) | CO(2, 3) == CO(3)
    assert CO(5) & F(4, 5, 6) == F(4, 6)
    assert not CO().is_proper()
    assert CO(0).is_proper()


def test_finite_carrier_normalizes_cofinite():
    c = finite_carrier(4)
    s = SentenceSet.cofinite_of(c, [1])
    assert not s.cofinite and s.elements == (0, 2, 3)
    assert SentenceSet.full(c).is_full()


def test_canonical_elements():
    assert F(3, 1, 3, 2).elements == (1, 2, 3)


def test_out_of_carrier():
    with pytest.raises(DomainError):
        F(-1)
    with pytest.raises(DomainError):
        SentenceSet.finite(finite_carrier(2), [2])
    with pytest.raises(DomainError):
        F(1) | SentenceSet.finite(INTEGERS, [1])


def test_carrier_windows():
    assert NATURALS.window(3) == [0, 1, 2]
    assert Carrier("positive").window(3) == [1, 2, 3]
    assert INTEGERS.window(5) == [0, -1, 1, -2, 2]
    with pytest.raises(DomainError):
        Carrier("finite")


def _random_set(rng, c):
    xs = rng.sample(range(-6, 7) if c is INTEGERS else range(0, 12), rng.randint(0, 5))
    return SentenceSet(c, xs, rng.random() < 0.5)


def _members(s, universe):
    return {x for x in universe if x in s}


@pytest.mark.parametrize("c", [NATURALS, INTEGERS])
def test_de_morgan_and_algebra_randomized(c):
    rng = random.Random(7)
    U = range(-20, 21)
    for _ in range(1000):
        a, b = _random_set(rng, c), _random_set(rng, c)
        assert (a | b).complement() == a.complement() & b.complement()
        assert (a & b).complement() == a.complement() | b.complement()
        assert _members(a | b, U) == _members(a, U) | _members(b, U)
        assert _members(a & b, U) == _members(a, U) & _members(b, U)
        assert _members(a - b, U) == _members(a, U) - _members(b, U)
        # normalizing twice changes nothing
        assert SentenceSet(c, a.elements, a.cofinite) == a
        assert a.complement().complement() == a


def test_structure_validation():
    with pytest.raises(DomainError):
        FiniteStructure(2, (0, 1, 2))
    with pytest.raises(DomainError):
        FiniteStructure(2, (0, 1, 2, 4))
    with pytest.raises(DomainError):
        FiniteStructure(2, (0, 1, 2, 3), {"f": (0, 2)})
    with pytest.raises(DomainError):
        FiniteStructure(0, (0,))
    with pytest.raises(DomainError):
        FiniteStructure(2, (0, 1, 2, 3), names=("a", "a"))


def test_consequence_examples():
    s = pure_reflexive(3)
    assert consequence(s, ["a"]).elements == (0,)
    assert not is_trivial(s, ["a", "b"])
    # reflexive, so the whole carrier explodes
    assert is_trivial(s, [0, 1, 2])
    t = FiniteStructure.from_trivial_family(3, [0b011])
    assert consequence(t, ["a", "b"]).is_full()


def test_reflexive_full_set_is_trivial():
    s = FiniteStructure.from_function(3, lambda m: m)
    assert s.table[7] == 7 and s.trivial[7]


@given(finite_structures())
def test_trivial_iff_consequence_full(s):
    for m in range(1 << s.size):
        g = SentenceSet.from_mask(s.carrier, m)
        assert is_trivial(s, g) == consequence(s, g).is_full()


def test_submasks():
    assert sorted(submasks(0b101)) == [0, 1, 4, 5]


def test_tarskian_examples():
    r = tarskian_report(pure_reflexive(3))
    assert r.reflexive and r.monotonic and r.transitive and r.tarskian
    p = PosetSpec.generated(("a", "b", "c"), [("a", "b")])
    r = tarskian_report(poset_logic(p))
    assert not r.reflexive and not r.monotonic
    s = FiniteStructure(2, (0, 3, 2, 3))  # C({a}) = 𝓛, C({a,b}) = 𝓛
    assert tarskian_report(s).monotonic_for_trivial_sets
    s = FiniteStructure(3, (0, 7, 2, 3, 4, 5, 6, 7))  # C({a}) = 𝓛 but C({a,b}) = {a,b}
    assert not tarskian_report(s).monotonic_for_trivial_sets


def test_reflexive_and_transitive_imply_monotone():
    # exhaustive over every reflexive and transitive table on 3 elements
    seen = []

    def visit(t):
        seen.append(t)

    enumerate_structures(3, ("reflexive", "transitive"), visit)
    tables = np.concatenate(seen)
    assert len(tables) > 0
    for row in tables:
        r = tarskian_report(FiniteStructure(3, tuple(int(x) for x in row)))
        assert r.reflexive and r.transitive and r.monotonic


def test_relabel_preserves_triviality_counts():
    s = FiniteStructure.from_trivial_family(3, [0b011, 0b100], unary_ops={"f": (1, 2, 0)})
    r = s.relabel((2, 0, 1))
    assert sum(r.trivial) == sum(s.trivial)
    assert r.relabel((1, 2, 0)).table == s.table


def test_tarskian_report_cap():
    with pytest.raises(BudgetExceeded):
        tarskian_report(FiniteStructure.from_function(11, lambda m: m))


@settings(max_examples=50)
@given(st.sampled_from(["ex-3-5", "ex-3-9", "ex-3-10", "ex-3-13", "ex-3-17", "ex-parecq"]))
def test_rule_oracle_matches_consequence(name):
    s = load_builtin(name)
    rng = random.Random(hash(name) & 0xFFFF)
    for _ in range(500):
        g = _random_set(rng, s.carrier) if s.carrier is INTEGERS else SentenceSet(
            s.carrier, [x for x in rng.sample(s.carrier.window(12), rng.randint(0, 5))], rng.random() < 0.3
        )
        assert s.oracle.is_trivial(g) == consequence(s, g).is_full()


def test_ex_3_10_pair_is_trivial():
    s = load_builtin("ex-3-10")
    assert is_trivial(s, [3, 4])
    assert consequence(s, [3, 4]).is_full()


def test_ex_3_5_interval_is_trivial():
    assert is_trivial(load_builtin("ex-3-5"), [2, 3, 4])
