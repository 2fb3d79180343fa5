import random

import numpy as np
import pytest

from explosion.core import BudgetExceeded, DomainError
from explosion.formula import CLASSICAL, NEG_IMP, App, Var, enumerate_pool, parse, substitute, variables
from explosion.gallery import b3, cpc, lp, p1, pac, pwk
from explosion.matrix import (
    Evaluator, Matrix, entails, evaluate, is_antitheorem, satisfiable, semantic_key, semantic_pool, trivializes,
)

P, Q = Var("p"), Var("q")
MATRICES = [cpc(), pwk(), b3(), lp(), pac(), p1()]


def test_evaluate_examples():
    assert evaluate(cpc(), {"p": "1"}, parse("¬p")) == "0"
    for vq in ("0", "e", "1"):
        assert evaluate(pwk(), {"p": "e", "q": vq}, parse("p ∨ q")) == "e"
    m = p1()
    for vp in m.values:
        assert evaluate(m, {"p": vp}, parse("¬(p → p)", NEG_IMP)) not in m.designated


def test_entailment_examples():
    assert entails(cpc(), [P, parse("¬p")], Q)
    assert not entails(pwk(), [P, parse("¬p")], Q)
    assert entails(cpc(), [P, parse("p → ¬p")], Q)


def test_trivialization_examples():
    assert trivializes(cpc(), [parse("p ∧ ¬p")])
    assert trivializes(p1(), [parse("¬(p → p)", NEG_IMP)])
    assert not trivializes(pwk(), [P, parse("¬p")])
    assert is_antitheorem(cpc(), [parse("p ∧ ¬p")])
    assert not is_antitheorem(cpc(), [P])
    assert not is_antitheorem(pwk(), [P, parse("¬p")])


def test_designated_must_be_proper():
    m = cpc()
    with pytest.raises(DomainError):
        Matrix("bad", m.sig, m.values, frozenset(m.values), m.tables)
    bad = dict(m.tables)
    bad["¬"] = np.array([1, 2])
    with pytest.raises(DomainError):
        Matrix("bad", m.sig, m.values, m.designated, bad)


def test_variable_cap():
    f = parse("p ∧ q ∧ r")
    with pytest.raises(BudgetExceeded):
        entails(cpc(), [f], P, max_vars=2)


def test_evaluator_bits_match_designation():
    m = pwk()
    ev = Evaluator(m, ["p", "q"])
    f = parse("p → q")
    bits = ev.bits(f)
    for i, ok in enumerate(ev.designated(f)):
        assert bool(bits >> i & 1) == bool(ok)


def test_p1_desk_facts():
    m = p1()
    pool = enumerate_pool(NEG_IMP, ["p", "q"], 2)
    for a in pool:
        assert entails(m, [], App("→", (a, a)))
        assert trivializes(m, [App("¬", (App("→", (a, a)),))])
        # {α, ¬α} explodes exactly when α is not a variable
        assert trivializes(m, [a, App("¬", (a,))]) == (not isinstance(a, Var))


def _sample(pool, rng, k):
    return [rng.choice(pool) for _ in range(k)]


@pytest.mark.parametrize("m", MATRICES, ids=lambda m: m.name)
def test_tarskian_and_structural_on_random_instances(m):
    rng = random.Random(3)
    pool = enumerate_pool(m.sig, ["p", "q"], 2)
    for _ in range(200):
        gamma = _sample(pool, rng, rng.randint(0, 3))
        a = rng.choice(pool)
        extra = rng.choice(pool)
        if gamma:
            assert entails(m, gamma, rng.choice(gamma))
        if entails(m, gamma, a):
            assert entails(m, gamma + [extra], a)
            sigma = {"p": rng.choice(pool), "q": rng.choice(pool)}
            assert entails(m, [substitute(sigma, g) for g in gamma], substitute(sigma, a))
        if is_antitheorem(m, gamma):
            sigma = {"p": rng.choice(pool), "q": rng.choice(pool)}
            assert is_antitheorem(m, [substitute(sigma, g) for g in gamma])


@pytest.mark.parametrize("m", MATRICES, ids=lambda m: m.name)
def test_trivial_sets_entail_everything(m):
    pool = enumerate_pool(m.sig, ["p", "q"], 2)
    triv = [a for a in pool if trivializes(m, [a])][:10]
    for t in triv:
        for b in pool:
            assert entails(m, [t], b)


def test_semantic_pool_class_counts():
    vs = ["p", "q"]
    assert len(semantic_pool(cpc(), CLASSICAL, vs, 3)) == 26
    assert len(semantic_pool(p1(), NEG_IMP, vs, 3)) == 84


@pytest.mark.parametrize("m", [cpc(), pwk(), p1()], ids=lambda m: m.name)
def test_semantic_pool_covers_literal_pool(m):
    vs = ["p", "q"]
    reps = semantic_pool(m, m.sig, vs, 2)
    evs = [Evaluator(m, vs)]
    keys = {semantic_key(evs, r) for r in reps}
    assert len(keys) == len(reps)
    for f in enumerate_pool(m.sig, vs, 2):
        assert semantic_key(evs, f) in keys


def test_satisfiable_empty_set():
    assert satisfiable(cpc(), [])
    assert variables([]) == frozenset()
