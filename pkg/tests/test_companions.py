import random

import pytest

from explosion.companions import CompanionLogic, companion_trivializes, entails_companion
from explosion.core import BudgetExceeded, DomainError
from explosion.formula import CLASSICAL_NO_BOT, App, Var, enumerate_pool, parse, parse_list, variables
from explosion.gallery import b3, cpc, pwk
from explosion.matrix import Matrix, entails, satisfiable, semantic_pool
from explosion.principles import check

C = cpc()
Q = Var("q")


def test_entailment_examples():
    assert entails_companion(C, "left", [parse("⊥")], Q)
    assert not entails_companion(C, "left", parse_list("p, ¬p"), Q)
    assert not entails_companion(C, "pure_right", parse_list("p, ¬p"), Q)


def test_trivialization_examples():
    assert companion_trivializes(C, "left", [parse("⊥")])
    assert not companion_trivializes(C, "pure_right", parse_list("p, ¬p"))
    assert companion_trivializes(C, "right", [parse("p ∧ ¬p")])
    assert companion_trivializes(C, "right", [parse("p ∧ ¬p")], strict=True)
    assert companion_trivializes(C, "right", parse_list("q, p ∧ ¬p"))


def test_strict_right_coincides_on_matrix_bases():
    # unsatisfiable sets are closed upward, so "is" and "contains" agree
    rng = random.Random(2)
    pool = enumerate_pool(C.sig, ["p", "q"], 2)
    for _ in range(300):
        gamma = [rng.choice(pool) for _ in range(rng.randint(1, 3))]
        a = rng.choice(pool)
        assert entails_companion(C, "right", gamma, a) == entails_companion(C, "right", gamma, a, strict=True)


def test_unknown_mode_and_cap():
    with pytest.raises(DomainError):
        entails_companion(C, "sideways", [], Q)
    with pytest.raises(BudgetExceeded):
        entails_companion(C, "left", [Var(f"v{i}") for i in range(20)], Q)


def test_left_companions_are_monotone():
    rng = random.Random(5)
    pool = enumerate_pool(C.sig, ["p", "q"], 2)
    for mode in ("left", "pure_left"):
        for _ in range(300):
            gamma = [rng.choice(pool) for _ in range(rng.randint(0, 2))]
            a, extra = rng.choice(pool), rng.choice(pool)
            if entails_companion(C, mode, gamma, a):
                assert entails_companion(C, mode, gamma + [extra], a)


def test_pure_left_without_bottom_has_no_trivial_pair_with_p():
    base = Matrix("cpc-no-bot", CLASSICAL_NO_BOT, C.values, C.designated,
                  {k: v for k, v in C.tables.items() if k != "⊥"})
    p = Var("p")
    # semantic classes: pure-left triviality only sees variables and truth tables
    for b in semantic_pool(base, CLASSICAL_NO_BOT, ["p", "q"], 3):
        assert not companion_trivializes(base, "pure_left", [p, b])


def test_bottom_is_a_gecq_witness_in_left_companions():
    bot = parse("⊥")
    for mode in ("left", "pure_left"):
        for a in enumerate_pool(C.sig, ["p", "q"], 2)[:50]:
            assert companion_trivializes(C, mode, [a, bot])


def test_right_trivial_sets_contain_unsatisfiable_subsets():
    rng = random.Random(11)
    pool = enumerate_pool(C.sig, ["p", "q"], 2)
    hits = 0
    for _ in range(400):
        gamma = [rng.choice(pool) for _ in range(rng.randint(1, 3))]
        if companion_trivializes(C, "right", gamma):
            hits += 1
            assert any(not satisfiable(C, [g]) for g in gamma) or not satisfiable(C, gamma)
    assert hits > 0


def test_pure_right_is_nf_paraconsistent():
    v = check(CompanionLogic(C, "pure_right"), "nf_para")
    assert v.proven and not v.exact


def test_companion_logic_wrapper_agrees():
    logic = CompanionLogic(C, "left")
    gamma = parse_list("p, ¬p")
    assert logic.entails(gamma, Var("p")) == entails_companion(C, "left", gamma, Var("p"))
    assert logic.name == "cpc^left"


def test_weak_kleene_against_companions_spot_checks():
    # the full cross-validation runs in the acceptance suite
    w, b = pwk(), b3()
    cases = [("p, ¬p", "q"), ("p", "p ∨ q"), ("⊥", "q"), ("p ∧ ¬p", "q"), ("p ∧ q", "p")]
    for g, a in cases:
        gamma, alpha = parse_list(g), parse(a)
        assert entails(w, gamma, alpha) == entails_companion(C, "left", gamma, alpha)
        assert entails(b, gamma, alpha) == entails_companion(C, "right", gamma, alpha)
