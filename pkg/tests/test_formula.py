import pytest
from hypothesis import given, settings, strategies as st

from explosion.core import BudgetExceeded
from explosion.formula import (
    App, CLASSICAL, NEG_IMP, Connective, ParseError, Signature, Var, depth, enumerate_pool,
    fresh_variable, parse, parse_list, pool_size, substitute, to_text, variables,
)

p, q, r = Var("p"), Var("q"), Var("r")


def neg(a):
    return App("¬", (a,))


def imp(a, b):
    return App("→", (a, b))


def test_parse_examples():
    assert parse("¬(p → p)", NEG_IMP) == neg(imp(p, p))
    assert parse("⊥") == App("⊥", ())
    assert parse("p → q → r") == imp(p, imp(q, r))
    assert parse("(p → q) → r") == imp(imp(p, q), r)


def test_ascii_aliases():
    assert parse("~p -> q /\\ r \\/ _|_") == parse("¬p → q ∧ r ∨ ⊥")


def test_parse_errors_report_offsets():
    with pytest.raises(ParseError) as e:
        parse("p → (q")
    assert "unbalanced" in str(e.value)
    assert e.value.offset == len("p → (q".encode())
    with pytest.raises(ParseError) as e:
        parse("p)")
    assert e.value.offset == 1
    with pytest.raises(ParseError):
        parse("p ? q")
    with pytest.raises(ParseError):
        parse_list("p,,q")


def test_parse_list_splits_top_level_only():
    assert parse_list("p, ¬(p ∧ q), q") == [p, neg(App("∧", (p, q))), q]
    assert parse_list("") == []


def test_vars():
    assert variables(App("⊥", ())) == frozenset()
    assert variables(neg(imp(p, q))) == {"p", "q"}
    assert variables([p, neg(p)]) == {"p"}


def test_substitute_examples():
    assert substitute({"p": q}, neg(p)) == neg(q)
    phi = imp(p, q)
    assert substitute({}, phi) == phi
    pn = App("∧", (p, neg(p)))
    assert substitute({"p": pn}, imp(p, p)) == imp(pn, pn)


def test_fresh_variable():
    assert fresh_variable(["p", "q"]) == "v0"
    assert fresh_variable(["v0", "v1", "v3"]) == "v2"


def test_pool_examples():
    only_neg = CLASSICAL.restrict(["¬"])
    assert enumerate_pool(only_neg, ["p"], 2) == [p, neg(p), neg(neg(p))]
    assert enumerate_pool(CLASSICAL.restrict(["⊥"]), [], 1) == [App("⊥", ())]


def _count_by_closure(sig, vs, d):
    # independent count: iterate the set of printed formulas
    level = set(vs) | {c.name for c in sig.constants}
    for _ in range(d):
        nxt = set(level)
        for c in sig.operators:
            if c.arity == 1:
                nxt |= {f"{c.name}[{a}]" for a in level}
            else:
                nxt |= {f"{c.name}[{a},{b}]" for a in level for b in level}
        level = nxt
    return len(level)


@pytest.mark.parametrize("sig,vs,d", [(NEG_IMP, ["p", "q"], 3), (CLASSICAL, ["p"], 2), (CLASSICAL, ["p", "q"], 2)])
def test_pool_size_against_independent_count(sig, vs, d):
    n = _count_by_closure(sig, vs, d)
    assert pool_size(sig, len(vs), d) == n
    pool = enumerate_pool(sig, vs, d)
    assert len(pool) == n == len(set(pool))
    assert [depth(f) for f in pool] == sorted(depth(f) for f in pool)


def test_pool_cap():
    with pytest.raises(BudgetExceeded):
        enumerate_pool(CLASSICAL, ["p", "q", "r"], 3, cap=1000)


def test_signature_rejects_duplicates():
    with pytest.raises(ValueError):
        Signature((Connective("¬", 1), Connective("¬", 2, "infix")))


atoms = st.sampled_from([p, q, r, App("⊥", ())])


def formulas(max_leaves=12):
    return st.recursive(
        atoms,
        lambda sub: st.one_of(
            st.builds(lambda a: App("¬", (a,)), sub),
            st.builds(lambda a, b: App("∧", (a, b)), sub, sub),
            st.builds(lambda a, b: App("∨", (a, b)), sub, sub),
            st.builds(lambda a, b: App("→", (a, b)), sub, sub),
        ),
        max_leaves=max_leaves,
    )


@settings(max_examples=10_000, deadline=None)
@given(formulas())
def test_print_parse_round_trip(phi):
    assert parse(to_text(phi, CLASSICAL)) == phi


@settings(max_examples=300, deadline=None)
@given(formulas(), st.dictionaries(st.sampled_from(["p", "q", "r"]), formulas(6)))
def test_substitution_laws(phi, sigma):
    out = substitute(sigma, phi)
    bump = max((depth(v) for v in sigma.values()), default=0)
    assert depth(out) <= depth(phi) + bump
    expect = frozenset().union(*[variables(sigma.get(x, Var(x))) for x in variables(phi)]) if variables(phi) else frozenset()
    assert variables(out) == expect
