import itertools

import pytest
from hypothesis import given, settings

from conftest import finite_structures
from explosion.core import BudgetExceeded, DomainError, FiniteStructure
from explosion.gallery import pure_reflexive
from explosion.principles import check, quasi_negations
from explosion.principles import finite as F
from explosion.principles.verdict import PrincipleId, Status, parse_principles
from oracle import Oracle

NAMES = ["gecq", "secq", "secq_prime", "specq", "pfecq1", "pfecq2", "pfecq3", "parecq1", "parecq2"]


def _agree(s):
    o = Oracle.of(s)
    n, T = s.size, s.trivial
    for name in NAMES:
        assert getattr(F, name)(n, T)[0] == getattr(o, name)(), name
    assert F.parecq_pairs(n, T)[0] == o.parecq1()
    assert F.point_trivializer(n, T)[0] == o.point()
    for K in range(1 << n):
        Kset = frozenset(i for i in range(n) if K >> i & 1)
        assert F.k_para(n, T, K)[0] == o.k_para(Kset)
    for a in range(n):
        assert F.quasi_negations(n, T, a) == sum(1 << b for b in o.qn(a))
    for f in itertools.product(range(n), repeat=n):
        assert F.ecq(n, T, f)[0] == o.ecq(f)


@pytest.mark.parametrize("n", [1, 2])
def test_checkers_match_oracle_on_every_family(n):
    for fam in range(1 << (1 << n)):
        _agree(FiniteStructure.from_trivial_family(n, [m for m in range(1 << n) if fam >> m & 1]))


@settings(max_examples=300, deadline=None)
@given(finite_structures(min_n=3, max_n=4))
def test_checkers_match_oracle_on_random_tables(s):
    _agree(s)


def test_verdict_witnesses_recheck():
    s = pure_reflexive(3)
    v = check(s, "gecq")
    assert v.refuted and v.exact and v.witness == {"alpha": "a"}
    v = check(s, "nf_para")
    assert v.proven and v.exact
    assert quasi_negations(s, "a").is_empty()


def test_gecq_witness_is_a_trivial_pair():
    s = FiniteStructure.from_trivial_family(3, [0b011, 0b100, 0b101])
    v = check(s, "gecq")
    assert v.proven
    for a, b in v.witness["beta_for"].items():
        assert s.trivial[s.mask([a, b])]


def test_ecq_needs_an_op():
    s = FiniteStructure.from_trivial_family(2, [3], unary_ops={"neg": (1, 0)})
    assert check(s, "ecq:neg").proven
    with pytest.raises(DomainError):
        check(s, "ecq:other")
    with pytest.raises(DomainError):
        PrincipleId.parse("ecq")


def test_bot_ecq_uses_constants():
    s = FiniteStructure.from_trivial_family(2, [1], constants={"⊥": 0})
    assert check(s, "bot_ecq").proven
    assert check(FiniteStructure.from_trivial_family(2, [1]), "bot_ecq").refuted


def test_k_para_argument_forms():
    s = pure_reflexive(3)
    assert check(s, "k_para:{a,b}").proven
    assert check(s, "k_para:{}").proven


def test_fin_triv_bound():
    s = FiniteStructure.from_trivial_family(4, [0b1111])
    assert check(s, "fin_triv:3").refuted
    assert check(s, "fin_triv:4").proven
    assert PrincipleId.parse("fintriv").arg == "3"


def test_quadratic_cap_becomes_unknown():
    s = pure_reflexive(7)
    v = check(s, "pfecq2")
    assert v.status is Status.UNKNOWN and v.note == "budget exceeded"
    with pytest.raises(BudgetExceeded):
        F.check_finite(s, PrincipleId("pfecq2"))


def test_parse_principles_keeps_braces():
    ps = parse_principles("gecq, k_para:{a,b}, lfi:{p → p, q}, secq'")
    assert [str(p) for p in ps] == ["gecq", "k_para:{a,b}", "lfi:{p → p, q}", "secq_prime"]
    with pytest.raises(DomainError):
        PrincipleId.parse("nonsense")
    with pytest.raises(DomainError):
        PrincipleId.parse("gecq:x")
