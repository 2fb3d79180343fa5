"""Explosion principles and paraconsistency notions.

:func:`check` dispatches on the kind of logic:

* :class:`~explosion.core.FiniteStructure`: exact, by enumerating subsets;
* :class:`~explosion.core.RuleStructure`: oracle-backed, over a window family;
* matrices and companions: bounded by a formula pool.
"""
from __future__ import annotations

from ..companions import CompanionLogic
from ..core import BudgetExceeded, DomainError, FiniteStructure, RuleStructure, SentenceSet
from ..formula import Formula, parse_list, to_text
from ..matrix import Matrix
from . import finite as _finite
from .bounded import MatrixLogic, PoolEngine, check_bounded, conjoin_all, quasi_negations_matrix
from .lfi import find_consistency_set, verify_lfi
from .rules import check_rule
from .verdict import EXACT, Budget, PrincipleId, Status, Verdict, bounded, parse_principles

__all__ = [
    "Budget", "PrincipleId", "Status", "Verdict", "check", "check_many", "parse_principles",
    "quasi_negations", "finitely_trivializable", "verify_lfi", "find_consistency_set",
    "conjunctive_collapse",
]


def _pid(p) -> PrincipleId:
    return p if isinstance(p, PrincipleId) else PrincipleId.parse(p)


def _is_bounded_logic(s) -> bool:
    return isinstance(s, (Matrix, MatrixLogic, CompanionLogic))


def check(s, p, budget: Budget | None = None, engine: PoolEngine | None = None) -> Verdict:
    """Decide principle ``p`` on ``s`` as far as the budget allows."""
    p = _pid(p)
    budget = budget or Budget()
    try:
        if p.kind in ("lfi", "gentle_explosion"):
            return _check_lfi(s, p, budget)
        if isinstance(s, FiniteStructure):
            return _finite.check_finite(s, p, budget.max_pairwise)
        if isinstance(s, RuleStructure):
            return check_rule(s, p, budget)
        if _is_bounded_logic(s):
            return check_bounded(s, p, budget, engine)
    except BudgetExceeded as e:
        return Verdict(str(p), Status.UNKNOWN, bounded(budget_exceeded=str(e)), None, "budget exceeded")
    raise DomainError(f"cannot check principles on {type(s).__name__}")


def check_many(s, ps, budget: Budget | None = None) -> list[Verdict]:
    budget = budget or Budget()
    engine = None
    if _is_bounded_logic(s):
        try:
            engine = PoolEngine(s, budget)
        except BudgetExceeded:
            engine = None
    return [check(s, p, budget, engine) for p in ps]


def _check_lfi(s, p: PrincipleId, budget: Budget) -> Verdict:
    if not isinstance(s, Matrix):
        raise DomainError(f"{p.kind} is checked on matrices only")
    circle = parse_list(p.arg.strip().strip("{}"), s.sig)
    v = verify_lfi(s, "¬", circle, budget)
    if p.kind == "gentle_explosion":
        out = v["iii"]
        return Verdict(str(p), out.status, out.scope, out.witness)
    statuses = [x.status for x in v.values()]
    if all(st is Status.PROVEN for st in statuses):
        st = Status.PROVEN
    elif any(st is Status.REFUTED for st in statuses):
        st = Status.REFUTED
    else:
        st = Status.UNKNOWN
    exact = all(x.exact for x in v.values())
    scope = dict(EXACT) if exact else next(x.scope for x in v.values() if not x.exact)
    return Verdict(str(p), st, scope, {k: x.to_json() for k, x in v.items()})


def quasi_negations(s, alpha, budget: Budget | None = None):
    """QN(α): exact set on finite structures, pool list on matrices and companions."""
    if isinstance(s, FiniteStructure):
        a = s.index(alpha)
        return SentenceSet.from_mask(s.carrier, _finite.quasi_negations(s.size, s.trivial, a))
    if _is_bounded_logic(s):
        if not isinstance(alpha, Formula):
            raise DomainError("quasi-negations on a matrix need a formula")
        return quasi_negations_matrix(s, alpha, budget)
    raise DomainError(f"quasi-negations are not available on {type(s).__name__}")


def finitely_trivializable(s, size_bound: int = 3, budget: Budget | None = None) -> Verdict:
    return check(s, PrincipleId("fin_triv", str(size_bound)), budget)


def conjunctive_collapse(m, gamma) -> Formula | None:
    """The conjunction of ``gamma`` if it is a single-formula trivializer."""
    from ..matrix import trivializes

    logic = MatrixLogic(m) if isinstance(m, Matrix) else m
    phi = conjoin_all(logic, list(gamma))
    if phi is None:
        return None
    return phi if logic.trivializes([phi]) else None
