"""Consistency sets and the three clauses of a logic of formal inconsistency."""
from __future__ import annotations

from typing import Sequence

from ..core import DomainError
from ..formula import App, Formula, Var, default_variables, enumerate_pool, substitute, to_text, variables
from ..matrix import Evaluator, Matrix, entails, satisfiable, semantic_pool
from .bounded import resolve_unary, as_logic
from .verdict import EXACT, Budget, Status, Verdict, bounded

P = Var("p")


def circ(circle: Sequence[Formula], alpha: Formula) -> list[Formula]:
    return [substitute({"p": alpha}, psi) for psi in circle]


def _check_circle(circle):
    if not circle:
        raise DomainError("the consistency set must be non-empty")
    for psi in circle:
        if not variables(psi) <= {"p"}:
            raise DomainError(f"{to_text(psi)} mentions variables other than p")


def verify_lfi(
    m: Matrix, neg: str, circle: Sequence[Formula], budget: Budget | None = None, pool=None
) -> dict[str, Verdict]:
    """Verdicts for clauses (i), (ii) and (iii).

    (iii) is checked at the variable p only: if some valuation designated
    ○(φ) ∪ {φ, ¬φ}, composing it with p ↦ φ would designate ○(p) ∪ {p, ¬p}.
    """
    budget = budget or Budget()
    circle = list(circle)
    _check_circle(circle)
    neg = resolve_unary(as_logic(m), neg)
    if pool is None:
        pool = semantic_pool(m, m.sig, default_variables(budget.pool_vars), budget.pool_depth)
    scope = bounded(pool_vars=budget.pool_vars, pool_depth=budget.pool_depth, pool_classes=len(pool))
    out = {}

    w = next((phi for phi in pool if satisfiable(m, [phi, App(neg, (phi,))])), None)
    out["i"] = (
        Verdict("lfi:i", Status.PROVEN, dict(EXACT), {"phi": to_text(w)})
        if w is not None
        else Verdict("lfi:i", Status.REFUTED, scope)
    )

    found = None
    for a in pool:
        pos = circ(circle, a) + [a]
        negd = circ(circle, a) + [App(neg, (a,))]
        # a fresh variable escapes both exactly when both sets are satisfiable
        if satisfiable(m, pos) and satisfiable(m, negd):
            used = variables(pos + negd)
            b = next(Var(x) for x in default_variables(len(used) + 1) if x not in used)
            assert not entails(m, pos, b) and not entails(m, negd, b)
            found = (a, b)
            break
    out["ii"] = (
        Verdict("lfi:ii", Status.PROVEN, dict(EXACT), {"alpha": to_text(found[0]), "beta": to_text(found[1])})
        if found
        else Verdict("lfi:ii", Status.REFUTED, scope)
    )

    explodes = not satisfiable(m, circle + [P, App(neg, (P,))])
    out["iii"] = Verdict(
        "lfi:iii",
        Status.PROVEN if explodes else Status.REFUTED,
        dict(EXACT),
        {"set": [to_text(f) for f in circle + [P, App(neg, (P,))]]},
    )
    return out


def find_consistency_set(m: Matrix, neg: str = "¬", depth_bound: int = 3) -> list[Formula] | None:
    """First ψ(p) in pool order with ○(p) = {ψ} making ``m`` an LFI, if any."""
    if depth_bound > 4:
        raise DomainError("depth bound for the consistency search is at most 4")
    budget = Budget()
    neg = resolve_unary(as_logic(m), neg)
    pool = semantic_pool(m, m.sig, default_variables(budget.pool_vars), budget.pool_depth)
    if not any(satisfiable(m, [phi, App(neg, (phi,))]) for phi in pool):
        return None
    ev = Evaluator(m, ["p"])
    tried: dict[bytes, bool] = {}
    for psi in enumerate_pool(m.sig, ["p"], depth_bound):
        if variables(psi) != {"p"}:
            continue
        # the clauses only see the truth function of ψ
        key = ev.values(psi).tobytes()
        if key not in tried:
            v = verify_lfi(m, neg, [psi], budget, pool)
            tried[key] = all(x.proven for x in v.values())
        if tried[key]:
            return [psi]
    return None
