"""Checkers for rule structures on countable carriers.

Inner existentials go to the structure's triviality oracle. Outer universals
range over a window family: finite subsets of the first ``window`` elements
with at most ``max_size`` members, and the cofinite sets excluding such a
subset. A refutation found this way is exact; a proof is bounded to the family.
"""
from __future__ import annotations

import itertools

from ..core import DomainError, RuleStructure, SentenceSet
from .verdict import EXACT, Budget, PrincipleId, Status, Verdict, bounded


def window_family(s: RuleStructure, budget: Budget, proper_only: bool = True):
    L = s.carrier
    W = L.window(budget.window)
    out = []
    for k in range(budget.max_size + 1):
        for items in itertools.combinations(W, k):
            out.append(SentenceSet.finite(L, items))
    for k in range(budget.max_size + 1):
        for items in itertools.combinations(W, k):
            g = SentenceSet.cofinite_of(L, items)
            if proper_only and g.is_full():
                continue
            out.append(g)
    return out


def _scope(budget: Budget) -> dict:
    return bounded(family="finite/cofinite window", window=budget.window, max_size=budget.max_size)


def _as_set(s: RuleStructure, hint):
    if isinstance(hint, SentenceSet):
        return hint
    if isinstance(hint, int):
        return SentenceSet.finite(s.carrier, (hint,))
    return SentenceSet.finite(s.carrier, hint)


def _for_all_elements(s, budget, key, pred):
    """Universal over carrier elements; hint element first."""
    W = list(s.carrier.window(budget.window))
    hint = s.hints.get(key)
    if isinstance(hint, int):
        W = [hint] + [x for x in W if x != hint]
    for a in W:
        if not pred(a):
            return False, a
    return True, None


def _for_all_sets(s, budget, key, pred):
    fam = window_family(s, budget)
    hint = s.hints.get(key)
    if hint is not None and not isinstance(hint, int):
        fam = [_as_set(s, hint)] + fam
    for g in fam:
        if not pred(g):
            return False, g
    return True, None


def check_rule(s: RuleStructure, p: PrincipleId, budget: Budget | None = None) -> Verdict:
    budget = budget or Budget()
    o = s.oracle
    L = s.carrier
    kind = p.kind
    name = str(p)
    note = "" if s.oracle_complete else "oracle not complete; existentials may be missed"

    def verdict(ok, counter, what, universal=True):
        # universal principles: counterexample is exact, proof is bounded
        if universal:
            if ok:
                st = Status.PROVEN if s.oracle_complete else Status.UNKNOWN
                return Verdict(name, st, _scope(budget), None, note)
            return Verdict(name, Status.REFUTED, dict(EXACT), {what: _json(counter)})
        if ok:
            return Verdict(name, Status.PROVEN, dict(EXACT), {what: _json(counter)})
        st = Status.REFUTED if s.oracle_complete else Status.UNKNOWN
        return Verdict(name, st, _scope(budget), None, note)

    if kind == "gecq":
        ok, a = _for_all_elements(s, budget, "gecq", o.exists_trivial_pair_containing)
        return verdict(ok, a, "alpha")
    if kind == "nf_para":
        ok, a = _for_all_elements(s, budget, "gecq", o.exists_trivial_pair_containing)
        # nf_para holds iff gecq fails
        if not ok:
            return Verdict(name, Status.PROVEN, dict(EXACT), {"alpha": a})
        st = Status.REFUTED if s.oracle_complete else Status.UNKNOWN
        return Verdict(name, st, _scope(budget), None, note)
    if kind in ("secq", "secq_prime"):
        ok, a = _for_all_elements(
            s, budget, kind, lambda a: o.exists_trivial_superset(SentenceSet.finite(L, (a,)), True)
        )
        return verdict(ok, a, "alpha")
    if kind == "specq":
        ok, g = _for_all_sets(s, budget, "specq", o.exists_trivial_one_extension)
        return verdict(ok, g, "gamma")
    if kind in ("pfecq", "pfecq1", "pfecq2"):
        ok, g = _for_all_sets(s, budget, "pfecq", lambda g: o.exists_trivial_superset(g, True))
        return verdict(ok, g, "gamma")
    if kind == "pfecq3":
        return Verdict(name, Status.UNKNOWN, _scope(budget), None, "no oracle predicate for pfecq3")
    if kind in ("parecq", "parecq1", "parecq2"):
        W = list(L.window(budget.window))
        hint = s.hints.get("parecq")
        if isinstance(hint, int):
            W = [hint] + W
        for a in W:
            if o.exists_trivial_pair_containing(a):
                return verdict(True, a, "alpha", universal=False)
        return verdict(False, None, "alpha", universal=False)
    if kind == "k_para":
        K = [int(x) for x in p.arg.strip("{} ").split(",") if x.strip()]
        for a in L.window(budget.window):
            if not any(o.is_trivial(SentenceSet.finite(L, (a, b))) for b in K):
                return Verdict(name, Status.PROVEN, dict(EXACT), {"alpha": a})
        return Verdict(name, Status.REFUTED, _scope(budget), None)
    if kind == "ecq":
        if p.arg not in s.unary_ops:
            raise DomainError(f"{s.name} has no unary op {p.arg!r}")
        f = s.unary_ops[p.arg]
        ok, a = _for_all_elements(s, budget, "ecq", lambda a: o.is_trivial(SentenceSet.finite(L, (a, f(a)))))
        if ok:
            return Verdict(name, Status.PROVEN, _scope(budget), None)
        return Verdict(name, Status.REFUTED, dict(EXACT), {"alpha": a})
    if kind == "fin_triv":
        bound = int(p.arg)
        W = L.window(budget.window)
        for k in range(bound + 1):
            for items in itertools.combinations(W, k):
                g = SentenceSet.finite(L, items)
                if o.is_trivial(g):
                    return Verdict(name, Status.PROVEN, dict(EXACT), {"gamma": list(items)})
        return Verdict(name, Status.REFUTED, _scope(budget), None)
    if kind == "bot_ecq":
        return Verdict(name, Status.REFUTED, dict(EXACT), None, "rule structures declare no constants")
    raise DomainError(f"{kind} is not defined on rule structures")


def _json(x):
    if isinstance(x, SentenceSet):
        return x.to_json()
    return x
