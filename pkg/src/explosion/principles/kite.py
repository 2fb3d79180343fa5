"""Quasi-negation laws in classical logic, checked over a bounded pool.

``∼α`` stands for any member of QN(α). Read as a value, v(∼α) = 0 iff every
member of QN(α) is false under v, so ∼ acts on sets of valuations:
N(X) = ⋃ {D(β) : β in the pool, D(β) ∩ X = ∅}, where D(β) is the set of
valuations making β true. Applying N twice gives ∼∼α.

Two families of checks are run. ``value`` checks use the reading above.
``literal`` checks quantify over individual pool members instead.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..formula import App, CLASSICAL, default_variables, to_text
from ..gallery import cpc
from ..matrix import Evaluator, semantic_pool


@dataclass
class KiteResult:
    name: str
    holds: bool
    checked: int
    counterexample: dict | None = None

    def line(self) -> str:
        s = f"{self.name}: {'holds' if self.holds else 'FAILS'} ({self.checked} instances)"
        if self.counterexample:
            s += f" counterexample {self.counterexample}"
        return s


@dataclass
class Kite:
    pool_size: int
    value: list[KiteResult] = field(default_factory=list)
    literal: list[KiteResult] = field(default_factory=list)


def cpc_kite(pool_vars: int = 2, pool_depth: int = 3) -> Kite:
    m = cpc()
    vs = default_variables(pool_vars)
    pool = semantic_pool(m, CLASSICAL, vs, pool_depth)
    ev = Evaluator(m, vs)
    full = (1 << ev.width) - 1
    D = {a: ev.bits(a) for a in pool}

    def N(X: int) -> int:
        out = 0
        for b in pool:
            if D[b] & X == 0:
                out |= D[b]
        return out

    def QN(a):
        return [b for b in pool if D[a] & D[b] == 0]

    def neg(a):
        return ev.bits(App("¬", (a,)))

    def t(*fs):
        return [to_text(f) for f in fs]

    kite = Kite(len(pool))

    def run(bucket, name, cases):
        n = 0
        for ok, cex in cases:
            n += 1
            if not ok:
                bucket.append(KiteResult(name, False, n, cex))
                return
        bucket.append(KiteResult(name, True, n))

    # value reading
    run(kite.value, "v(α)=1 iff v(∼α)=0",
        ((N(D[a]) == full & ~D[a], {"alpha": t(a)}) for a in pool))
    run(kite.value, "(1) contraposition",
        ((N(D[b]) & ~N(D[a]) == 0, {"alpha": t(a), "beta": t(b)})
         for a in pool for b in pool if D[a] & ~D[b] == 0))
    run(kite.value, "(2) α ⊢ ¬∼α",
        ((D[a] & N(D[a]) == 0, {"alpha": t(a)}) for a in pool))
    run(kite.value, "(2) α ⊢ ∼¬α",
        ((D[a] & ~N(neg(a)) == 0, {"alpha": t(a)}) for a in pool))
    run(kite.value, "(3) α ⊢ ∼∼α",
        ((D[a] & ~N(N(D[a])) == 0, {"alpha": t(a)}) for a in pool))
    run(kite.value, "(4) ∼∼α ⊢ α",
        ((N(N(D[a])) & ~D[a] == 0, {"alpha": t(a)}) for a in pool))
    run(kite.value, "(5) α ∧ ∼α ⊢ β",
        ((D[a] & N(D[a]) & ~D[b] == 0, {"alpha": t(a), "beta": t(b)}) for a in pool for b in pool))

    # literal reading, one pool member at a time
    run(kite.literal, "(2) β ∈ QN(α) ⇒ α ⊨ ¬β",
        ((D[a] & ~neg(b) == 0, {"alpha": t(a), "beta": t(b)}) for a in pool for b in QN(a)))
    run(kite.literal, "(4) γ ∈ QN(β), β ∈ QN(α) ⇒ γ ⊨ α",
        ((D[c] & ~D[a] == 0, {"alpha": t(a), "beta": t(b), "gamma": t(c)})
         for a in pool for b in QN(a) for c in QN(b)))
    run(kite.literal, "(5) β ∈ QN(α) ⇒ α ∧ β ⊨ δ",
        ((ev.bits(App("∧", (a, b))) & ~D[d] == 0, {"alpha": t(a), "beta": t(b), "delta": t(d)})
         for a in pool for b in QN(a) for d in pool))
    return kite
