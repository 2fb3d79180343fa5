"""Pool-bounded checks for matrices and companions.

Every formula gets a bitmask over the valuation grid of the pool variables,
chosen so that a finite Γ trivializes iff the masks of its members have an
empty intersection. For a matrix the mask is the set of valuations that
designate the formula (a designating valuation of Γ sends a fresh variable to
an undesignated value, and otherwise Γ entails everything). Companions adapt
the mask, see :meth:`CompanionLogic.sat_key`.

Universal quantifiers run over the semantic pool, which has one representative
per class of formulas sharing variables and value tables, so nothing
distinguishable is skipped. Families of sets over the pool are enumerated in
full when small and sampled with a fixed seed otherwise.
"""
from __future__ import annotations

import itertools
import math
import random
from typing import Iterable, Sequence

from ..core import DomainError
from ..formula import App, Formula, Var, default_variables, substitute, to_text, variables
from ..matrix import Evaluator, Matrix, entails, trivializes
from .verdict import EXACT, Budget, PrincipleId, Status, Verdict, bounded


class MatrixLogic:
    def __init__(self, m: Matrix):
        self.m = m
        self.name = m.name
        self.sig = m.sig
        self.matrices = [m]
        self.conjunction = m.conjunction

    def entails(self, gamma, alpha) -> bool:
        return entails(self.m, gamma, alpha)

    def trivializes(self, gamma) -> bool:
        return trivializes(self.m, gamma)

    def sat_key(self, ev, width: int):
        return ev.bits


def as_logic(x):
    if isinstance(x, Matrix):
        return MatrixLogic(x)
    return x


NEG_NAMES = {"neg": "¬", "not": "¬", "~": "¬", "¬": "¬"}


def resolve_unary(logic, name: str) -> str:
    op = NEG_NAMES.get(name, name)
    syms = logic.sig.symbols()
    if op in syms:
        op = syms[op].name
    try:
        c = logic.sig.get(op)
    except (KeyError, DomainError):
        raise DomainError(f"{logic.name} has no unary connective {name!r}") from None
    if c.arity != 1:
        raise DomainError(f"{name!r} is not unary in {logic.name}")
    return c.name


def conjoin(logic, a: Formula, b: Formula) -> Formula | None:
    if logic.conjunction is not None:
        return substitute({"A": a, "B": b}, logic.conjunction)
    if "∧" in logic.sig:
        return App("∧", (a, b))
    return None


def conjoin_all(logic, fs: Sequence[Formula]) -> Formula | None:
    if not fs:
        return None
    out = fs[0]
    for f in fs[1:]:
        out = conjoin(logic, out, f)
        if out is None:
            return None
    return out


class PoolEngine:
    """Masks, pool and witness-first candidates for one logic and budget."""

    def __init__(self, logic, budget: Budget | None = None, extra: Iterable[Formula] = ()):
        from ..matrix import semantic_pool

        self.logic = as_logic(logic)
        self.budget = budget or Budget()
        extra = list(extra)
        self.pool_vars = default_variables(self.budget.pool_vars)
        grid_vars = sorted(set(self.pool_vars) | variables(extra)) if extra else self.pool_vars
        base = self.logic.matrices[0]
        self.ev = Evaluator(base, grid_vars)
        self.width = self.ev.width
        self.key = self.logic.sat_key(self.ev, self.width)
        self.all_bits = (1 << (self.width + 1)) - 1
        self.pool = semantic_pool(self.logic.matrices, self.logic.sig, self.pool_vars, self.budget.pool_depth)
        self._masks: dict[Formula, int] = {}
        self._ext = None
        self.points = self._points()

    def mask(self, phi: Formula) -> int:
        m = self._masks.get(phi)
        if m is None:
            m = self.key(phi)
            self._masks[phi] = m
        return m

    def meet(self, fs: Iterable[Formula]) -> int:
        acc = self.all_bits
        for f in fs:
            acc &= self.mask(f)
        return acc

    def trivial(self, fs: Iterable[Formula]) -> bool:
        return self.meet(fs) == 0

    def witness_candidates(self) -> list[Formula]:
        """Constants, negated theorems and collapsed contradictions, in that order."""
        sig = self.logic.sig
        out = [App(c.name, ()) for c in sig.constants]
        if "¬" in sig and "→" in sig:
            out += [App("¬", (App("→", (Var(x), Var(x))),)) for x in self.pool_vars]
        if "¬" in sig:
            for x in self.pool_vars:
                c = conjoin(self.logic, Var(x), App("¬", (Var(x),)))
                if c is not None:
                    out.append(c)
        return out

    def _points(self) -> list[Formula]:
        seen, out = set(), []
        for f in self.witness_candidates() + list(self.pool):
            if f not in seen and self.mask(f) == 0:
                seen.add(f)
                out.append(f)
        return out

    def extenders(self) -> list[Formula]:
        """Point trivializers, then one pool formula per minimal mask.

        A formula whose mask contains another's can always be swapped for it,
        so only masks minimal under inclusion are kept.
        """
        if self._ext is None:
            by_mask: dict[int, Formula] = {}
            for f in self.pool:
                by_mask.setdefault(self.mask(f), f)
            masks = sorted(by_mask, key=lambda m: (bin(m).count("1"), m))
            minimal = []
            for m in masks:
                if not any(k & ~m == 0 for k in minimal):
                    minimal.append(m)
            self._ext = list(self.points) + [by_mask[m] for m in minimal if m != 0]
            ms = [self.mask(f) for f in self._ext]
            suffix = [self.all_bits] * (len(ms) + 1)
            for i in range(len(ms) - 1, -1, -1):
                suffix[i] = suffix[i + 1] & ms[i]
            self._ext_masks, self._suffix = ms, suffix
        return self._ext

    def extend(self, acc: int, max_extra: int) -> list[Formula] | None:
        """Up to ``max_extra`` formulas whose masks meet ``acc`` in the empty set."""
        if acc == 0:
            return []
        ext = self.extenders()
        ms, suffix = self._ext_masks, self._suffix

        def dfs(start, a, left):
            if a & suffix[start]:
                return None
            for i in range(start, len(ms)):
                b = a & ms[i]
                if b == 0:
                    return [i]
                if left > 1:
                    rest = dfs(i + 1, b, left - 1)
                    if rest is not None:
                        return [i] + rest
            return None

        hit = dfs(0, acc, max_extra) if max_extra > 0 else None
        return None if hit is None else [ext[i] for i in hit]

    def families(self, max_size: int):
        """Pool subsets of size ≤ max_size, in full or as a seeded sample."""
        P = self.pool
        total = sum(math.comb(len(P), k) for k in range(max_size + 1))
        cap = self.budget.sample
        if total <= cap:
            fam = [list(c) for k in range(max_size + 1) for c in itertools.combinations(P, k)]
            return fam, {"sets": "all", "count": total}
        rng = random.Random(self.budget.seed)
        fam = [[]] + [[f] for f in P]
        while len(fam) < cap:
            k = rng.randint(2, max_size)
            fam.append(sorted(rng.sample(P, k), key=lambda f: (f.depth, str(f))))
        return fam, {"sets": "sampled", "count": len(fam), "population": total, "seed": self.budget.seed}

    def scope(self, **more) -> dict:
        info = {
            "pool_vars": self.budget.pool_vars,
            "pool_depth": self.budget.pool_depth,
            "max_size": self.budget.max_size,
            "pool_classes": len(self.pool),
        }
        info.update(more)
        return bounded(**info)


def _t(fs) -> list[str]:
    return [to_text(f) for f in fs]


def check_bounded(logic, p: PrincipleId, budget: Budget | None = None, engine: PoolEngine | None = None) -> Verdict:
    logic = as_logic(logic)
    budget = budget or Budget()
    E = engine or PoolEngine(logic, budget)
    kind, name = p.kind, str(p)
    P = E.pool
    k = budget.max_size

    if kind == "ecq":
        op = resolve_unary(logic, p.arg)
        for a in P:
            na = App(op, (a,))
            if not E.trivial([a, na]):
                q = "q" if "q" not in variables(a) else "r"
                return Verdict(name, Status.REFUTED, dict(EXACT),
                               {"gamma": _t([a, na]), "not_entailed": q})
        return Verdict(name, Status.PROVEN, E.scope())

    if kind == "bot_ecq":
        for c in logic.sig.constants:
            if E.trivial([App(c.name, ())]):
                return Verdict(name, Status.PROVEN, dict(EXACT), {"constant": c.name})
        return Verdict(name, Status.REFUTED, dict(EXACT), None,
                       "no constant of the signature trivializes")

    if kind in ("gecq", "nf_para"):
        chosen = {}
        cands = E.points + list(P)
        for a in P:
            ma = E.mask(a)
            b = next((b for b in cands if ma & E.mask(b) == 0), None)
            if b is None:
                if kind == "nf_para":
                    return Verdict(name, Status.PROVEN, E.scope(), {"alpha": to_text(a)})
                return Verdict(name, Status.REFUTED, E.scope(), {"alpha": to_text(a)})
            chosen[to_text(a)] = to_text(b)
        if kind == "nf_para":
            return Verdict(name, Status.REFUTED, E.scope(), _beta_summary(chosen))
        return Verdict(name, Status.PROVEN, E.scope(), _beta_summary(chosen))

    if kind == "secq":
        chosen = {}
        for a in P:
            ext = E.extend(E.mask(a), max(k - 1, 0))
            if ext is None:
                return Verdict(name, Status.REFUTED, E.scope(), {"alpha": to_text(a)})
            chosen[to_text(a)] = _t([a] + ext)
        return Verdict(name, Status.PROVEN, E.scope(), _gamma_summary(chosen))

    if kind == "secq_prime":
        # Γ ranges over pool sets of size < k; α is added afterwards
        ext = E.extenders()
        for a in P:
            ma = E.mask(a)
            gammas = (c for j in range(k) for c in itertools.combinations(ext, j))
            if not any(ma & E.meet(g) == 0 for g in gammas):
                return Verdict(name, Status.REFUTED, E.scope(), {"alpha": to_text(a)})
        return Verdict(name, Status.PROVEN, E.scope())

    if kind in ("specq", "pfecq", "pfecq1", "pfecq2", "pfecq3"):
        fam, info = E.families(k)
        extra = {"specq": 1, "pfecq3": 1}.get(kind, k)
        for g in fam:
            acc = E.meet(g)
            if kind == "pfecq2":
                # Δ need not contain Γ: search Δ among pool sets directly
                found = acc == 0 or E.extend(acc, extra) is not None
            elif kind == "pfecq3":
                # a singleton Δ={φ} is its only non-empty subset
                found = any(acc & E.mask(f) == 0 for f in E.extenders())
            else:
                found = E.extend(acc, extra) is not None
            if not found:
                return Verdict(name, Status.REFUTED, E.scope(families=info), {"gamma": _t(g)})
        wit = {"schema": to_text(E.points[0])} if E.points else None
        return Verdict(name, Status.PROVEN, E.scope(families=info), wit)

    if kind in ("parecq", "parecq1", "parecq2"):
        cands = list(P)
        for a, b in itertools.combinations_with_replacement(cands, 2):
            if E.trivial([a, b]):
                return Verdict(name, Status.PROVEN, dict(EXACT), {"alpha": to_text(a), "beta": to_text(b)})
        return Verdict(name, Status.REFUTED, E.scope())

    if kind == "k_para":
        from ..formula import parse_list

        K = parse_list(p.arg.strip().strip("{}"), logic.sig)
        E2 = engine if engine is not None and not variables(K) - set(E.pool_vars) else PoolEngine(logic, budget, K)
        for a in E2.pool:
            if all(E2.mask(a) & E2.mask(b) for b in K):
                return Verdict(name, Status.PROVEN, dict(EXACT), {"alpha": to_text(a), "K": _t(K)})
        return Verdict(name, Status.REFUTED, E2.scope(), {"K": _t(K)})

    if kind == "fin_triv":
        bound = int(p.arg)
        found = finite_trivializer(E, bound)
        if found is None:
            return Verdict(name, Status.REFUTED, E.scope(max_size=bound))
        wit = {"gamma": _t(found)}
        phi = conjoin_all(logic, found)
        if phi is not None and E.trivial([phi]):
            wit["collapsed"] = to_text(phi)
        return Verdict(name, Status.PROVEN, dict(EXACT), wit)

    raise DomainError(f"{kind} is not available on {logic.name}")


def finite_trivializer(E: PoolEngine, bound: int) -> list[Formula] | None:
    """A trivial set of at most ``bound`` formulas, trying witnesses first."""
    if bound >= 1 and E.points:
        return [E.points[0]]
    if bound < 1:
        return None
    ext = [f for f in E.extenders() if f not in E.points]
    if bound >= 2:
        # pair scan with a lookup for the third member
        by_mask = {}
        for f in ext:
            by_mask.setdefault(E.mask(f), f)
        masks = list(by_mask)
        for i, m1 in enumerate(masks):
            for m2 in masks[i:]:
                if m1 & m2 == 0:
                    return [by_mask[m1], by_mask[m2]]
        if bound >= 3:
            for i, m1 in enumerate(masks):
                for j in range(i, len(masks)):
                    m12 = m1 & masks[j]
                    for m3 in masks[j:]:
                        if m12 & m3 == 0:
                            return [by_mask[m1], by_mask[masks[j]], by_mask[m3]]
        if bound >= 4:
            for combo in itertools.combinations(masks, 4):
                acc = E.all_bits
                for m in combo:
                    acc &= m
                if acc == 0:
                    return [by_mask[m] for m in combo]
    return None


def _beta_summary(chosen: dict) -> dict:
    betas = set(chosen.values())
    if len(betas) == 1:
        return {"beta": betas.pop(), "alphas_checked": len(chosen)}
    return {"beta_for": chosen}


def _gamma_summary(chosen: dict) -> dict:
    tails = {tuple(v[1:]) for v in chosen.values() if len(v) > 1}
    if len(tails) == 1:
        return {"extension": list(tails.pop()), "alphas_checked": len(chosen)}
    return {"gamma_for": chosen}


def quasi_negations_matrix(logic, alpha: Formula, budget: Budget | None = None) -> list[Formula]:
    """Every formula β of the literal pool with {α, β} trivial, in pool order."""
    from ..formula import enumerate_pool

    logic = as_logic(logic)
    budget = budget or Budget()
    E = PoolEngine(logic, Budget(budget.pool_vars, 0, budget.max_size, seed=budget.seed), [alpha])
    pool = enumerate_pool(logic.sig, default_variables(budget.pool_vars), budget.pool_depth)
    ma = E.mask(alpha)
    return [b for b in pool if ma & E.mask(b) == 0]
