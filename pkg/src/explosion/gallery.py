"""Built-in logics: matrices, finite structures and rule-defined structures.

Matrices: ``cpc``, ``pwk`` (paraconsistent weak Kleene), ``b3`` (Bochvar),
``lp``, ``pac`` and ``p1`` (Sette's three-valued logic). IPC and IPWK have no
finite characteristic matrix and are not provided.

Rule structures on countable carriers reproduce the infinite counterexamples:

=============  ==========  ===============================================
name           carrier     C(Γ) = L exactly when
=============  ==========  ===============================================
``ex-3-5``     1, 2, ...   Γ = {n, n+1, ..., 2n} for some n
``ex-3-9``     0, 1, ...   Γ is infinite
``ex-3-10``    0, 1, ...   Γ = {n, n+1} for some n
``ex-3-13``    integers    Γ ≠ ∅ and Γ is closed under n ↦ -n
``ex-3-17``    0, 1, ...   Γ is infinite (stated as "C(Γ) = Γ if Γ is finite")
``ex-parecq``  0, 1, ...   Γ = {0}
=============  ==========  ===============================================

In every case ``C(Γ) = Γ`` otherwise, so the carrier itself is trivial too.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

from .core import (
    INTEGERS,
    NATURALS,
    POSITIVE,
    DomainError,
    FiniteStructure,
    RuleStructure,
    SentenceSet,
    TrivialityOracle,
    submasks,
)
from .formula import CLASSICAL, CLASSICAL_NO_BOT, NEG_IMP, App, Var
from .matrix import Matrix


class ValidationError(DomainError):
    pass


# matrices

def _bool(x: bool) -> str:
    return "1" if x else "0"


def cpc() -> Matrix:
    return Matrix.from_functions(
        "cpc",
        CLASSICAL,
        ("0", "1"),
        {"1"},
        {
            "¬": lambda a: _bool(a == "0"),
            "∧": lambda a, b: _bool(a == b == "1"),
            "∨": lambda a, b: _bool("1" in (a, b)),
            "→": lambda a, b: _bool(a == "0" or b == "1"),
            "⊥": lambda: "0",
        },
    )


def _weak_kleene(name: str, designated: set[str]) -> Matrix:
    base = cpc()

    def lift(op):
        table = base.op_table(op)

        def f(*args):
            if "e" in args:
                return "e"
            return table[args]

        return f

    ops = {op: lift(op) for op in ("¬", "∧", "∨", "→")}
    ops["⊥"] = lambda: "0"
    return Matrix.from_functions(name, CLASSICAL, ("0", "e", "1"), designated, ops)


def pwk() -> Matrix:
    """Weak Kleene tables with the infectious value designated."""
    return _weak_kleene("pwk", {"1", "e"})


def b3() -> Matrix:
    """Bochvar's logic: weak Kleene tables, only 1 designated."""
    return _weak_kleene("b3", {"1"})


_ORDER = {"0": 0, "b": 1, "1": 2}


def _strong_kleene_ops():
    neg = {"0": "1", "b": "b", "1": "0"}
    return {
        "¬": lambda a: neg[a],
        "∧": lambda a, b: min(a, b, key=_ORDER.get),
        "∨": lambda a, b: max(a, b, key=_ORDER.get),
    }


def lp() -> Matrix:
    ops = _strong_kleene_ops()
    ops["→"] = lambda a, b: ops["∨"](ops["¬"](a), b)
    return Matrix.from_functions("lp", CLASSICAL_NO_BOT, ("0", "b", "1"), {"b", "1"}, ops)


def pac() -> Matrix:
    ops = _strong_kleene_ops()
    # detachable implication
    ops["→"] = lambda a, b: b if a in ("b", "1") else "1"
    return Matrix.from_functions("pac", CLASSICAL_NO_BOT, ("0", "b", "1"), {"b", "1"}, ops)


P1_CONJUNCTION = App("¬", (App("→", (Var("A"), App("¬", (Var("B"),)))),))


def p1() -> Matrix:
    """Sette's P1 over ``{¬, →}``; ``t`` is the designated middle value.

    Compound formulas only take the classical values 0 and 1, so ECQ fails for
    variables alone. ``¬(A → ¬B)`` is a derived conjunction satisfying (∧E).
    """
    neg = {"1": "0", "t": "1", "0": "1"}
    return Matrix.from_functions(
        "p1",
        NEG_IMP,
        ("0", "t", "1"),
        {"t", "1"},
        {
            "¬": lambda a: neg[a],
            "→": lambda a, b: "0" if a in ("t", "1") and b == "0" else "1",
        },
        conjunction=P1_CONJUNCTION,
    )


# finite structures

def pure_reflexive(n: int) -> FiniteStructure:
    """Γ ⊢ α iff α ∈ Γ."""
    if n < 1:
        raise ValidationError("carrier size must be positive")
    return FiniteStructure.from_function(n, lambda m: m)


@dataclass(frozen=True)
class PosetSpec:
    elements: tuple[str, ...]
    order: frozenset[tuple[str, str]]

    def __post_init__(self):
        els = tuple(self.elements)
        if not els or len(set(els)) != len(els):
            raise ValidationError("poset elements must be distinct and non-empty")
        order = frozenset((a, b) for a, b in self.order)
        for a, b in order:
            if a not in els or b not in els:
                raise ValidationError(f"order pair ({a}, {b}) mentions an unknown element")
        for a in els:
            if (a, a) not in order:
                raise ValidationError(f"order is not reflexive at {a}")
        for a, b in order:
            if a != b and (b, a) in order:
                raise ValidationError(f"order is not antisymmetric on {a}, {b}")
        for (a, b), (c, d) in itertools.product(order, order):
            if b == c and (a, d) not in order:
                raise ValidationError(f"order is not transitive: {a} ≤ {b} ≤ {d}")
        object.__setattr__(self, "elements", els)
        object.__setattr__(self, "order", order)

    @classmethod
    def generated(cls, elements: Sequence[str], less: Sequence[tuple[str, str]]) -> "PosetSpec":
        """Reflexive-transitive closure of the given pairs."""
        rel = {(a, a) for a in elements} | {tuple(p) for p in less}
        changed = True
        while changed:
            changed = False
            for (a, b), (c, d) in itertools.product(list(rel), list(rel)):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
        return cls(tuple(elements), frozenset(rel))

    def le(self, a: str, b: str) -> bool:
        return (a, b) in self.order


def poset_logic(p: PosetSpec, direction: str = "forward") -> FiniteStructure:
    """Forward: Γ ⊢ φ iff γ ≤ φ for all γ ∈ Γ. Backward: φ ≤ γ instead."""
    if direction not in ("forward", "backward"):
        raise ValidationError("direction is 'forward' or 'backward'")
    els = p.elements
    n = len(els)

    def le(i, j):
        return p.le(els[i], els[j]) if direction == "forward" else p.le(els[j], els[i])

    def rule(m):
        out = 0
        for phi in range(n):
            if all(le(g, phi) for g in range(n) if m >> g & 1):
                out |= 1 << phi
        return out

    return FiniteStructure.from_function(n, rule, names=els)


def poset_valuation_logic(
    carrier: int | Sequence[str], p: PosetSpec, valuations: Sequence[Mapping | Sequence]
) -> FiniteStructure:
    """Γ ⊨_V α iff v(β) ≤ v(α) for every v ∈ V and β ∈ Γ."""
    names = tuple(carrier) if not isinstance(carrier, int) else None
    n = carrier if isinstance(carrier, int) else len(carrier)
    if not valuations:
        raise ValidationError("the valuation set must be non-empty")
    vals = []
    for v in valuations:
        if isinstance(v, Mapping):
            keys = names if names is not None else range(n)
            try:
                row = tuple(v[k] for k in keys)
            except KeyError as e:
                raise ValidationError(f"valuation is not total: missing {e}") from None
        else:
            row = tuple(v)
            if len(row) != n:
                raise ValidationError("valuation is not total on the carrier")
        for x in row:
            if x not in p.elements:
                raise ValidationError(f"valuation value {x!r} is not a poset element")
        vals.append(row)

    def rule(m):
        out = 0
        for a in range(n):
            if all(p.le(v[b], v[a]) for v in vals for b in range(n) if m >> b & 1):
                out |= 1 << a
        return out

    return FiniteStructure.from_function(n, rule, names=names)


def qcons_structure(n: int, W: Sequence[int]) -> tuple[FiniteStructure, bool]:
    """Structure induced by ``W`` (Γ ⊢ α iff α ∈ W(Γ)) and whether ``W`` is a q-consequence operator."""
    s = FiniteStructure(n, tuple(W))
    t = s.table
    N = 1 << n
    monotone = all(t[g] & ~t[sig] == 0 for sig in range(N) for g in submasks(sig))
    fixpoint = all(t[g | t[g]] == t[g] for g in range(N))
    return s, monotone and fixpoint


# rule structures

def _finite_elems(g: SentenceSet) -> list[int]:
    return list(g.elements)


def _ex_3_5() -> RuleStructure:
    L = POSITIVE

    def interval(g):
        if g.cofinite or not g.elements:
            return False
        n = g.elements[0]
        return g.elements == tuple(range(n, 2 * n + 1))

    def rule(g):
        return SentenceSet.full(L) if interval(g) else g

    def is_trivial(g):
        return interval(g) or g.is_full()

    def superset(g, proper):
        if not proper:
            return True
        if g.cofinite:
            return False
        if not g.elements:
            return True
        return max(g.elements) <= 2 * min(g.elements)

    def one_ext(g):
        if g.cofinite or not g.elements:
            return False
        lo, hi, k = min(g.elements), max(g.elements), len(g.elements)
        for n in range(max(1, (hi + 1) // 2), lo + 1):
            # g ⊆ {n..2n} holds for these n; at most one element may be missing
            if (n + 1) - k <= 1:
                return True
        return False

    return RuleStructure(
        "ex-3-5",
        L,
        rule,
        TrivialityOracle(is_trivial, superset, one_ext, lambda a: a in (1, 2)),
        oracle_complete=True,
        justification="trivial sets are the intervals {n..2n} and the carrier; only {1,2} has two elements",
        hints={"specq": (1, 4), "gecq": 3},
    )


def _infinite_is_trivial(name: str) -> RuleStructure:
    L = NATURALS

    def rule(g):
        return SentenceSet.full(L) if g.cofinite else g

    def superset(g, proper):
        if not proper:
            return True
        # a finite set misses some α, and L∖{α} is infinite
        return not g.is_full()

    def one_ext(g):
        return g.cofinite and not g.is_full()

    return RuleStructure(
        name,
        L,
        rule,
        TrivialityOracle(lambda g: g.cofinite, superset, one_ext, lambda a: False),
        oracle_complete=True,
        justification="within finite/cofinite sets the infinite ones are the cofinite ones",
    )


def _ex_3_10() -> RuleStructure:
    L = NATURALS

    def pair(g):
        return not g.cofinite and len(g.elements) == 2 and g.elements[1] == g.elements[0] + 1

    def rule(g):
        return SentenceSet.full(L) if pair(g) else g

    def superset(g, proper):
        if not proper:
            return True
        if g.cofinite:
            return False
        k = len(g.elements)
        return k <= 1 or pair(g)

    def one_ext(g):
        if g.cofinite:
            return False
        k = len(g.elements)
        return k == 1 or pair(g)

    return RuleStructure(
        "ex-3-10",
        L,
        rule,
        TrivialityOracle(lambda g: pair(g) or g.is_full(), superset, one_ext, lambda a: True),
        oracle_complete=True,
        justification="trivial sets are the consecutive pairs {n,n+1} and the carrier",
        hints={"pfecq": (0, 1, 2), "specq": (0, 1, 2)},
    )


def _ex_3_13() -> RuleStructure:
    L = INTEGERS

    def symmetric(xs) -> bool:
        s = set(xs)
        return all(-x in s for x in s)

    def is_trivial(g):
        if g.cofinite:
            return symmetric(g.elements)
        return bool(g.elements) and symmetric(g.elements)

    def rule(g):
        return SentenceSet.full(L) if is_trivial(g) else g

    def superset(g, proper):
        if not g.cofinite:
            return True  # g ∪ -g ∪ {0} is finite
        if not proper:
            return True
        excl = set(g.elements)
        return any(-x in excl for x in excl)

    def one_ext(g):
        if not g.cofinite:
            if not g.elements:
                return True  # {0}
            lonely = [x for x in g.elements if -x not in g.elements]
            return len(lonely) <= 1
        excl = set(g.elements)
        if not excl:
            return False
        options = [excl] + [excl - {e} for e in excl]
        return any(o and symmetric(o) for o in options)

    return RuleStructure(
        "ex-3-13",
        L,
        rule,
        TrivialityOracle(is_trivial, superset, one_ext, lambda a: True),
        oracle_complete=True,
        justification="trivial sets are the non-empty sets closed under n ↦ -n",
        unary_ops={"neg": lambda n: -n},
    )


def _ex_parecq() -> RuleStructure:
    L = NATURALS

    def single_zero(g):
        return not g.cofinite and g.elements == (0,)

    def rule(g):
        return SentenceSet.full(L) if single_zero(g) else g

    def superset(g, proper):
        if not proper:
            return True
        return not g.cofinite and set(g.elements) <= {0}

    def one_ext(g):
        return not g.cofinite and set(g.elements) <= {0}

    return RuleStructure(
        "ex-parecq",
        L,
        rule,
        TrivialityOracle(lambda g: single_zero(g) or g.is_full(), superset, one_ext, lambda a: a == 0),
        oracle_complete=True,
        justification="the only trivial proper set is {0}",
        hints={"gecq": 1},
    )


RULE_STRUCTURES = {
    "ex-3-5": _ex_3_5,
    "ex-3-9": lambda: _infinite_is_trivial("ex-3-9"),
    "ex-3-10": _ex_3_10,
    "ex-3-13": _ex_3_13,
    "ex-3-17": lambda: _infinite_is_trivial("ex-3-17"),
    "ex-parecq": _ex_parecq,
}

MATRICES = {"cpc": cpc, "pwk": pwk, "b3": b3, "lp": lp, "pac": pac, "p1": p1}

FINITE_BUILTINS = ("pure-reflexive", "poset-forward", "poset-backward", "poset-valuation", "qcons")


def builtin_names() -> list[str]:
    return list(MATRICES) + list(FINITE_BUILTINS) + list(RULE_STRUCTURES)


def _poset_from(params) -> PosetSpec:
    if "order" in params:
        return PosetSpec(tuple(params["elements"]), frozenset(tuple(p) for p in params["order"]))
    return PosetSpec.generated(tuple(params["elements"]), [tuple(p) for p in params.get("less", [])])


def load_builtin(name: str, **params):
    """Load a builtin by name.

    Parameters may be passed as keywords or, for ``pure-reflexive``, inline as
    ``"pure-reflexive:3"``.
    """
    if ":" in name:
        name, arg = name.split(":", 1)
        if name != "pure-reflexive":
            raise ValidationError(f"builtin {name!r} takes no inline parameter")
        try:
            params["n"] = int(arg)
        except ValueError:
            raise ValidationError(f"bad carrier size {arg!r}") from None
    if name in MATRICES:
        return MATRICES[name]()
    if name in RULE_STRUCTURES:
        return RULE_STRUCTURES[name]()
    try:
        if name == "pure-reflexive":
            return pure_reflexive(int(params["n"]))
        if name in ("poset-forward", "poset-backward"):
            return poset_logic(_poset_from(params["poset"]), name.split("-")[1])
        if name == "poset-valuation":
            return poset_valuation_logic(params["carrier"], _poset_from(params["poset"]), params["valuations"])
        if name == "qcons":
            n = int(params["n"])
            return qcons_structure(n, params["table"])[0]
    except KeyError as e:
        raise ValidationError(f"builtin {name!r} is missing parameter {e}") from None
    raise ValidationError(f"unknown builtin {name!r}")
