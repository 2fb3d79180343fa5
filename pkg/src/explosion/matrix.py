"""Finite logical matrices.

Valuations are enumerated over the variables that actually occur, and formulas
are evaluated on the whole valuation grid at once with numpy fancy indexing.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .core import BudgetExceeded, DomainError
from .formula import App, Formula, Signature, Var, formula_key, variables

DEFAULT_MAX_VARS = 8
SEMANTIC_POOL_CAP = 20_000


@dataclass(frozen=True, eq=False)
class Matrix:
    """A matrix ``⟨values, designated, tables⟩`` over a signature.

    ``tables[name]`` is an integer array of shape ``(len(values),) * arity`` whose
    entries are value indices.
    """

    name: str
    sig: Signature
    values: tuple[str, ...]
    designated: frozenset[str]
    tables: Mapping[str, np.ndarray] = field(repr=False)
    conjunction: Formula | None = field(default=None, repr=False)

    def __post_init__(self):
        values = tuple(self.values)
        if len(set(values)) != len(values) or not values:
            raise DomainError("matrix values must be distinct and non-empty")
        des = frozenset(self.designated)
        if not des <= set(values):
            raise DomainError("designated values must be values")
        if des == set(values):
            raise DomainError("designated set must be a proper subset of the values")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "designated", des)
        k = len(values)
        tables = {}
        for c in self.sig.connectives:
            if c.name not in self.tables:
                raise DomainError(f"no table for connective {c.name!r}")
            t = np.asarray(self.tables[c.name], dtype=np.int64)
            if t.shape != (k,) * c.arity:
                raise DomainError(f"table for {c.name!r} has shape {t.shape}")
            if t.size and (t.min() < 0 or t.max() >= k):
                raise DomainError(f"table for {c.name!r} leaves the value set")
            t.setflags(write=False)
            tables[c.name] = t
        extra = set(self.tables) - {c.name for c in self.sig.connectives}
        if extra:
            raise DomainError(f"tables for undeclared connectives {sorted(extra)}")
        object.__setattr__(self, "tables", tables)
        mask = np.array([v in des for v in values], dtype=bool)
        mask.setflags(write=False)
        object.__setattr__(self, "_des_mask", mask)

    @classmethod
    def from_functions(
        cls,
        name: str,
        sig: Signature,
        values: Sequence[str],
        designated: Iterable[str],
        ops: Mapping[str, Callable[..., str]],
        conjunction: Formula | None = None,
    ) -> "Matrix":
        values = tuple(values)
        idx = {v: i for i, v in enumerate(values)}
        tables = {}
        for c in sig.connectives:
            f = ops[c.name]
            t = np.zeros((len(values),) * c.arity, dtype=np.int64)
            for args in itertools.product(range(len(values)), repeat=c.arity):
                t[args] = idx[f(*(values[a] for a in args))]
            tables[c.name] = t
        return cls(name, sig, values, frozenset(designated), tables, conjunction)

    @property
    def designated_mask(self) -> np.ndarray:
        return self._des_mask

    def index(self, value: str) -> int:
        try:
            return self.values.index(value)
        except ValueError:
            raise DomainError(f"{value!r} is not a value of {self.name}") from None

    def op_table(self, name: str) -> dict[tuple[str, ...], str]:
        t = self.tables[name]
        out = {}
        for args in itertools.product(range(len(self.values)), repeat=t.ndim):
            out[tuple(self.values[a] for a in args)] = self.values[int(t[args])]
        return out


def evaluate(m: Matrix, v: Mapping[str, str], phi: Formula) -> str:
    """Value of ``phi`` under the valuation ``v`` (variable -> value name)."""

    def go(f: Formula) -> int:
        if isinstance(f, Var):
            if f.name not in v:
                raise DomainError(f"valuation does not assign {f.name!r}")
            return m.index(v[f.name])
        if f.op not in m.tables:
            raise DomainError(f"{m.name} has no connective {f.op!r}")
        return int(m.tables[f.op][tuple(go(a) for a in f.args)])

    return m.values[go(phi)]


def valuation_grid(m: Matrix, vars: Sequence[str]) -> dict[str, np.ndarray]:
    """Columns of the full valuation grid over ``vars`` (first variable varies slowest)."""
    k = len(m.values)
    n = len(vars)
    if n == 0:
        return {}
    idx = np.indices((k,) * n).reshape(n, -1)
    return {x: idx[i] for i, x in enumerate(vars)}


def valuations(m: Matrix, vars: Sequence[str]):
    for combo in itertools.product(m.values, repeat=len(vars)):
        yield dict(zip(vars, combo))


class Evaluator:
    """Caches value arrays of formulas over a fixed valuation grid."""

    def __init__(self, m: Matrix, vars: Sequence[str]):
        self.m = m
        self.vars = tuple(vars)
        self.grid = valuation_grid(m, self.vars)
        self.width = len(m.values) ** len(self.vars)
        self.cache: dict[Formula, np.ndarray] = {}

    def values(self, phi: Formula) -> np.ndarray:
        hit = self.cache.get(phi)
        if hit is not None:
            return hit
        if isinstance(phi, Var):
            if phi.name not in self.grid:
                raise DomainError(f"variable {phi.name!r} outside the valuation grid")
            out = self.grid[phi.name]
        else:
            if phi.op not in self.m.tables:
                raise DomainError(f"{self.m.name} has no connective {phi.op!r}")
            t = self.m.tables[phi.op]
            if phi.args:
                out = t[tuple(self.values(a) for a in phi.args)]
            else:
                out = np.full(self.width, int(t), dtype=np.int64)
        self.cache[phi] = out
        return out

    def designated(self, phi: Formula) -> np.ndarray:
        return self.m.designated_mask[self.values(phi)]

    def bits(self, phi: Formula) -> int:
        """Designation pattern of ``phi`` as a Python int bitset over the grid."""
        d = self.designated(phi)
        return int.from_bytes(np.packbits(d, bitorder="little").tobytes(), "little")


def _grid_for(m: Matrix, formulas: Iterable[Formula], max_vars: int) -> Evaluator:
    vs = sorted(variables(formulas))
    if len(vs) > max_vars:
        raise BudgetExceeded(f"{len(vs)} variables exceed the cap {max_vars}", len(vs), max_vars)
    return Evaluator(m, vs)


def entails(m: Matrix, gamma: Iterable[Formula], alpha: Formula, max_vars: int = DEFAULT_MAX_VARS) -> bool:
    """Γ ⊨ α: every valuation designating all of Γ designates α."""
    gamma = list(gamma)
    ev = _grid_for(m, gamma + [alpha], max_vars)
    ok = np.ones(max(ev.width, 1), dtype=bool)
    for g in gamma:
        ok &= ev.designated(g)
    return bool(np.all(~ok | ev.designated(alpha)))


def satisfiable(m: Matrix, gamma: Iterable[Formula], max_vars: int = DEFAULT_MAX_VARS) -> bool:
    gamma = list(gamma)
    ev = _grid_for(m, gamma, max_vars)
    ok = np.ones(max(ev.width, 1), dtype=bool)
    for g in gamma:
        ok &= ev.designated(g)
    return bool(ok.any())


def trivializes(m: Matrix, gamma: Iterable[Formula], max_vars: int = DEFAULT_MAX_VARS) -> bool:
    """C(Γ) is everything iff no valuation designates all of Γ.

    With a fresh variable sent to an undesignated value, any designating
    valuation of Γ shows Γ does not entail that variable.
    """
    return not satisfiable(m, gamma, max_vars)


def is_antitheorem(m: Matrix, sigma: Iterable[Formula], max_vars: int = DEFAULT_MAX_VARS) -> bool:
    # v∘σ is again a valuation, so unsatisfiability is stable under substitution
    return trivializes(m, sigma, max_vars)


def semantic_key(evs: Sequence[Evaluator], phi: Formula) -> tuple:
    return (variables(phi),) + tuple(ev.values(phi).tobytes() for ev in evs)


def semantic_pool(
    matrices: Sequence[Matrix] | Matrix,
    sig: Signature,
    vars: Sequence[str],
    max_depth: int,
    cap: int = SEMANTIC_POOL_CAP,
) -> list[Formula]:
    """One representative per class of the depth-bounded pool.

    Two pool formulas share a class when they have the same variables and the
    same value table, over the pool variables, in every given matrix. Relations
    computed from designation patterns and variable sets (entailment,
    triviality, companion consequence) cannot tell class members apart, so
    quantifying over representatives is the same as quantifying over the pool.
    Representatives are the least formulas in (depth, text) order among the
    candidates generated, and the result is sorted in that order.
    """
    if isinstance(matrices, Matrix):
        matrices = [matrices]
    evs = [Evaluator(m, vars) for m in matrices]
    seen: dict[tuple, Formula] = {}
    atoms = [Var(x) for x in vars] + [App(c.name, ()) for c in sig.constants]
    for a in sorted(atoms, key=formula_key):
        seen.setdefault(semantic_key(evs, a), a)
    frontier = list(seen.values())
    for _ in range(max_depth):
        reps = list(seen.values())
        fresh: dict[tuple, Formula] = {}
        new_set = set(frontier)
        for c in sig.operators:
            for args in itertools.product(reps, repeat=c.arity):
                if not any(a in new_set for a in args):
                    continue
                f = App(c.name, args)
                key = semantic_key(evs, f)
                if key in seen:
                    continue
                old = fresh.get(key)
                if old is None:
                    fresh[key] = f
                    if len(seen) + len(fresh) > cap:
                        raise BudgetExceeded(f"semantic pool exceeds {cap} classes", len(seen) + len(fresh), cap)
                elif formula_key(f) < formula_key(old):
                    fresh[key] = f
        if not fresh:
            break
        seen.update(fresh)
        frontier = list(fresh.values())
    return sorted(seen.values(), key=formula_key)
