"""Variable-inclusion companions of a matrix logic.

``left``        Γ ⊢ α iff some Δ ⊆ Γ with var(Δ) ⊆ var(α) has Δ ⊨ α
``pure_left``   the same with Δ non-empty
``right``       Γ contains an antitheorem, or Γ ⊨ α and var(α) ⊆ var(Γ)
``pure_right``  Γ ⊨ α and var(α) ⊆ var(Γ)

With ``strict=True`` the right companion asks for Γ itself to be an
antitheorem instead of containing one.
"""
from __future__ import annotations

import itertools
from typing import Iterable

from .core import BudgetExceeded, DomainError
from .formula import Formula, Var, fresh_variable, variables
from .matrix import DEFAULT_MAX_VARS, Matrix, entails, is_antitheorem

MODES = ("left", "pure_left", "right", "pure_right")
DEFAULT_CAP = 12


def _mode(mode: str) -> str:
    m = mode.replace("-", "_").lower()
    if m not in MODES:
        raise DomainError(f"unknown companion mode {mode!r}; expected one of {', '.join(MODES)}")
    return m


def _subsets(items, nonempty=False):
    for k in range(1 if nonempty else 0, len(items) + 1):
        yield from itertools.combinations(items, k)


def entails_companion(
    base: Matrix,
    mode: str,
    gamma: Iterable[Formula],
    alpha: Formula,
    strict: bool = False,
    cap: int = DEFAULT_CAP,
    max_vars: int = DEFAULT_MAX_VARS,
) -> bool:
    mode = _mode(mode)
    gamma = list(dict.fromkeys(gamma))
    if len(gamma) > cap:
        raise BudgetExceeded(f"{len(gamma)} premises exceed the cap {cap}", len(gamma), cap)
    va = variables(alpha)
    if mode in ("left", "pure_left"):
        # variable filter first, then the subset search
        admissible = [g for g in gamma if variables(g) <= va]
        for delta in _subsets(admissible, nonempty=(mode == "pure_left")):
            if entails(base, delta, alpha, max_vars):
                return True
        return False
    inclusion = va <= variables(gamma)
    if mode == "right":
        if strict:
            if gamma and is_antitheorem(base, gamma, max_vars):
                return True
        else:
            for delta in _subsets(gamma, nonempty=True):
                if is_antitheorem(base, delta, max_vars):
                    return True
    return inclusion and entails(base, gamma, alpha, max_vars)


def companion_trivializes(
    base: Matrix, mode: str, gamma: Iterable[Formula], strict: bool = False, cap: int = DEFAULT_CAP
) -> bool:
    """C(Γ) = 𝓛 in the companion, decided at one fresh variable."""
    gamma = list(gamma)
    q = Var(fresh_variable(variables(gamma)))
    return entails_companion(base, mode, gamma, q, strict, cap)


class CompanionLogic:
    """A companion packaged for the principle checkers."""

    def __init__(self, base: Matrix, mode: str, strict: bool = False, cap: int = DEFAULT_CAP):
        self.base = base
        self.mode = _mode(mode)
        self.strict = strict
        self.cap = cap
        self.sig = base.sig
        self.matrices = [base]
        self.name = f"{base.name}^{self.mode}"
        self.conjunction = base.conjunction

    def entails(self, gamma, alpha) -> bool:
        return entails_companion(self.base, self.mode, gamma, alpha, self.strict, self.cap)

    def trivializes(self, gamma) -> bool:
        return companion_trivializes(self.base, self.mode, gamma, self.strict, self.cap)

    def sat_key(self, ev, width: int):
        """Bitmask map whose intersection over Γ is empty iff Γ trivializes.

        Left companions only see the variable-free members of Γ, right
        companions see all of Γ, and pure right companions never trivialize
        (a fresh conclusion always escapes var(Γ)).
        """
        full = (1 << width) - 1
        sentinel = 1 << width

        def key(phi: Formula) -> int:
            if self.mode == "pure_right":
                return full | sentinel
            if self.mode in ("left", "pure_left") and variables(phi):
                return full | sentinel
            return ev.bits(phi)

        return key

    def __repr__(self) -> str:
        return f"CompanionLogic({self.name})"
