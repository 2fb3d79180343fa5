"""Complementary pairs of sets and the poset of disjoint weakly complementary pairs.

A pair (Γ, Δ) is complementary when every cross pair {α, β} explodes, and
weakly complementary when each α ∈ Γ explodes with some β ∈ Δ. The family 𝔠
collects the weakly complementary pairs with Γ ≠ ∅ and Γ ∩ Δ = ∅, ordered
componentwise by inclusion.

Weak complementarity survives enlarging Δ. So a pair in 𝔠 that leaves some γ
uncovered can move γ into Δ, and every maximal pair is a partition
(Π, 𝓛 ∖ Π). :func:`maximal_complementary_pairs` enumerates those partitions;
:func:`maximal_by_brute_force` checks the same answer from the definition.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import BudgetExceeded, DomainError, FiniteStructure, SentenceSet

MAX_PAIR_CARRIER = 6


@dataclass(frozen=True)
class PairCandidate:
    gamma: SentenceSet
    delta: SentenceSet

    def __post_init__(self):
        if self.gamma.carrier != self.delta.carrier:
            raise DomainError("pair sets live on different carriers")

    @classmethod
    def of_masks(cls, s: FiniteStructure, g: int, d: int) -> "PairCandidate":
        return cls(SentenceSet.from_mask(s.carrier, g), SentenceSet.from_mask(s.carrier, d))

    def masks(self) -> tuple[int, int]:
        return self.gamma.to_mask(), self.delta.to_mask()

    def covers(self) -> bool:
        return self.gamma.union(self.delta).is_full()

    def to_json(self, s: FiniteStructure | None = None):
        if s is None:
            return {"gamma": list(self.gamma.elements), "delta": list(self.delta.elements)}
        return {
            "gamma": [s.names[i] for i in self.gamma.elements],
            "delta": [s.names[i] for i in self.delta.elements],
        }


def _pair_table(s: FiniteStructure) -> list[int]:
    """``row[a]`` is the bitmask of every b with {a, b} trivial."""
    T = s.trivial
    n = s.size
    return [sum(1 << b for b in range(n) if T[(1 << a) | (1 << b)]) for a in range(n)]


def is_complementary_masks(rows: list[int], g: int, d: int, weak: bool) -> bool:
    for a in range(len(rows)):
        if g >> a & 1:
            if weak:
                if rows[a] & d == 0:
                    return False
            elif d & ~rows[a]:
                return False
    return True


def is_complementary(s: FiniteStructure, p: PairCandidate, weak: bool = False) -> bool:
    if p.gamma.carrier != s.carrier:
        raise DomainError("pair is over a different carrier")
    g, d = p.masks()
    return is_complementary_masks(_pair_table(s), g, d, weak)


def in_frak_c(rows, g: int, d: int) -> bool:
    return g != 0 and g & d == 0 and is_complementary_masks(rows, g, d, weak=True)


def frak_c(s: FiniteStructure) -> list[tuple[int, int]]:
    """Every member of 𝔠 as (Γ, Δ) masks."""
    n = s.size
    if n > MAX_PAIR_CARRIER:
        raise BudgetExceeded(f"pair lattice on n={n} exceeds the cap {MAX_PAIR_CARRIER}", n, MAX_PAIR_CARRIER)
    rows = _pair_table(s)
    full = s.full
    out = []
    for g in range(1, 1 << n):
        rest = full & ~g
        d = rest
        while True:
            if is_complementary_masks(rows, g, d, weak=True):
                out.append((g, d))
            if d == 0:
                break
            d = (d - 1) & rest
    return sorted(out)


def maximal_complementary_pairs(s: FiniteStructure) -> list[PairCandidate]:
    n = s.size
    if n > MAX_PAIR_CARRIER:
        raise BudgetExceeded(f"pair lattice on n={n} exceeds the cap {MAX_PAIR_CARRIER}", n, MAX_PAIR_CARRIER)
    rows = _pair_table(s)
    full = s.full
    return [
        PairCandidate.of_masks(s, g, full & ~g)
        for g in range(1, 1 << n)
        if is_complementary_masks(rows, g, full & ~g, weak=True)
    ]


def maximal_by_brute_force(s: FiniteStructure) -> list[PairCandidate]:
    """⪯-maximal members of 𝔠 straight from the definition (small carriers only)."""
    C = frak_c(s)
    members = set(C)
    out = []
    for g, d in C:
        dominated = any(
            (g2, d2) != (g, d) and g & ~g2 == 0 and d & ~d2 == 0 for g2, d2 in members
        )
        if not dominated:
            out.append(PairCandidate.of_masks(s, g, d))
    return out


def is_partial_order_on_c(s: FiniteStructure) -> bool:
    C = frak_c(s)

    def le(x, y):
        return x[0] & ~y[0] == 0 and x[1] & ~y[1] == 0

    refl = all(le(x, x) for x in C)
    anti = all(x == y for x in C for y in C if le(x, y) and le(y, x))
    trans = all(le(x, z) for x in C for y in C if le(x, y) for z in C if le(y, z))
    return refl and anti and trans


def point_trivializer_exists(s: FiniteStructure) -> bool:
    return any(s.trivial[1 << a] for a in range(s.size))


def disjointness_lemma(s: FiniteStructure) -> tuple[bool, bool, tuple[int, int] | None]:
    """Both sides of: no point trivializer ⇔ complementary pairs with Γ×Δ ≠ ∅ are disjoint.

    Returns (left side, right side, an overlapping complementary pair if any).
    """
    n = s.size
    rows = _pair_table(s)
    bad = None
    for g in range(1, 1 << n):
        for d in range(1, 1 << n):
            if g & d and is_complementary_masks(rows, g, d, weak=False):
                bad = (g, d)
                break
        if bad:
            break
    return (not point_trivializer_exists(s), bad is None, bad)


@dataclass
class PartitionReport:
    frak_c_size: int
    maximal: list[PairCandidate]
    covering: int

    @property
    def some_cover(self) -> bool:
        return self.covering > 0


def partition_report(s: FiniteStructure) -> PartitionReport:
    mx = maximal_complementary_pairs(s)
    return PartitionReport(len(frak_c(s)), mx, sum(1 for p in mx if p.covers()))
