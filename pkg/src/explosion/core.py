"""Carriers, finite/cofinite sentence sets, and logical structures.

A logical structure is represented by its consequence operator ``C``.
Finite structures store ``C`` as an explicit table indexed by bitmasks;
rule structures live on countable carriers and describe ``C`` by a rule
on finite and cofinite sets together with a triviality oracle.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Mapping, Sequence

MAX_TABLE_SIZE = 16
MAX_PAIRWISE_SIZE = 10


class DomainError(ValueError):
    """Raised for out-of-carrier elements and mismatched carriers."""


class BudgetExceeded(RuntimeError):
    """Raised when a requested computation is larger than its configured cap."""

    def __init__(self, message: str, needed: int | None = None, cap: int | None = None):
        super().__init__(message)
        self.needed = needed
        self.cap = cap


@dataclass(frozen=True)
class Carrier:
    """An index set for sentences.

    ``kind`` is ``"finite"`` (elements ``0..size-1``), ``"naturals"``
    (``0, 1, ...``), ``"positive"`` (``1, 2, ...``) or ``"integers"``.
    """

    kind: str
    size: int | None = None

    def __post_init__(self):
        if self.kind == "finite":
            if self.size is None or self.size < 1:
                raise DomainError("finite carrier needs size >= 1")
        elif self.kind in ("naturals", "positive", "integers"):
            if self.size is not None:
                raise DomainError("countable carriers have no size")
        else:
            raise DomainError(f"unknown carrier kind {self.kind!r}")

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def contains(self, x: int) -> bool:
        if not isinstance(x, int) or isinstance(x, bool):
            return False
        if self.kind == "finite":
            return 0 <= x < self.size
        if self.kind == "naturals":
            return x >= 0
        if self.kind == "positive":
            return x >= 1
        return True

    def check(self, x: int) -> int:
        if not self.contains(x):
            raise DomainError(f"{x!r} is not an element of the {self.describe()} carrier")
        return x

    def describe(self) -> str:
        return f"finite({self.size})" if self.is_finite else self.kind

    def window(self, width: int) -> list[int]:
        """A deterministic finite slice of the carrier used for sampling."""
        if self.kind == "finite":
            return list(range(min(width, self.size)))
        if self.kind == "naturals":
            return list(range(width))
        if self.kind == "positive":
            return list(range(1, width + 1))
        half = width // 2
        return sorted(range(-half, width - half), key=lambda x: (abs(x), x))


NATURALS = Carrier("naturals")
POSITIVE = Carrier("positive")
INTEGERS = Carrier("integers")


def finite_carrier(n: int) -> Carrier:
    return Carrier("finite", n)


@dataclass(frozen=True)
class SentenceSet:
    """A finite set, or (on countable carriers) a cofinite set.

    ``elements`` is sorted and duplicate free. When ``cofinite`` is true the
    set is the carrier minus ``elements``.
    """

    carrier: Carrier
    elements: tuple[int, ...] = ()
    cofinite: bool = False

    def __post_init__(self):
        items = tuple(sorted(set(self.carrier.check(x) for x in self.elements)))
        if self.cofinite and self.carrier.is_finite:
            # normalize to the finite representation
            items = tuple(x for x in range(self.carrier.size) if x not in set(items))
            object.__setattr__(self, "cofinite", False)
        object.__setattr__(self, "elements", items)

    # constructors
    @classmethod
    def finite(cls, carrier: Carrier, items: Iterable[int] = ()) -> "SentenceSet":
        return cls(carrier, tuple(items), False)

    @classmethod
    def cofinite_of(cls, carrier: Carrier, excluded: Iterable[int] = ()) -> "SentenceSet":
        return cls(carrier, tuple(excluded), True)

    @classmethod
    def full(cls, carrier: Carrier) -> "SentenceSet":
        return cls(carrier, (), True)

    @classmethod
    def empty(cls, carrier: Carrier) -> "SentenceSet":
        return cls(carrier, (), False)

    @classmethod
    def from_mask(cls, carrier: Carrier, mask: int) -> "SentenceSet":
        return cls(carrier, tuple(i for i in range(carrier.size) if mask >> i & 1))

    def to_mask(self) -> int:
        if not self.carrier.is_finite:
            raise DomainError("bitmasks only exist for finite carriers")
        m = 0
        for x in self.elements:
            m |= 1 << x
        return m

    # predicates
    def __contains__(self, x: int) -> bool:
        if not self.carrier.contains(x):
            return False
        return (x in self.elements) != self.cofinite

    @property
    def is_finite(self) -> bool:
        return not self.cofinite

    def is_full(self) -> bool:
        if self.cofinite:
            return not self.elements
        return self.carrier.is_finite and len(self.elements) == self.carrier.size

    def is_proper(self) -> bool:
        """True iff the set is a proper subset of the carrier."""
        return not self.is_full()

    def is_empty(self) -> bool:
        return not self.cofinite and not self.elements

    def __len__(self) -> int:
        if self.cofinite:
            raise DomainError("cofinite set over an infinite carrier has no finite size")
        return len(self.elements)

    def __iter__(self):
        if self.cofinite:
            raise DomainError("cannot iterate a cofinite set")
        return iter(self.elements)

    def _same(self, other: "SentenceSet") -> None:
        if self.carrier != other.carrier:
            raise DomainError("sets over different carriers")

    # algebra
    def union(self, other: "SentenceSet") -> "SentenceSet":
        self._same(other)
        a, b = set(self.elements), set(other.elements)
        if not self.cofinite and not other.cofinite:
            return SentenceSet(self.carrier, tuple(a | b))
        if self.cofinite and other.cofinite:
            return SentenceSet(self.carrier, tuple(a & b), True)
        fin, cof = (a, b) if not self.cofinite else (b, a)
        return SentenceSet(self.carrier, tuple(cof - fin), True)

    def intersection(self, other: "SentenceSet") -> "SentenceSet":
        self._same(other)
        a, b = set(self.elements), set(other.elements)
        if not self.cofinite and not other.cofinite:
            return SentenceSet(self.carrier, tuple(a & b))
        if self.cofinite and other.cofinite:
            return SentenceSet(self.carrier, tuple(a | b), True)
        fin, cof = (a, b) if not self.cofinite else (b, a)
        return SentenceSet(self.carrier, tuple(fin - cof))

    def complement(self) -> "SentenceSet":
        if self.carrier.is_finite:
            return SentenceSet(self.carrier, tuple(x for x in range(self.carrier.size) if x not in self))
        return SentenceSet(self.carrier, self.elements, not self.cofinite)

    def difference(self, other: "SentenceSet") -> "SentenceSet":
        self._same(other)
        return self.intersection(other.complement())

    def issubset(self, other: "SentenceSet") -> bool:
        self._same(other)
        return self.difference(other).is_empty()

    def add(self, x: int) -> "SentenceSet":
        return self.union(SentenceSet(self.carrier, (x,)))

    __or__ = union
    __and__ = intersection
    __sub__ = difference
    __le__ = issubset

    def to_json(self) -> dict:
        return {"elements": list(self.elements), "cofinite": self.cofinite}

    def __str__(self) -> str:
        body = "{" + ", ".join(map(str, self.elements)) + "}"
        return f"L\\{body}" if self.cofinite else body


def submasks(mask: int):
    """All submasks of ``mask`` including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def popcount(x: int) -> int:
    return bin(x).count("1")


def default_names(n: int) -> tuple[str, ...]:
    letters = "abcdefghijklmnop"
    return tuple(letters[i] for i in range(n))


@dataclass(frozen=True)
class FiniteStructure:
    """A logical structure on ``{0, ..., size-1}`` given by its consequence table.

    ``table[m]`` is the bitmask of ``C(S)`` where ``S`` is the subset with bitmask ``m``.
    """

    size: int
    table: tuple[int, ...]
    unary_ops: Mapping[str, tuple[int, ...]] = field(default_factory=dict)
    constants: Mapping[str, int] = field(default_factory=dict)
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        n = self.size
        if not 1 <= n <= MAX_TABLE_SIZE:
            raise DomainError(f"carrier size must be in 1..{MAX_TABLE_SIZE}")
        table = tuple(int(x) for x in self.table)
        if len(table) != 1 << n:
            raise DomainError(f"table must have {1 << n} entries, got {len(table)}")
        full = (1 << n) - 1
        if any(x < 0 or x & ~full for x in table):
            raise DomainError("table entry outside the carrier")
        object.__setattr__(self, "table", table)
        ops = {}
        for name, f in dict(self.unary_ops).items():
            f = tuple(int(x) for x in f)
            if len(f) != n or any(not 0 <= x < n for x in f):
                raise DomainError(f"unary op {name!r} is not total on the carrier")
            ops[name] = f
        object.__setattr__(self, "unary_ops", ops)
        consts = {}
        for name, c in dict(self.constants).items():
            if not 0 <= int(c) < n:
                raise DomainError(f"constant {name!r} outside the carrier")
            consts[name] = int(c)
        object.__setattr__(self, "constants", consts)
        names = tuple(self.names) if self.names is not None else default_names(n)
        if len(names) != n or len(set(names)) != n:
            raise DomainError("display names must be unique, one per element")
        object.__setattr__(self, "names", names)

    @property
    def carrier(self) -> Carrier:
        return finite_carrier(self.size)

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    @cached_property
    def trivial(self) -> tuple[bool, ...]:
        """``trivial[m]`` is true iff the subset with mask ``m`` explodes."""
        full = self.full
        return tuple(c == full for c in self.table)

    @cached_property
    def trivial_family(self) -> int:
        """Bitset over subset masks: bit ``m`` set iff ``C(m)`` is the carrier."""
        bits = 0
        for m, t in enumerate(self.trivial):
            if t:
                bits |= 1 << m
        return bits

    # convenience constructors
    @classmethod
    def from_function(cls, n: int, rule: Callable[[int], int], **kw) -> "FiniteStructure":
        return cls(n, tuple(rule(m) for m in range(1 << n)), **kw)

    @classmethod
    def from_trivial_family(cls, n: int, family: Iterable[int], **kw) -> "FiniteStructure":
        """Canonical structure with the given trivial sets.

        Trivial sets map to the carrier, other sets map to themselves, except the
        carrier itself which maps to the empty set when it is not listed.
        """
        fam = set(family)
        full = (1 << n) - 1

        def rule(m: int) -> int:
            if m in fam:
                return full
            return 0 if m == full else m

        return cls.from_function(n, rule, **kw)

    def mask(self, items: Iterable[int | str]) -> int:
        m = 0
        for x in items:
            m |= 1 << self.index(x)
        return m

    def index(self, x: int | str) -> int:
        if isinstance(x, str):
            try:
                return self.names.index(x)
            except ValueError:
                raise DomainError(f"unknown element name {x!r}") from None
        if not isinstance(x, int) or not 0 <= x < self.size:
            raise DomainError(f"{x!r} is not an element of the carrier")
        return x

    def show(self, mask: int) -> str:
        return "{" + ",".join(self.names[i] for i in range(self.size) if mask >> i & 1) + "}"

    def relabel(self, perm: Sequence[int]) -> "FiniteStructure":
        """Structure obtained by renaming element ``i`` to ``perm[i]``."""
        n = self.size

        def move(m: int) -> int:
            out = 0
            for i in range(n):
                if m >> i & 1:
                    out |= 1 << perm[i]
            return out

        table = [0] * (1 << n)
        for m in range(1 << n):
            table[move(m)] = move(self.table[m])
        ops = {}
        for name, f in self.unary_ops.items():
            g = [0] * n
            for i in range(n):
                g[perm[i]] = perm[f[i]]
            ops[name] = tuple(g)
        consts = {k: perm[v] for k, v in self.constants.items()}
        return FiniteStructure(n, tuple(table), ops, consts)


@dataclass(frozen=True)
class TrivialityOracle:
    """Exact answers to the existential questions the principle checkers ask."""

    is_trivial: Callable[[SentenceSet], bool]
    exists_trivial_superset: Callable[[SentenceSet, bool], bool]
    exists_trivial_one_extension: Callable[[SentenceSet], bool]
    exists_trivial_pair_containing: Callable[[int], bool]


@dataclass(frozen=True)
class RuleStructure:
    """A structure on a countable carrier described on finite and cofinite sets."""

    name: str
    carrier: Carrier
    rule: Callable[[SentenceSet], SentenceSet]
    oracle: TrivialityOracle
    oracle_complete: bool = False
    justification: str = ""
    unary_ops: Mapping[str, Callable[[int], int]] = field(default_factory=dict)
    hints: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if self.carrier.is_finite:
            raise DomainError("rule structures live on countable carriers")


@dataclass(frozen=True)
class TarskianReport:
    reflexive: bool
    monotonic: bool
    transitive: bool
    monotonic_for_trivial_sets: bool

    @property
    def tarskian(self) -> bool:
        return self.reflexive and self.monotonic and self.transitive


def _as_set(s, gamma) -> SentenceSet:
    if isinstance(gamma, SentenceSet):
        if gamma.carrier != s.carrier:
            raise DomainError("set is over a different carrier")
        return gamma
    if isinstance(s, FiniteStructure):
        return SentenceSet.finite(s.carrier, [s.index(x) for x in gamma])
    return SentenceSet.finite(s.carrier, gamma)


def consequence(s: FiniteStructure | RuleStructure, gamma) -> SentenceSet:
    """``C(Γ)`` for a finite or rule structure."""
    g = _as_set(s, gamma)
    if isinstance(s, FiniteStructure):
        return SentenceSet.from_mask(s.carrier, s.table[g.to_mask()])
    out = s.rule(g)
    if out.carrier != s.carrier:
        raise DomainError("rule returned a set over a different carrier")
    return out


def is_trivial(s: FiniteStructure | RuleStructure, gamma) -> bool:
    g = _as_set(s, gamma)
    if isinstance(s, FiniteStructure):
        return s.trivial[g.to_mask()]
    return bool(s.oracle.is_trivial(g))


def tarskian_report(s: FiniteStructure, max_size: int = MAX_PAIRWISE_SIZE) -> TarskianReport:
    n = s.size
    if n > max_size:
        raise BudgetExceeded(f"pairwise checks on n={n} exceed the cap {max_size}", n, max_size)
    t = s.table
    N = 1 << n
    reflexive = all(m & ~t[m] == 0 for m in range(N))
    monotonic = all(
        t[g] & ~t[sigma] == 0 for sigma in range(N) for g in submasks(sigma)
    )
    triv = s.trivial
    mono_trivial = all(
        triv[sigma] for sigma in range(N) for g in submasks(sigma) if triv[g]
    )
    transitive = True
    for g in range(N):
        cg = t[g]
        for sigma in submasks(cg):
            if t[sigma] & ~cg:
                transitive = False
                break
        if not transitive:
            break
    return TarskianReport(reflexive, monotonic, transitive, mono_trivial)


def all_subsets(items: Sequence[int], max_size: int | None = None):
    top = len(items) if max_size is None else min(max_size, len(items))
    for k in range(top + 1):
        yield from itertools.combinations(items, k)
