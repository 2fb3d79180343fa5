"""Search over small finite structures.

Three services:

* :func:`enumerate_structures` walks consequence tables (all of them for
  ``n <= 3``, a seeded sample above) in numpy chunks, optionally restricted by
  structural filters.
* :func:`run_battery` checks the implications between explosion principles on
  every table of a carrier. Principle verdicts only depend on which subsets
  explode, so each verdict is computed once per triviality pattern and mapped
  back to the tables by counting.
* :func:`find_separation` finds a smallest structure with prescribed verdicts.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .core import BudgetExceeded, DomainError, FiniteStructure, submasks
from .partial import disjointness_lemma, maximal_complementary_pairs
from .principles import finite as F
from .principles.verdict import PrincipleId, Status

FILTERS = ("reflexive", "monotone", "transitive")
EXHAUSTIVE_MAX = 3
CHUNK = 1 << 20


# table generation

def table_space(n: int) -> int:
    return (1 << n) ** (1 << n)


def decode(n: int, idx: np.ndarray) -> np.ndarray:
    """Tables for the given indices; entry m is digit m in base 2^n."""
    N = 1 << n
    idx = np.asarray(idx, dtype=np.uint64)
    shifts = (np.arange(N, dtype=np.uint64) * np.uint64(n))[None, :]
    return ((idx[:, None] >> shifts) & np.uint64(N - 1)).astype(np.int64)


def encode(n: int, table: Sequence[int]) -> int:
    return sum(int(v) << (n * m) for m, v in enumerate(table))


def random_tables(n: int, count: int, rng: np.random.Generator, filters: Iterable[str] = ()) -> np.ndarray:
    """Seeded random tables; filters steer the sampler toward the requested class.

    Reflexive: OR each entry with its argument. Monotone: replace each entry by
    the union over subsets. Transitive: draw closure operators from random
    families of closed sets, which are also reflexive and monotone.
    """
    filters = set(filters)
    N = 1 << n
    if "transitive" in filters:
        out = np.empty((count, N), dtype=np.int64)
        full = N - 1
        for i in range(count):
            k = int(rng.integers(0, N))
            closed = set(int(x) for x in rng.choice(N, size=k, replace=False)) | {full}
            for m in range(N):
                c = full
                for s in closed:
                    if m & ~s == 0:
                        c &= s
                out[i, m] = c
        return out
    t = rng.integers(0, N, size=(count, N), dtype=np.int64)
    if "monotone" in filters:
        for m in range(N):
            acc = t[:, m].copy()
            for g in submasks(m):
                acc |= t[:, g]
            t[:, m] = acc
    if "reflexive" in filters:
        t |= np.arange(N, dtype=np.int64)[None, :]
    return t


def flags(n: int, t: np.ndarray) -> dict[str, np.ndarray]:
    N = 1 << n
    ms = np.arange(N, dtype=np.int64)
    refl = np.all((t & ms[None, :]) == ms[None, :], axis=1)
    mono = np.ones(len(t), dtype=bool)
    for m in range(N):
        for b in range(n):
            if not m >> b & 1:
                mono &= (t[:, m] & ~t[:, m | (1 << b)]) == 0
    trans = np.ones(len(t), dtype=bool)
    for g in range(N):
        cg = t[:, g]
        for s in range(N):
            applies = (s & ~cg) == 0
            trans &= ~applies | ((t[:, s] & ~cg) == 0)
    return {"reflexive": refl, "monotone": mono, "transitive": trans}


def patterns(n: int, t: np.ndarray) -> np.ndarray:
    N = 1 << n
    full = N - 1
    weights = (np.int64(1) << np.arange(N, dtype=np.int64))[None, :]
    return ((t == full).astype(np.int64) * weights).sum(axis=1)


def _passes(fl: dict[str, np.ndarray], filters: Iterable[str]) -> np.ndarray:
    keep = None
    for f in filters:
        if f not in FILTERS:
            raise DomainError(f"unknown structural filter {f!r}")
        keep = fl[f] if keep is None else keep & fl[f]
    return keep


@dataclass
class EnumerationSummary:
    n: int
    visited: int
    scope: str
    seed: int | None = None


def enumerate_structures(
    n: int,
    filters: Iterable[str] = (),
    visitor: Callable[[np.ndarray], None] | None = None,
    sample: int | None = None,
    seed: int = 0,
    chunk: int = CHUNK,
) -> EnumerationSummary:
    """Visit consequence tables in chunks (rows are tables).

    Without ``sample`` the whole space is walked, which needs ``n <= 3``.
    """
    filters = tuple(filters)
    if sample is None:
        if n > EXHAUSTIVE_MAX:
            raise BudgetExceeded(f"exhaustive enumeration needs n <= {EXHAUSTIVE_MAX}", n, EXHAUSTIVE_MAX)
        total = table_space(n)
        seen = 0
        for start in range(0, total, chunk):
            t = decode(n, np.arange(start, min(total, start + chunk), dtype=np.uint64))
            if filters:
                t = t[_passes(flags(n, t), filters)]
            seen += len(t)
            if visitor is not None and len(t):
                visitor(t)
        return EnumerationSummary(n, seen, "exhaustive")
    rng = np.random.default_rng(seed)
    seen = 0
    left = sample
    while left > 0:
        k = min(chunk, left)
        t = random_tables(n, k, rng, filters)
        if filters:
            t = t[_passes(flags(n, t), filters)]
        left -= k
        seen += len(t)
        if visitor is not None and len(t):
            visitor(t)
    return EnumerationSummary(n, seen, "sampled", seed)


def reflexive_count(n: int) -> int:
    """Closed form: Γ with k elements has 2^(n-k) reflexive images."""
    return math.prod((1 << (n - k)) ** math.comb(n, k) for k in range(n + 1))


# per-pattern facts

def tvec(n: int, pattern: int) -> tuple[bool, ...]:
    return tuple(bool(pattern >> m & 1) for m in range(1 << n))


def pattern_facts(n: int, pattern: int) -> dict[str, bool]:
    T = tvec(n, pattern)
    f = {
        "gecq": F.gecq(n, T)[0],
        "secq": F.secq(n, T)[0],
        "secq_prime": F.secq_prime(n, T)[0],
        "specq": F.specq(n, T)[0],
        "pfecq1": F.pfecq1(n, T)[0],
        "pfecq2": F.pfecq2(n, T)[0],
        "pfecq3": F.pfecq3(n, T)[0],
        "parecq": F.parecq_pairs(n, T)[0],
        "parecq1": F.parecq1(n, T)[0],
        "parecq2": F.parecq2(n, T)[0],
        "point": F.point_trivializer(n, T)[0],
        "some_trivial": any(T),
    }
    f["nf_para"] = not f["gecq"]
    s = FiniteStructure.from_trivial_family(n, [m for m in range(1 << n) if T[m]])
    left, right, _ = disjointness_lemma(s)
    f["lemma_left"], f["lemma_right"] = left, right
    f["some_cover"] = any(p.covers() for p in maximal_complementary_pairs(s))
    full = (1 << n) - 1
    f["each_in_trivial"] = all(any(T[g] for g in range(1 << n) if g >> a & 1) for a in range(n))
    K = [F.k_para(n, T, k)[0] for k in range(1 << n)]
    f["kpara_empty"] = K[0]
    f["kpara_full_iff_nf"] = K[full] == f["nf_para"]
    f["kpara_antitone"] = all(K[k2] for k in range(1 << n) if K[k] for k2 in submasks(k))
    rows = [sum(1 << b for b in range(n) if T[(1 << a) | (1 << b)]) for a in range(n)]
    f["qn_symmetric"] = all((rows[a] >> b & 1) == (rows[b] >> a & 1) for a in range(n) for b in range(n))
    f["qn_double"] = all(rows[b] >> a & 1 for a in range(n) for b in range(n) if rows[a] >> b & 1)
    return f


def _imp(a: bool, b: bool) -> bool:
    return (not a) or b


# laws checked on every table: name -> predicate on pattern facts
LAWS_ALL = {
    "gECQ ⇒ sECQ": lambda f: _imp(f["gecq"], f["secq"]),
    "spECQ ⇒ gECQ": lambda f: _imp(f["specq"], f["gecq"]),
    "spECQ ⇒ sECQ": lambda f: _imp(f["specq"], f["secq"]),
    "spECQ ⇒ pfECQ": lambda f: _imp(f["specq"], f["pfecq1"]),
    "pfECQ1 ⇔ pfECQ2": lambda f: f["pfecq1"] == f["pfecq2"],
    "pfECQ3 ⇔ spECQ": lambda f: f["pfecq3"] == f["specq"],
    "pfECQ ⇒ sECQ": lambda f: _imp(f["pfecq1"], f["secq"]),
    "sECQ ⇔ sECQ′": lambda f: f["secq"] == f["secq_prime"],
    "parECQ1 ⇔ parECQ2": lambda f: f["parecq1"] == f["parecq2"] == f["parecq"],
    "gECQ ⇒ parECQ": lambda f: _imp(f["gecq"], f["parecq"]),
    "spECQ ⇒ some C(α) = 𝓛": lambda f: _imp(f["specq"], f["point"]),
    "no point trivializer ⇔ complementary pairs disjoint": lambda f: f["lemma_left"] == f["lemma_right"],
    "¬F ∧ parECQ ∧ gECQ ⇒ a maximal pair covers 𝓛": lambda f: _imp(
        (not f["point"]) and f["parecq"] and f["gecq"], f["some_cover"]
    ),
    "K-para: ∅-paraconsistent": lambda f: f["kpara_empty"],
    "K-para: 𝓛-para ⇔ NF-para": lambda f: f["kpara_full_iff_nf"],
    "K-para: antitone in K": lambda f: f["kpara_antitone"],
    "QN: quasi contraposition": lambda f: f["qn_symmetric"],
    "QN: quasi double negation": lambda f: f["qn_double"],
}

# smallest carrier on which a law is claimed
LAW_MIN_N = {
    "gECQ ⇒ sECQ": 3,
    "spECQ ⇒ sECQ": 3,
    "spECQ ⇒ gECQ": 2,
    "pfECQ3 ⇔ spECQ": 2,
    "pfECQ ⇒ sECQ": 2,
}

LAWS_MONOTONE = {
    "monotone ∧ NF-para ⇒ no point trivializer": lambda f: _imp(f["nf_para"], not f["point"]),
    "monotone ∧ finitely trivializable ⇒ sECQ (proviso dropped)": lambda f: _imp(
        f["some_trivial"], f["each_in_trivial"]
    ),
}


def op_facts(n: int, pattern: int, f: Sequence[int]) -> dict[str, bool]:
    T = tvec(n, pattern)
    full = (1 << n) - 1
    return {
        "ecq": F.ecq(n, T, f)[0],
        "proper_pairs": all(((1 << a) | (1 << f[a])) != full for a in range(n)),
    }


LAWS_OP = {
    "NF-para ⇒ ¬-ECQ fails": lambda f, o: _imp(f["nf_para"], not o["ecq"]),
    "¬-ECQ ⇒ parECQ": lambda f, o: _imp(o["ecq"], f["parecq"]),
    "¬-ECQ ∧ {α,¬α} ⊊ 𝓛 ⇒ sECQ": lambda f, o: _imp(o["ecq"] and o["proper_pairs"], f["secq"]),
}


# battery

@dataclass
class LawResult:
    law: str
    scope: str
    checked: int
    violations: int
    example: object = None

    @property
    def ok(self) -> bool:
        return self.violations == 0


@dataclass
class BatteryReport:
    n: int
    tables: int
    scope: str
    results: list[LawResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def lines(self) -> list[str]:
        out = []
        for r in self.results:
            mark = "ok" if r.ok else "VIOLATED"
            s = f"{r.law} [{r.scope}]: {mark} ({r.violations} of {r.checked})"
            if r.example is not None:
                s += f" e.g. {r.example}"
            out.append(s)
        return out


def _chunk_counts(args):
    n, start, stop = args
    t = decode(n, np.arange(start, stop, dtype=np.uint64))
    return _counts(n, t)


def _counts(n, t):
    P = 1 << (1 << n)
    pat = patterns(n, t)
    fl = flags(n, t)
    out = {"all": np.bincount(pat, minlength=P)}
    out["monotone"] = np.bincount(pat[fl["monotone"]], minlength=P)
    tarski = fl["reflexive"] & fl["monotone"] & fl["transitive"]
    out["tarskian_tables"] = t[tarski]
    out["reflexive_tables"] = int(fl["reflexive"].sum())
    return out


def _merge(acc, part):
    if acc is None:
        return part
    for k in ("all", "monotone"):
        acc[k] = acc[k] + part[k]
    acc["tarskian_tables"] = np.concatenate([acc["tarskian_tables"], part["tarskian_tables"]])
    acc["reflexive_tables"] += part["reflexive_tables"]
    return acc


def qn_tarski_violations(n: int, tables: np.ndarray):
    """Tarskian ∧ α ⊢ β ⇒ QN(β) ⊆ QN(α), checked per table."""
    full = (1 << n) - 1
    bad, checked = 0, 0
    example = None
    for row in tables:
        T = [int(c) == full for c in row]
        qn = [sum(1 << b for b in range(n) if T[(1 << a) | (1 << b)]) for a in range(n)]
        for a in range(n):
            for b in range(n):
                if int(row[1 << a]) >> b & 1:
                    checked += 1
                    if qn[b] & ~qn[a]:
                        bad += 1
                        example = example or {"table": [int(x) for x in row], "alpha": a, "beta": b}
    return checked, bad, example


def run_battery(
    n: int = 3,
    jobs: int = 1,
    sample: int | None = None,
    op_sample: int = 1_000_000,
    fixed_op: Sequence[int] | None = None,
    seed: int = 0,
    chunk: int = CHUNK,
) -> BatteryReport:
    """Check every law on all tables of size ``n`` (or on ``sample`` random ones)."""
    if sample is None and n > EXHAUSTIVE_MAX:
        raise BudgetExceeded(f"exhaustive battery needs n <= {EXHAUSTIVE_MAX}", n, EXHAUSTIVE_MAX)
    acc = None
    if sample is None:
        total = table_space(n)
        spans = [(n, s, min(total, s + chunk)) for s in range(0, total, chunk)]
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as ex:
                for part in ex.map(_chunk_counts, spans):
                    acc = _merge(acc, part)
        else:
            for sp in spans:
                acc = _merge(acc, _chunk_counts(sp))
        scope = "exhaustive"
    else:
        rng = np.random.default_rng(seed)
        left = sample
        while left > 0:
            k = min(chunk, left)
            acc = _merge(acc, _counts(n, rng.integers(0, 1 << n, size=(k, 1 << n), dtype=np.int64)))
            left -= k
        total = sample
        scope = f"sampled(seed={seed})"

    rep = BatteryReport(n, int(acc["all"].sum()), scope)
    seen = np.nonzero(acc["all"])[0]
    facts = {int(p): pattern_facts(n, int(p)) for p in seen}

    for law, pred in LAWS_ALL.items():
        if n < LAW_MIN_N.get(law, 1):
            continue
        bad = [p for p in seen if not pred(facts[int(p)])]
        rep.results.append(LawResult(law, "all tables", int(acc["all"].sum()),
                                     int(sum(acc["all"][p] for p in bad)),
                                     {"pattern": int(bad[0])} if bad else None))
    for law, pred in LAWS_MONOTONE.items():
        mono = np.nonzero(acc["monotone"])[0]
        bad = [p for p in mono if not pred(facts[int(p)])]
        rep.results.append(LawResult(law, "monotone tables", int(acc["monotone"].sum()),
                                     int(sum(acc["monotone"][p] for p in bad)),
                                     {"pattern": int(bad[0])} if bad else None))
    # every unary op against every pattern, weighted by table counts
    ops = list(itertools.product(range(n), repeat=n))
    for law, pred in LAWS_OP.items():
        bad_tables, checked, example = 0, 0, None
        for p in seen:
            for f in ops:
                checked += int(acc["all"][p])
                if not pred(facts[int(p)], op_facts(n, int(p), f)):
                    bad_tables += int(acc["all"][p])
                    example = example or {"pattern": int(p), "op": list(f)}
        rep.results.append(LawResult(law, f"all tables × {len(ops)} ops", checked, bad_tables, example))

    checked, bad, example = qn_tarski_violations(n, acc["tarskian_tables"])
    rep.results.append(LawResult("Tarskian ∧ α ⊢ β ⇒ QN(β) ⊆ QN(α)",
                                 f"{len(acc['tarskian_tables'])} Tarskian tables", checked, bad, example))

    if op_sample:
        rep.results.extend(sampled_op_battery(n, op_sample, fixed_op or _default_op(n), seed))
    return rep


def _default_op(n: int) -> tuple[int, ...]:
    return tuple((i + 1) % n for i in range(n))


def sampled_op_battery(n: int, count: int, op: Sequence[int], seed: int = 0) -> list[LawResult]:
    """Op laws recomputed table by table (no pattern lookup) on a seeded sample."""
    rng = np.random.default_rng(seed + 1)
    full = (1 << n) - 1
    t = rng.integers(0, 1 << n, size=(count, 1 << n), dtype=np.int64)
    triv = t == full
    pair = lambda a, b: triv[:, (1 << a) | (1 << b)]
    ecq = np.ones(count, dtype=bool)
    for a in range(n):
        ecq &= pair(a, op[a])
    gecq = np.ones(count, dtype=bool)
    for a in range(n):
        gecq &= np.any(np.stack([pair(a, b) for b in range(n)]), axis=0)
    parecq = np.any(np.stack([pair(a, b) for a in range(n) for b in range(n)]), axis=0)
    proper = all(((1 << a) | (1 << op[a])) != full for a in range(n))
    secq = np.ones(count, dtype=bool)
    for a in range(n):
        cols = [g for g in range(full) if g >> a & 1]
        secq &= np.any(triv[:, cols], axis=1)
    label = f"{count} sampled tables, op {list(op)}"
    out = [
        LawResult("NF-para ⇒ ¬-ECQ fails", label, count, int(np.sum(~gecq & ecq))),
        LawResult("¬-ECQ ⇒ parECQ", label, count, int(np.sum(ecq & ~parecq))),
        LawResult("¬-ECQ ∧ {α,¬α} ⊊ 𝓛 ⇒ sECQ", label, count,
                  int(np.sum(ecq & ~secq)) if proper else 0),
    ]
    return out


# separations

@dataclass(frozen=True)
class SeparationQuery:
    require: tuple[tuple[PrincipleId, Status], ...]
    structural_filters: frozenset[str] = frozenset()
    max_carrier: int = 4
    min_carrier: int = 1
    samples: int = 200_000
    seed: int = 0

    def __post_init__(self):
        if not self.require:
            raise DomainError("a separation query needs at least one requirement")
        if self.max_carrier > 6:
            raise DomainError("carriers above 6 are out of range")
        for f in self.structural_filters:
            if f not in FILTERS:
                raise DomainError(f"unknown structural filter {f!r}")
        for p, st in self.require:
            if st is Status.UNKNOWN:
                raise DomainError("requirements are proven or refuted")

    @classmethod
    def parse(cls, text: str, **kw) -> "SeparationQuery":
        req = []
        for part in text.split(","):
            if not part.strip():
                continue
            name, _, want = part.partition("=")
            st = Status(want.strip().lower() or "proven")
            req.append((PrincipleId.parse(name), st))
        return cls(tuple(req), **kw)

    def to_json(self) -> dict:
        return {
            "require": {str(p): s.value for p, s in self.require},
            "structural_filters": sorted(self.structural_filters),
            "max_carrier": self.max_carrier,
            "min_carrier": self.min_carrier,
        }


@dataclass
class SeparationResult:
    structure: FiniteStructure | None
    n: int | None
    scope: str
    searched: list[tuple[int, str, bool]]

    def to_json(self) -> dict:
        out = {"found": self.structure is not None, "n": self.n, "scope": self.scope,
               "searched": [{"n": n, "scope": sc, "found": f} for n, sc, f in self.searched]}
        if self.structure is not None:
            from .serialize import finite_to_json

            out["structure"] = finite_to_json(self.structure)
        return out


_FAMILY_CHECK = {
    "gecq": F.gecq, "secq": F.secq, "secq_prime": F.secq_prime, "specq": F.specq,
    "pfecq": F.pfecq1, "pfecq1": F.pfecq1, "pfecq2": F.pfecq2, "pfecq3": F.pfecq3,
    "parecq": F.parecq_pairs, "parecq1": F.parecq1, "parecq2": F.parecq2,
}


def _family_holds(n, T, p: PrincipleId) -> bool:
    if p.kind in _FAMILY_CHECK:
        return _FAMILY_CHECK[p.kind](n, T)[0]
    if p.kind == "nf_para":
        return not F.gecq(n, T)[0]
    if p.kind == "fin_triv":
        return F.fin_triv(n, T, int(p.arg))[0]
    raise DomainError(f"the miner cannot search on {p}")


def canonicalize(s: FiniteStructure) -> FiniteStructure:
    """Lexicographically least relabeling (table first, then unary ops)."""
    best, best_key = None, None
    for perm in itertools.permutations(range(s.size)):
        r = s.relabel(perm)
        key = (r.table, tuple(sorted(r.unary_ops.items())), tuple(sorted(r.constants.items())))
        if best_key is None or key < best_key:
            best, best_key = r, key
    return best


def _matches(n, T, q: SeparationQuery, op_names) -> dict | None:
    """Unary ops satisfying the ECQ requirements, or None when T fails."""
    for p, st in q.require:
        if p.kind == "ecq":
            continue
        if _family_holds(n, T, p) != (st is Status.PROVEN):
            return None
    if not op_names:
        return {}
    ops = {}
    for name in op_names:
        wants = [st for p, st in q.require if p.kind == "ecq" and p.arg == name]
        for f in itertools.product(range(n), repeat=n):
            if all(F.ecq(n, T, f)[0] == (st is Status.PROVEN) for st in wants):
                ops[name] = f
                break
        else:
            return None
    return ops


def _realizable_patterns(n: int, filters) -> dict[int, np.ndarray]:
    """First table realizing each pattern under the filters (exhaustive, n <= 3)."""
    found: dict[int, np.ndarray] = {}

    def visit(t):
        pat = patterns(n, t)
        uniq, first = np.unique(pat, return_index=True)
        for p, i in zip(uniq, first):
            found.setdefault(int(p), t[i].copy())

    enumerate_structures(n, filters, visit)
    return found


def find_separation(q: SeparationQuery) -> SeparationResult:
    op_names = sorted({p.arg for p, _ in q.require if p.kind == "ecq"})
    searched = []
    for n in range(q.min_carrier, q.max_carrier + 1):
        N = 1 << n
        hit = None
        if not q.structural_filters and n <= 4:
            scope = "exhaustive"
            for fam in range(1 << N):
                T = tvec(n, fam)
                ops = _matches(n, T, q, op_names)
                if ops is not None:
                    s = FiniteStructure.from_trivial_family(n, [m for m in range(N) if T[m]], unary_ops=ops)
                    hit = s
                    break
        elif n <= EXHAUSTIVE_MAX:
            scope = "exhaustive"
            real = _realizable_patterns(n, q.structural_filters)
            for fam in sorted(real):
                ops = _matches(n, tvec(n, fam), q, op_names)
                if ops is not None:
                    hit = FiniteStructure(n, tuple(int(x) for x in real[fam]), ops)
                    break
        else:
            scope = f"sampled({q.samples}, seed={q.seed})"
            rng = np.random.default_rng(q.seed)
            t = random_tables(n, q.samples, rng, q.structural_filters)
            keep = _passes(flags(n, t), q.structural_filters)
            if keep is not None:
                t = t[keep]
            pats = patterns(n, t)
            uniq, first = np.unique(pats, return_index=True)
            for p, i in zip(uniq, first):
                ops = _matches(n, tvec(n, int(p)), q, op_names)
                if ops is not None:
                    hit = FiniteStructure(n, tuple(int(x) for x in t[i]), ops)
                    break
        searched.append((n, scope, hit is not None))
        if hit is not None:
            s = canonicalize(hit) if n <= 6 else hit
            verify_separation(s, q)
            return SeparationResult(s, n, scope, searched)
    last = searched[-1][1] if searched else "exhaustive"
    return SeparationResult(None, None, "exhaustive" if all(sc == "exhaustive" for _, sc, _ in searched) else last, searched)


def verify_separation(s: FiniteStructure, q: SeparationQuery) -> None:
    from .principles import check

    for p, st in q.require:
        v = check(s, p)
        if v.status is not st or not v.exact:
            raise AssertionError(f"re-verification failed for {p}: {v}")
