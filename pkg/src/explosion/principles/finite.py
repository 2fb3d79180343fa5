"""Exact checkers on finite carriers.

Each checker takes the carrier size ``n`` and the triviality vector ``T``
(``T[m]`` true iff the subset with bitmask ``m`` explodes) and returns
``(holds, witness)``. Witnesses are bitmasks or element indices; the wrapper
in :func:`check_finite` turns them into display names.
"""
from __future__ import annotations

from typing import Sequence

from ..core import BudgetExceeded, DomainError, FiniteStructure, submasks
from .verdict import EXACT, PrincipleId, Status, Verdict

Tvec = Sequence[bool]


def _bit(a: int) -> int:
    return 1 << a


def gecq(n: int, T: Tvec):
    chosen = {}
    for a in range(n):
        for b in range(n):
            if T[_bit(a) | _bit(b)]:
                chosen[a] = b
                break
        else:
            return False, {"alpha": a}
    return True, {"beta_for": chosen}


def secq(n: int, T: Tvec):
    full = (1 << n) - 1
    chosen = {}
    for a in range(n):
        for g in range(1 << n):
            if g != full and g >> a & 1 and T[g]:
                chosen[a] = g
                break
        else:
            return False, {"alpha": a}
    return True, {"gamma_for": chosen}


def secq_prime(n: int, T: Tvec):
    # quantifies over arbitrary Γ and closes it under α, unlike secq
    full = (1 << n) - 1
    chosen = {}
    for a in range(n):
        hit = next((g for g in range(1 << n) if (g | _bit(a)) != full and T[g | _bit(a)]), None)
        if hit is None:
            return False, {"alpha": a}
        chosen[a] = hit
    return True, {"gamma_for": chosen}


def specq(n: int, T: Tvec):
    full = (1 << n) - 1
    for g in range(full):
        if not any((g | _bit(a)) != full and T[g | _bit(a)] for a in range(n)):
            return False, {"gamma": g}
    return True, None


def pfecq1(n: int, T: Tvec):
    full = (1 << n) - 1
    for g in range(full):
        # supersets of g
        rest = full & ~g
        if not any(T[g | d] for d in submasks(rest) if (g | d) != full):
            return False, {"gamma": g}
    return True, None


def pfecq2(n: int, T: Tvec):
    full = (1 << n) - 1
    for g in range(full):
        if not any((g | d) != full and T[g | d] for d in range(full)):
            return False, {"gamma": g}
    return True, None


def pfecq3(n: int, T: Tvec):
    full = (1 << n) - 1
    for g in range(full):
        ok = False
        for d in range(1, full):
            if (g | d) == full:
                continue
            if all(T[g | e] for e in submasks(d) if e):
                ok = True
                break
        if not ok:
            return False, {"gamma": g}
    return True, None


def parecq_pairs(n: int, T: Tvec):
    for a in range(n):
        for b in range(a, n):
            if T[_bit(a) | _bit(b)]:
                return True, {"alpha": a, "beta": b}
    return False, None


def _weakly_complementary(n, T, g, d) -> bool:
    for a in range(n):
        if g >> a & 1 and not any(d >> b & 1 and T[_bit(a) | _bit(b)] for b in range(n)):
            return False
    return True


def parecq1(n: int, T: Tvec):
    N = 1 << n
    for g in range(1, N):
        for d in range(N):
            if _weakly_complementary(n, T, g, d):
                return True, {"gamma": g, "delta": d}
    return False, None


def _complementary(n, T, g, d) -> bool:
    return all(
        T[_bit(a) | _bit(b)]
        for a in range(n) if g >> a & 1
        for b in range(n) if d >> b & 1
    )


def parecq2(n: int, T: Tvec):
    N = 1 << n
    for g in range(1, N):
        for d in range(1, N):
            if _complementary(n, T, g, d):
                return True, {"gamma": g, "delta": d}
    return False, None


def ecq(n: int, T: Tvec, f: Sequence[int]):
    for a in range(n):
        if not T[_bit(a) | _bit(f[a])]:
            return False, {"alpha": a}
    return True, None


def k_para(n: int, T: Tvec, K: int):
    for a in range(n):
        if not any(K >> b & 1 and T[_bit(a) | _bit(b)] for b in range(n)):
            return True, {"alpha": a}
    return False, None


def point_trivializer(n: int, T: Tvec):
    for a in range(n):
        if T[_bit(a)]:
            return True, {"alpha": a}
    return False, None


def fin_triv(n: int, T: Tvec, bound: int):
    for g in sorted(range(1 << n), key=lambda m: (bin(m).count("1"), m)):
        if bin(g).count("1") > bound:
            break
        if T[g]:
            return True, {"gamma": g}
    return False, None


def quasi_negations(n: int, T: Tvec, a: int) -> int:
    out = 0
    for b in range(n):
        if T[_bit(a) | _bit(b)]:
            out |= _bit(b)
    return out


SIMPLE = {
    "gecq": gecq,
    "secq": secq,
    "secq_prime": secq_prime,
    "specq": specq,
    "pfecq": pfecq1,
    "pfecq1": pfecq1,
    "pfecq2": pfecq2,
    "pfecq3": pfecq3,
    "parecq": parecq_pairs,
    "parecq1": parecq1,
    "parecq2": parecq2,
}

# checkers that scan pairs of subsets
_QUADRATIC = {"pfecq2", "pfecq3", "parecq1", "parecq2", "secq_prime"}


def _named(s: FiniteStructure, w):
    if w is None:
        return None
    out = {}
    for k, v in w.items():
        if k in ("alpha", "beta"):
            out[k] = s.names[v]
        elif k in ("gamma", "delta"):
            out[k] = [s.names[i] for i in range(s.size) if v >> i & 1]
        elif k == "beta_for":
            out[k] = {s.names[a]: s.names[b] for a, b in v.items()}
        elif k == "gamma_for":
            out[k] = {s.names[a]: [s.names[i] for i in range(s.size) if m >> i & 1] for a, m in v.items()}
        else:
            out[k] = v
    return out


def parse_k(s: FiniteStructure, arg: str) -> int:
    body = arg.strip()
    if body.startswith("{") and body.endswith("}"):
        body = body[1:-1]
    items = [x.strip() for x in body.split(",") if x.strip()]
    m = 0
    for x in items:
        m |= 1 << s.index(int(x) if x.isdigit() and x not in s.names else x)
    return m


def check_finite(s: FiniteStructure, p: PrincipleId, max_pairwise: int = 6) -> Verdict:
    n, T = s.size, s.trivial
    kind = p.kind
    if kind in _QUADRATIC and n > max_pairwise:
        raise BudgetExceeded(f"{kind} on n={n} exceeds the cap {max_pairwise}", n, max_pairwise)
    if kind in SIMPLE:
        ok, w = SIMPLE[kind](n, T)
    elif kind == "nf_para":
        g, w = gecq(n, T)
        ok = not g
        if ok:
            w = {"alpha": w["alpha"]}
        else:
            w = None
    elif kind == "ecq":
        if p.arg not in s.unary_ops:
            raise DomainError(f"structure has no unary op {p.arg!r}")
        ok, w = ecq(n, T, s.unary_ops[p.arg])
    elif kind == "bot_ecq":
        ok, w = False, None
        for name, c in sorted(s.constants.items()):
            if T[_bit(c)]:
                ok, w = True, {"constant": name}
                break
    elif kind == "k_para":
        ok, w = k_para(n, T, parse_k(s, p.arg))
    elif kind == "fin_triv":
        ok, w = fin_triv(n, T, int(p.arg))
    else:
        raise DomainError(f"{kind} is not defined on finite structures")
    status = Status.PROVEN if ok else Status.REFUTED
    return Verdict(str(p), status, dict(EXACT), _named(s, w))
