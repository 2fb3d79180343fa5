"""Signatures, formulas, a parser/printer, substitution and bounded formula pools.

Grammar (one infix precedence level)::

    expr  := unary [INFIX expr]          # infix is right-associative
    unary := PREFIX unary                # unary prefix connective
           | PREFIX "(" expr {"," expr} ")"   # prefix connective of arity >= 2
           | atom
    atom  := CONSTANT | VARIABLE | "(" expr ")"

Prefix connectives bind tighter than infix ones, so ``¬p → q`` is ``(¬p) → q``
and ``p ∧ q → r`` is ``p ∧ (q → r)``.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .core import BudgetExceeded

DEFAULT_POOL_CAP = 250_000


class ParseError(ValueError):
    """Parse failure; ``offset`` is a byte offset into the UTF-8 input."""

    def __init__(self, message: str, text: str, column: int):
        self.column = column
        self.offset = len(text[:column].encode("utf-8"))
        self.text = text
        super().__init__(f"{message} at byte {self.offset}")


@dataclass(frozen=True)
class Connective:
    name: str
    arity: int
    fixity: str = "prefix"
    aliases: tuple[str, ...] = ()

    def __post_init__(self):
        if self.arity < 0:
            raise ValueError("negative arity")
        if self.arity == 0:
            object.__setattr__(self, "fixity", "constant")
        elif self.fixity == "constant":
            raise ValueError(f"{self.name}: constants have arity 0")
        if self.fixity == "infix" and self.arity != 2:
            raise ValueError(f"{self.name}: infix connectives are binary")
        if self.fixity not in ("prefix", "infix", "constant"):
            raise ValueError(f"unknown fixity {self.fixity!r}")
        object.__setattr__(self, "aliases", tuple(self.aliases))


@dataclass(frozen=True)
class Signature:
    connectives: tuple[Connective, ...]

    def __post_init__(self):
        object.__setattr__(self, "connectives", tuple(self.connectives))
        seen = set()
        for c in self.connectives:
            for sym in (c.name, *c.aliases):
                if sym in seen:
                    raise ValueError(f"symbol {sym!r} declared twice")
                if sym in ("(", ")", ","):
                    raise ValueError(f"reserved symbol {sym!r}")
                seen.add(sym)

    def __contains__(self, name: str) -> bool:
        return any(c.name == name for c in self.connectives)

    def get(self, name: str) -> Connective:
        for c in self.connectives:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def constants(self) -> list[Connective]:
        return [c for c in self.connectives if c.arity == 0]

    @property
    def operators(self) -> list[Connective]:
        return [c for c in self.connectives if c.arity > 0]

    def restrict(self, names: Iterable[str]) -> "Signature":
        keep = set(names)
        return Signature(tuple(c for c in self.connectives if c.name in keep))

    def without(self, *names: str) -> "Signature":
        drop = set(names)
        return Signature(tuple(c for c in self.connectives if c.name not in drop))

    def symbols(self) -> dict[str, Connective]:
        out = {}
        for c in self.connectives:
            out[c.name] = c
            for a in c.aliases:
                out[a] = c
        return out


NEG = Connective("¬", 1, "prefix", ("~",))
AND = Connective("∧", 2, "infix", ("/\\", "&"))
OR = Connective("∨", 2, "infix", ("\\/", "|"))
IMP = Connective("→", 2, "infix", ("->",))
BOT = Connective("⊥", 0, "constant", ("_|_",))

CLASSICAL = Signature((NEG, AND, OR, IMP, BOT))
CLASSICAL_NO_BOT = Signature((NEG, AND, OR, IMP))
NEG_IMP = Signature((NEG, IMP))


class Formula:
    """Base class of formula trees. Instances are immutable and hashable."""

    __slots__ = ()

    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        return f"<{to_text(self)}>"


class Var(Formula):
    __slots__ = ("name", "_hash")

    def __init__(self, name: str):
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "_hash", hash(("var", name)))

    def __setattr__(self, *_):
        raise AttributeError("formulas are immutable")

    def __eq__(self, other):
        return isinstance(other, Var) and other.name == self.name

    def __hash__(self):
        return self._hash

    @property
    def depth(self) -> int:
        return 0


class App(Formula):
    __slots__ = ("op", "args", "_hash", "_depth")

    def __init__(self, op: str, args: Sequence[Formula] = ()):
        args = tuple(args)
        object.__setattr__(self, "op", op)
        object.__setattr__(self, "args", args)
        object.__setattr__(self, "_hash", hash(("app", op, args)))
        object.__setattr__(self, "_depth", 1 + max((a.depth for a in args), default=-1))

    def __setattr__(self, *_):
        raise AttributeError("formulas are immutable")

    def __eq__(self, other):
        return (
            isinstance(other, App)
            and other._hash == self._hash
            and other.op == self.op
            and other.args == self.args
        )

    def __hash__(self):
        return self._hash

    @property
    def depth(self) -> int:
        return self._depth


def depth(phi: Formula) -> int:
    return phi.depth


def size(phi: Formula) -> int:
    if isinstance(phi, Var):
        return 1
    return 1 + sum(size(a) for a in phi.args)


def variables(phi: Formula | Iterable[Formula]) -> frozenset[str]:
    """Variables occurring in a formula or in a collection of formulas."""
    if isinstance(phi, Formula):
        stack = [phi]
    else:
        stack = list(phi)
    out = set()
    while stack:
        f = stack.pop()
        if isinstance(f, Var):
            out.add(f.name)
        else:
            stack.extend(f.args)
    return frozenset(out)


def subformulas(phi: Formula) -> set[Formula]:
    out = {phi}
    if isinstance(phi, App):
        for a in phi.args:
            out |= subformulas(a)
    return out


def substitute(sigma: Mapping[str, Formula], phi: Formula) -> Formula:
    """Homomorphic extension of ``sigma`` (identity outside its domain)."""
    if isinstance(phi, Var):
        return sigma.get(phi.name, phi)
    if not phi.args:
        return phi
    return App(phi.op, tuple(substitute(sigma, a) for a in phi.args))


def compose(sigma: Mapping[str, Formula], tau: Mapping[str, Formula]) -> dict[str, Formula]:
    """The substitution ``sigma ∘ tau`` (apply ``tau`` first)."""
    out = {x: substitute(sigma, f) for x, f in tau.items()}
    for x, f in sigma.items():
        out.setdefault(x, f)
    return out


_VNAME = re.compile(r"v(\d+)$")


def fresh_variable(used: Iterable[str]) -> str:
    """Least ``vN`` not in ``used``."""
    taken = set()
    for name in used:
        m = _VNAME.match(name)
        if m:
            taken.add(int(m.group(1)))
    k = 0
    while k in taken:
        k += 1
    return f"v{k}"


def default_variables(k: int) -> list[str]:
    base = ["p", "q", "r", "s"]
    return base[:k] if k <= len(base) else base + [f"v{i}" for i in range(k - len(base))]


# printing

def _is_word(sym: str) -> bool:
    return sym[-1].isalnum() or sym[-1] == "_"


def to_text(phi: Formula, sig: Signature | None = None) -> str:
    if isinstance(phi, Var):
        return phi.name
    if not phi.args:
        return phi.op
    fix = _fixity(phi, sig)
    if fix == "infix":
        left, right = phi.args
        ls = to_text(left, sig)
        rs = to_text(right, sig)
        if _fixity(left, sig) == "infix":
            ls = f"({ls})"
        if _fixity(right, sig) == "infix" and right.op != phi.op:
            rs = f"({rs})"
        return f"{ls} {phi.op} {rs}"
    if len(phi.args) == 1:
        (arg,) = phi.args
        s = to_text(arg, sig)
        if _fixity(arg, sig) == "infix":
            s = f"({s})"
        sep = " " if _is_word(phi.op) and not s.startswith("(") else ""
        return f"{phi.op}{sep}{s}"
    return f"{phi.op}(" + ", ".join(to_text(a, sig) for a in phi.args) + ")"


def _fixity(phi: Formula, sig: Signature | None) -> str:
    if isinstance(phi, Var) or not phi.args:
        return "atom"
    if sig is not None and phi.op in sig:
        return sig.get(phi.op).fixity
    # without a signature, binary operators are assumed infix
    return "infix" if len(phi.args) == 2 and not _is_word(phi.op) else "prefix"


# parsing

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def _tokenize(text: str, sig: Signature):
    symbols = sig.symbols()
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "(),":
            tokens.append((ch, ch, i))
            i += 1
            continue
        best = None
        for sym in symbols:
            if text.startswith(sym, i):
                end = i + len(sym)
                if _is_word(sym) and end < len(text) and (text[end].isalnum() or text[end] == "_"):
                    continue
                if best is None or len(sym) > len(best):
                    best = sym
        m = _IDENT.match(text, i)
        if m and (best is None or m.end() - i > len(best)):
            tokens.append(("var", m.group(0), i))
            i = m.end()
            continue
        if best is None:
            raise ParseError(f"unknown symbol {ch!r}", text, i)
        tokens.append(("op", symbols[best], i))
        i += len(best)
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, sig: Signature):
        self.text = text
        self.sig = sig
        self.toks = _tokenize(text, sig)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def take(self):
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2])

    def expect(self, kind):
        tok = self.take()
        if tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1] if tok[0] != "op" else tok[1].name)
            raise ParseError(f"expected {kind!r}, found {what}", self.text, tok[2])
        return tok

    def expr(self) -> Formula:
        left = self.unary()
        tok = self.peek()
        if tok[0] == "op" and tok[1].fixity == "infix":
            self.take()
            right = self.expr()
            return App(tok[1].name, (left, right))
        return left

    def unary(self) -> Formula:
        tok = self.peek()
        if tok[0] == "op":
            c = tok[1]
            if c.fixity == "constant":
                self.take()
                return App(c.name, ())
            if c.fixity == "infix":
                self.error(f"infix connective {c.name!r} is missing its left operand")
            self.take()
            if c.arity == 1:
                return App(c.name, (self.unary(),))
            self.expect("(")
            args = [self.expr()]
            while self.peek()[0] == ",":
                self.take()
                args.append(self.expr())
            close = self.peek()
            self.expect(")")
            if len(args) != c.arity:
                raise ParseError(
                    f"{c.name!r} expects {c.arity} arguments, got {len(args)}", self.text, close[2]
                )
            return App(c.name, tuple(args))
        if tok[0] == "var":
            self.take()
            return Var(tok[1])
        if tok[0] == "(":
            self.take()
            inner = self.expr()
            if self.peek()[0] != ")":
                self.error("unbalanced parentheses: expected ')'")
            self.take()
            return inner
        if tok[0] == "end":
            self.error("unexpected end of input")
        self.error(f"unexpected {tok[1]!r}")


def parse(text: str, sig: Signature = CLASSICAL) -> Formula:
    p = _Parser(text, sig)
    phi = p.expr()
    tok = p.peek()
    if tok[0] != "end":
        if tok[0] == ")":
            p.error("unbalanced parentheses: unexpected ')'")
        p.error("trailing input")
    return phi


def parse_list(text: str, sig: Signature = CLASSICAL) -> list[Formula]:
    """Parse a comma separated list, splitting only at top-level commas."""
    parts, depth_, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth_ += 1
        elif ch == ")":
            depth_ -= 1
        elif ch == "," and depth_ == 0:
            parts.append((start, text[start:i]))
            start = i + 1
    parts.append((start, text[start:]))
    out = []
    for offset, chunk in parts:
        if not chunk.strip():
            if len(parts) == 1:
                return []
            raise ParseError("empty list item", text, offset)
        try:
            out.append(parse(chunk, sig))
        except ParseError as e:
            raise ParseError(str(e).rsplit(" at byte", 1)[0], text, offset + e.column) from None
    return out


# pools

def pool_size(sig: Signature, n_vars: int, max_depth: int) -> int:
    """Number of formulas of depth <= max_depth, by the counting recurrence."""
    atoms = n_vars + len(sig.constants)
    total = atoms
    for _ in range(max_depth):
        total = atoms + sum(total ** c.arity for c in sig.operators)
    return total


def formula_key(phi: Formula) -> tuple[int, str]:
    return (phi.depth, to_text(phi))


def enumerate_pool(
    sig: Signature, vars: Sequence[str], max_depth: int, cap: int = DEFAULT_POOL_CAP
) -> list[Formula]:
    """All formulas over ``vars`` with depth <= ``max_depth``, ordered by depth then text."""
    total = pool_size(sig, len(vars), max_depth)
    if total > cap:
        raise BudgetExceeded(f"pool has {total} formulas, cap is {cap}", total, cap)
    level = sorted([Var(v) for v in vars] + [App(c.name, ()) for c in sig.constants], key=formula_key)
    pool = list(level)
    for d in range(1, max_depth + 1):
        below = pool  # everything of depth <= d-1
        fresh = []
        for c in sig.operators:
            fresh.extend(_apps(c, below, d - 1))
        fresh.sort(key=formula_key)
        pool = pool + fresh
    return pool


def _apps(c: Connective, below: list[Formula], top: int):
    """Applications of ``c`` to formulas in ``below`` with max child depth exactly ``top``."""
    for args in itertools.product(below, repeat=c.arity):
        if max(a.depth for a in args) == top:
            yield App(c.name, args)
