"""Verdicts, principle identifiers and search budgets."""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Any

from ..core import DomainError


class Status(str, enum.Enum):
    PROVEN = "proven"
    REFUTED = "refuted"
    UNKNOWN = "unknown"


EXACT = {"kind": "exact"}


def bounded(**info) -> dict:
    return {"kind": "bounded", **info}


@dataclass
class Verdict:
    principle: str
    status: Status
    scope: dict = field(default_factory=lambda: dict(EXACT))
    witness: Any = None
    note: str = ""

    @property
    def proven(self) -> bool:
        return self.status is Status.PROVEN

    @property
    def refuted(self) -> bool:
        return self.status is Status.REFUTED

    @property
    def exact(self) -> bool:
        return self.scope.get("kind") == "exact"

    def to_json(self) -> dict:
        out = {
            "principle": self.principle,
            "verdict": self.status.value,
            "scope": self.scope,
            "witness": self.witness,
        }
        if self.note:
            out["note"] = self.note
        return out

    def __str__(self) -> str:
        kind = self.scope.get("kind", "?")
        s = f"{self.principle}: {self.status.value} ({kind})"
        if self.witness is not None:
            s += f" witness={self.witness}"
        if self.note:
            s += f" [{self.note}]"
        return s


PLAIN = (
    "bot_ecq", "gecq", "secq", "secq_prime", "specq",
    "pfecq", "pfecq1", "pfecq2", "pfecq3",
    "parecq", "parecq1", "parecq2", "nf_para",
)
PARAMETRIC = ("ecq", "k_para", "fin_triv", "gentle_explosion", "lfi")

_ALIASES = {"secq'": "secq_prime", "nf-para": "nf_para", "fintriv": "fin_triv", "k-para": "k_para"}


@dataclass(frozen=True)
class PrincipleId:
    """``kind`` plus an optional textual argument (``ecq:neg``, ``fin_triv:3``...)."""

    kind: str
    arg: str | None = None

    def __post_init__(self):
        if self.kind in PLAIN:
            if self.arg is not None:
                raise DomainError(f"principle {self.kind} takes no argument")
        elif self.kind in PARAMETRIC:
            if self.kind in ("ecq", "k_para", "gentle_explosion", "lfi") and not self.arg:
                raise DomainError(f"principle {self.kind} needs an argument")
            if self.kind == "fin_triv":
                if self.arg is None:
                    object.__setattr__(self, "arg", "3")
                elif not re.fullmatch(r"\d+", self.arg):
                    raise DomainError("fin_triv bound must be a non-negative integer")
        else:
            raise DomainError(f"unknown principle {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> "PrincipleId":
        text = text.strip()
        kind, _, arg = text.partition(":")
        kind = kind.strip().lower()
        kind = _ALIASES.get(kind, kind)
        return cls(kind, arg.strip() or None)

    def __str__(self) -> str:
        return self.kind if self.arg is None else f"{self.kind}:{self.arg}"


def parse_principles(text: str) -> list[PrincipleId]:
    # commas inside braces belong to k_para / lfi arguments
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch in "{[(":
            depth += 1
        elif ch in "}])":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    if cur.strip():
        parts.append(cur)
    return [PrincipleId.parse(p) for p in parts if p.strip()]


@dataclass(frozen=True)
class Budget:
    """Search bounds for checks that cannot be exhaustive."""

    pool_vars: int = 2
    pool_depth: int = 3
    max_size: int = 3
    sample: int = 20_000
    seed: int = 0
    window: int = 8
    max_pairwise: int = 6

    def describe_pool(self) -> dict:
        return {"pool_vars": self.pool_vars, "pool_depth": self.pool_depth, "max_size": self.max_size}
